// Copyright 2026 The eqquant Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef EQQ_IO_IMAGE_H_
#define EQQ_IO_IMAGE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eqq/ffcore/field.h"

namespace eqq {

// 8-bit binary PGM (P5, one channel) or PPM (P6, three channels).
struct PnmImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<uint8_t> pixels;  // interleaved, row-major
};

// Throws kIngestion on anything but P5/P6 with maxval 255.
PnmImage ParsePnm(std::string_view bytes);
std::string EncodePnm(const PnmImage& image);

// Center crop to size x size, dropping the bottom row / right column on odd
// surplus, then v / 255 into a trivial field over `group_order`. Throws
// kIngestion when the image is smaller than `size`.
FeatureField ImageToField(const PnmImage& image, int size, int group_order);

FeatureField LoadImage(const std::string& path, int size, int group_order);

}  // namespace eqq

#endif  // EQQ_IO_IMAGE_H_
