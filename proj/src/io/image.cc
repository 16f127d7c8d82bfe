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


#include "eqq/io/image.h"

#include <cctype>

#include "eqq/common/error.h"
#include "eqq/io/weight_store.h"

namespace eqq {

namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::string_view bytes) : bytes_(bytes) {}

  int NextInt(const char* what) {
    SkipSpaceAndComments();
    long value = 0;
    size_t digits = 0;
    while (pos_ < bytes_.size() &&
           std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_++] - '0');
      Check(value <= 1 << 20, ErrorCode::kIngestion,
            std::string("image ") + what + " is too large");
      ++digits;
    }
    Check(digits > 0, ErrorCode::kIngestion,
          std::string("malformed image header: missing ") + what);
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from the raster.
  size_t RasterStart() {
    Check(pos_ < bytes_.size() &&
              std::isspace(static_cast<unsigned char>(bytes_[pos_])),
          ErrorCode::kIngestion, "malformed image header");
    return pos_ + 1;
  }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  size_t pos_ = 2;
};

}  // namespace

PnmImage ParsePnm(std::string_view bytes) {
  Check(bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'),
        ErrorCode::kIngestion, "unsupported image format (need binary P5 or P6)");
  PnmImage img;
  img.channels = bytes[1] == '5' ? 1 : 3;
  HeaderScanner scan(bytes);
  img.width = scan.NextInt("width");
  img.height = scan.NextInt("height");
  const int maxval = scan.NextInt("maxval");
  Check(maxval == 255, ErrorCode::kIngestion,
        "unsupported maxval " + std::to_string(maxval) + " (need 255)");
  Check(img.width > 0 && img.height > 0, ErrorCode::kIngestion,
        "image has zero size");
  const size_t start = scan.RasterStart();
  const size_t n = static_cast<size_t>(img.width) * img.height * img.channels;
  Check(bytes.size() - start >= n, ErrorCode::kIngestion,
        "image raster is truncated");
  img.pixels.assign(bytes.begin() + start, bytes.begin() + start + n);
  return img;
}

std::string EncodePnm(const PnmImage& image) {
  std::string out = (image.channels == 1 ? "P5\n" : "P6\n") +
                    std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(image.pixels.begin(), image.pixels.end());
  return out;
}

FeatureField ImageToField(const PnmImage& image, int size, int group_order) {
  Check(image.width >= size && image.height >= size, ErrorCode::kIngestion,
        "image is " + std::to_string(image.width) + "x" +
            std::to_string(image.height) + ", smaller than " +
            std::to_string(size) + "x" + std::to_string(size));
  const int top = (image.height - size) / 2;
  const int left = (image.width - size) / 2;
  FeatureField f(FieldType::Trivial(image.channels, group_order), 1, size,
                 size);
  for (int c = 0; c < image.channels; ++c) {
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const size_t idx =
            (static_cast<size_t>(top + y) * image.width + (left + x)) *
                image.channels +
            c;
        f.at(0, c, y, x) = static_cast<float>(image.pixels[idx] / 255.0);
      }
    }
  }
  return f;
}

FeatureField LoadImage(const std::string& path, int size, int group_order) {
  try {
    return ImageToField(ParsePnm(ReadFileBytes(path)), size, group_order);
  } catch (const Error& e) {
    Fail(ErrorCode::kIngestion, path + ": " + e.what());
  }
}

}  // namespace eqq
