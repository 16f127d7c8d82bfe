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

#ifndef EQQ_NETBUILD_ARCH_H_
#define EQQ_NETBUILD_ARCH_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace eqq {

struct StemSpec {
  int kernel_size = 3;
  int stride = 2;
  int out_width = 32;
};

// One inverted-residual stage: `repeats` blocks, the first with `stride`.
struct BlockSpec {
  int expansion = 1;
  int out_width = 16;
  int stride = 1;
  int repeats = 1;
};

// MobileNetV2-style architecture. Widths are conventional channel counts; the
// equivariant variant uses ceil(width / N) regular blocks per layer.
struct ArchConfig {
  std::string name = "custom";
  int group_order = 12;
  int input_size = 95;
  int input_channels = 3;
  int dw_kernel = 3;
  StemSpec stem;
  std::vector<BlockSpec> blocks;
  int head_width = 1280;
  int num_classes = 2;

  // Throws kValidation on even kernel sizes or non-positive widths.
  void Validate() const;
};

// Built-in presets: "mobilenetv2", "pcam95", "toy".
std::vector<std::string> PresetNames();
ArchConfig PresetArch(std::string_view name);

// Reads an architecture object; missing keys keep the values of `base`.
ArchConfig ArchFromJson(const nlohmann::json& j, ArchConfig base = {});
nlohmann::json ArchToJson(const ArchConfig& arch);

enum class LayerRole { kStem, kExpand, kDepthwise, kProject, kHead };

// One convolution of the architecture before any variant-specific choices.
struct LayerSkeleton {
  std::string name;
  LayerRole role = LayerRole::kStem;
  int kernel_size = 1;
  int stride = 1;
  int in_width = 0;
  int out_width = 0;
  bool relu = true;
};

struct BlockSkeleton {
  std::string name;
  std::vector<LayerSkeleton> layers;
};

// Stem block, one block per inverted-residual repeat, head block. Layer names
// are "stem", "block<i>.expand", "block<i>.dw", "block<i>.project", "head".
std::vector<BlockSkeleton> EnumerateLayers(const ArchConfig& arch);

}  // namespace eqq

#endif  // EQQ_NETBUILD_ARCH_H_
