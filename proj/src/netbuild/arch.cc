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

#include "eqq/netbuild/arch.h"

#include "eqq/common/error.h"

namespace eqq {
namespace {

// Presets are data. pcam95 reads "reduce the stride in two layers" as: stem
// stride 1 and the 160-wide stage at stride 1.
constexpr std::string_view kPresets = R"json({
  "mobilenetv2": {
    "group_order": 12, "input_size": 95, "input_channels": 3, "dw_kernel": 3,
    "stem": {"kernel_size": 3, "stride": 2, "out_width": 32},
    "blocks": [
      {"expansion": 1, "out_width": 16,  "stride": 1, "repeats": 1},
      {"expansion": 6, "out_width": 24,  "stride": 2, "repeats": 2},
      {"expansion": 6, "out_width": 32,  "stride": 2, "repeats": 3},
      {"expansion": 6, "out_width": 64,  "stride": 2, "repeats": 4},
      {"expansion": 6, "out_width": 96,  "stride": 1, "repeats": 3},
      {"expansion": 6, "out_width": 160, "stride": 2, "repeats": 3},
      {"expansion": 6, "out_width": 320, "stride": 1, "repeats": 1}
    ],
    "head_width": 1280, "num_classes": 2
  },
  "pcam95": {
    "group_order": 12, "input_size": 95, "input_channels": 3, "dw_kernel": 3,
    "stem": {"kernel_size": 3, "stride": 1, "out_width": 32},
    "blocks": [
      {"expansion": 1, "out_width": 16,  "stride": 1, "repeats": 1},
      {"expansion": 6, "out_width": 24,  "stride": 2, "repeats": 2},
      {"expansion": 6, "out_width": 32,  "stride": 2, "repeats": 3},
      {"expansion": 6, "out_width": 64,  "stride": 2, "repeats": 4},
      {"expansion": 6, "out_width": 96,  "stride": 1, "repeats": 3},
      {"expansion": 6, "out_width": 160, "stride": 1, "repeats": 3},
      {"expansion": 6, "out_width": 320, "stride": 1, "repeats": 1}
    ],
    "head_width": 1280, "num_classes": 2
  },
  "toy": {
    "group_order": 4, "input_size": 15, "input_channels": 3, "dw_kernel": 3,
    "stem": {"kernel_size": 3, "stride": 1, "out_width": 8},
    "blocks": [
      {"expansion": 1, "out_width": 8,  "stride": 1, "repeats": 1},
      {"expansion": 2, "out_width": 16, "stride": 2, "repeats": 1},
      {"expansion": 2, "out_width": 16, "stride": 1, "repeats": 1}
    ],
    "head_width": 16, "num_classes": 3
  }
})json";

const nlohmann::json& PresetTable() {
  static const nlohmann::json table = nlohmann::json::parse(kPresets);
  return table;
}

int ReadInt(const nlohmann::json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  Check(j.at(key).is_number_integer(), ErrorCode::kValidation,
        std::string("architecture field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

void ArchConfig::Validate() const {
  auto positive = [](int v, const char* what) {
    Check(v >= 1, ErrorCode::kValidation,
          std::string(what) + " must be >= 1, got " + std::to_string(v));
  };
  positive(group_order, "group_order");
  positive(input_size, "input_size");
  positive(input_channels, "input_channels");
  positive(stem.out_width, "stem width");
  positive(stem.stride, "stem stride");
  positive(head_width, "head_width");
  positive(num_classes, "num_classes");
  Check(stem.kernel_size % 2 == 1 && stem.kernel_size >= 1,
        ErrorCode::kValidation, "stem kernel size must be odd");
  Check(dw_kernel % 2 == 1 && dw_kernel >= 1, ErrorCode::kValidation,
        "depthwise kernel size must be odd");
  for (const BlockSpec& b : blocks) {
    positive(b.expansion, "block expansion");
    positive(b.out_width, "block width");
    positive(b.stride, "block stride");
    positive(b.repeats, "block repeats");
  }
}

std::vector<std::string> PresetNames() {
  std::vector<std::string> names;
  for (const auto& [name, _] : PresetTable().items()) names.push_back(name);
  return names;
}

ArchConfig PresetArch(std::string_view name) {
  const auto& table = PresetTable();
  const std::string key(name);
  Check(table.contains(key), ErrorCode::kValidation,
        "unknown architecture preset '" + key + "'");
  ArchConfig arch = ArchFromJson(table.at(key));
  arch.name = key;
  return arch;
}

ArchConfig ArchFromJson(const nlohmann::json& j, ArchConfig base) {
  Check(j.is_object(), ErrorCode::kValidation,
        "architecture must be a JSON object");
  ArchConfig a = std::move(base);
  if (j.contains("name")) a.name = j.at("name").get<std::string>();
  a.group_order = ReadInt(j, "group_order", a.group_order);
  a.input_size = ReadInt(j, "input_size", a.input_size);
  a.input_channels = ReadInt(j, "input_channels", a.input_channels);
  a.dw_kernel = ReadInt(j, "dw_kernel", a.dw_kernel);
  a.head_width = ReadInt(j, "head_width", a.head_width);
  a.num_classes = ReadInt(j, "num_classes", a.num_classes);
  if (j.contains("stem")) {
    const auto& s = j.at("stem");
    a.stem.kernel_size = ReadInt(s, "kernel_size", a.stem.kernel_size);
    a.stem.stride = ReadInt(s, "stride", a.stem.stride);
    a.stem.out_width = ReadInt(s, "out_width", a.stem.out_width);
  }
  if (j.contains("blocks")) {
    a.blocks.clear();
    for (const auto& b : j.at("blocks")) {
      BlockSpec spec;
      spec.expansion = ReadInt(b, "expansion", spec.expansion);
      spec.out_width = ReadInt(b, "out_width", spec.out_width);
      spec.stride = ReadInt(b, "stride", spec.stride);
      spec.repeats = ReadInt(b, "repeats", spec.repeats);
      a.blocks.push_back(spec);
    }
  }
  a.Validate();
  return a;
}

nlohmann::json ArchToJson(const ArchConfig& a) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const BlockSpec& b : a.blocks) {
    blocks.push_back({{"expansion", b.expansion},
                      {"out_width", b.out_width},
                      {"stride", b.stride},
                      {"repeats", b.repeats}});
  }
  return {{"name", a.name},
          {"group_order", a.group_order},
          {"input_size", a.input_size},
          {"input_channels", a.input_channels},
          {"dw_kernel", a.dw_kernel},
          {"stem",
           {{"kernel_size", a.stem.kernel_size},
            {"stride", a.stem.stride},
            {"out_width", a.stem.out_width}}},
          {"blocks", blocks},
          {"head_width", a.head_width},
          {"num_classes", a.num_classes}};
}

std::vector<BlockSkeleton> EnumerateLayers(const ArchConfig& arch) {
  arch.Validate();
  std::vector<BlockSkeleton> out;
  out.push_back({"stem",
                 {{"stem", LayerRole::kStem, arch.stem.kernel_size,
                   arch.stem.stride, arch.input_channels, arch.stem.out_width,
                   true}}});
  int width = arch.stem.out_width;
  int index = 0;
  for (const BlockSpec& spec : arch.blocks) {
    for (int rep = 0; rep < spec.repeats; ++rep, ++index) {
      const std::string name = "block" + std::to_string(index);
      const int stride = rep == 0 ? spec.stride : 1;
      const int hidden = width * spec.expansion;
      BlockSkeleton block{name, {}};
      if (spec.expansion != 1) {
        block.layers.push_back({name + ".expand", LayerRole::kExpand, 1, 1,
                                width, hidden, true});
      }
      block.layers.push_back({name + ".dw", LayerRole::kDepthwise,
                              arch.dw_kernel, stride, hidden, hidden, true});
      block.layers.push_back({name + ".project", LayerRole::kProject, 1, 1,
                              hidden, spec.out_width, false});
      out.push_back(std::move(block));
      width = spec.out_width;
    }
  }
  out.push_back({"head",
                 {{"head", LayerRole::kHead, 1, 1, width, arch.head_width,
                   true}}});
  return out;
}

}  // namespace eqq
