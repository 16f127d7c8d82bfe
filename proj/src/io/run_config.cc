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


#include "eqq/io/run_config.h"

#include <set>

#include "eqq/common/error.h"
#include "eqq/io/weight_store.h"
#include "json.hpp"

namespace eqq {

std::string_view RangeModeName(RangeMode mode) {
  return mode == RangeMode::kDataFree ? "datafree" : "calibrate";
}

RangeMode ParseRangeMode(std::string_view name) {
  if (name == "datafree") return RangeMode::kDataFree;
  if (name == "calibrate") return RangeMode::kCalibrate;
  Fail(ErrorCode::kValidation, "range mode must be 'datafree' or 'calibrate', got '" +
                                   std::string(name) + "'");
}

RunConfig ParseRunConfig(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kValidation, std::string("config is not valid JSON: ") + e.what());
  }
  Check(j.is_object(), ErrorCode::kValidation, "config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "preset", "group_order", "input_size", "variant", "bits",
      "weight_bits", "act_bits", "ranges", "seed", "arch"};
  for (const auto& [key, _] : j.items()) {
    Check(kKeys.count(key) == 1, ErrorCode::kValidation,
          "unknown config key '" + key + "'");
  }
  RunConfig rc;
  try {
    rc.preset = j.value("preset", rc.preset);
    rc.arch = PresetArch(rc.preset);
    nlohmann::json overrides = j.value("arch", nlohmann::json::object());
    if (j.contains("group_order")) overrides["group_order"] = j["group_order"];
    if (j.contains("input_size")) overrides["input_size"] = j["input_size"];
    rc.arch = ArchFromJson(overrides, rc.arch);
    rc.variant = ParseVariant(j.value("variant", std::string("equivariant")));
    const int bits = j.value("bits", 8);
    rc.weight_bits = j.value("weight_bits", bits);
    rc.act_bits = j.value("act_bits", bits);
    rc.ranges = ParseRangeMode(j.value("ranges", std::string("datafree")));
    rc.seed = j.value("seed", uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kValidation, std::string("bad config value: ") + e.what());
  }
  return rc;
}

RunConfig LoadRunConfig(const std::string& path) {
  return ParseRunConfig(ReadFileBytes(path));
}

}  // namespace eqq
