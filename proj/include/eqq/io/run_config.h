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


#ifndef EQQ_IO_RUN_CONFIG_H_
#define EQQ_IO_RUN_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "eqq/netbuild/arch.h"
#include "eqq/netbuild/model.h"

namespace eqq {

enum class RangeMode { kDataFree, kCalibrate };

std::string_view RangeModeName(RangeMode mode);
RangeMode ParseRangeMode(std::string_view name);

// A run configuration, e.g.
//   {"preset": "toy", "group_order": 4, "input_size": 15,
//    "variant": "equivariant", "bits": 8, "ranges": "datafree", "seed": 0}
// An optional "arch" object overrides preset fields.
struct RunConfig {
  std::string preset = "toy";
  ArchConfig arch;
  Variant variant = Variant::kEquivariant;
  int weight_bits = 8;
  int act_bits = 8;
  RangeMode ranges = RangeMode::kDataFree;
  uint64_t seed = 0;
};

// Throws kValidation on malformed JSON, unknown keys or invalid values.
RunConfig ParseRunConfig(std::string_view text);
RunConfig LoadRunConfig(const std::string& path);

}  // namespace eqq

#endif  // EQQ_IO_RUN_CONFIG_H_
