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

#ifndef EQQ_NETBUILD_GRID_PLAN_H_
#define EQQ_NETBUILD_GRID_PLAN_H_

#include <string>
#include <string_view>
#include <vector>

#include "eqq/netbuild/arch.h"

namespace eqq {

struct PlannedLayer {
  std::string name;
  int input_size = 0;
  int kernel_size = 1;
  int stride = 1;
  int padding = 0;
  int output_size = 0;
};

struct GridPlan {
  int input_size = 0;
  std::vector<PlannedLayer> layers;

  const PlannedLayer& Find(std::string_view name) const;
  int output_size() const {
    return layers.empty() ? input_size : layers.back().output_size;
  }
};

// Padding for one layer such that the output is odd and the sampled centers
// are symmetric about the input's center pixel. Stride 1 always gets
// (k - 1) / 2. Throws kPlanning naming `name` when no padding <= (k - 1) / 2
// works.
int PlanPadding(std::string_view name, int input_size, int kernel_size,
                int stride);

// Throws kValidation for an even `input_size`.
GridPlan PlanGrid(int input_size, const ArchConfig& arch);

}  // namespace eqq

#endif  // EQQ_NETBUILD_GRID_PLAN_H_
