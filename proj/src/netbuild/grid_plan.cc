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

#include "eqq/netbuild/grid_plan.h"

#include "eqq/common/error.h"

namespace eqq {

const PlannedLayer& GridPlan::Find(std::string_view name) const {
  for (const PlannedLayer& l : layers) {
    if (l.name == name) return l;
  }
  Fail(ErrorCode::kValidation,
       "grid plan has no layer named '" + std::string(name) + "'");
}

int PlanPadding(std::string_view name, int input_size, int kernel_size,
                int stride) {
  const int half = (kernel_size - 1) / 2;
  if (stride == 1) return half;
  for (int p = 0; p <= half; ++p) {
    const int span = input_size + 2 * p - kernel_size;
    if (span < 0 || span % stride != 0) continue;
    const int out = span / stride + 1;
    if (out % 2 == 0) continue;
    // First and last sampled centers must mirror each other.
    const int first = half - p;
    const int last = first + stride * (out - 1);
    if (first + last != input_size - 1) continue;
    return p;
  }
  Fail(ErrorCode::kPlanning,
       "layer '" + std::string(name) + "': no padding <= " +
           std::to_string(half) + " keeps an odd, centered grid for input " +
           std::to_string(input_size) + ", kernel " +
           std::to_string(kernel_size) + ", stride " + std::to_string(stride));
}

GridPlan PlanGrid(int input_size, const ArchConfig& arch) {
  Check(input_size >= 1 && input_size % 2 == 1, ErrorCode::kValidation,
        "input size must be odd to keep quarter-turn symmetry, got " +
            std::to_string(input_size));
  GridPlan plan;
  plan.input_size = input_size;
  int size = input_size;
  for (const BlockSkeleton& block : EnumerateLayers(arch)) {
    for (const LayerSkeleton& layer : block.layers) {
      const int p =
          PlanPadding(layer.name, size, layer.kernel_size, layer.stride);
      const int out = (size + 2 * p - layer.kernel_size) / layer.stride + 1;
      plan.layers.push_back(
          {layer.name, size, layer.kernel_size, layer.stride, p, out});
      size = out;
    }
  }
  return plan;
}

}  // namespace eqq
