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


#ifndef EQQ_DFQ_EQUALIZE_H_
#define EQQ_DFQ_EQUALIZE_H_

#include <string>
#include <vector>

#include "eqq/layers/conv.h"
#include "eqq/netbuild/model.h"

namespace eqq {

enum class RangeSide { kOutgoing, kIncoming };

// Max-abs weight per channel: the output-channel slice for kOutgoing, the
// input-channel slice for kIncoming.
std::vector<double> ChannelRange(const ConvKernel& kernel, RangeSide side);

struct RangeReport {
  std::vector<double> r1;  // outgoing ranges of the first layer
  std::vector<double> r2;  // incoming ranges of the second layer
  std::vector<double> s;
};

// Rescales channel i by s_i = sqrt(r1_i * r2_i) / r2_i across a ReLU:
// first[i] /= s_i, its bias too, second[:, i] *= s_i. Channels with a zero
// range keep s_i = 1. Throws kDimension on a channel count mismatch.
RangeReport EqualizePair(ConvKernel& first, ConvKernel& second);

// Two consecutive layers where the first one's ReLU output feeds only the
// second. Residual sums and the pooling head break chains.
struct LayerPair {
  std::string first;
  std::string second;
};

std::vector<LayerPair> FindLayerPairs(const Model& model);

// Largest max(s) / min(s) - 1 over the regular blocks of `type`; 0 for
// all-trivial types.
double BlockScaleSpread(const std::vector<double>& s, const FieldType& type);

struct PairEqualization {
  LayerPair pair;
  std::vector<double> r1_before;
  std::vector<double> r2_before;
  std::vector<double> r1_after;
  std::vector<double> r2_after;
  std::vector<double> scale;  // product over all sweeps
  double block_spread = 0.0;
};

struct EqualizationReport {
  int sweeps = 0;
  bool converged = false;
  double last_max_step = 0.0;  // max |s - 1| of the final sweep
  std::vector<PairEqualization> pairs;
};

inline constexpr int kMaxEqualizationSweeps = 20;
inline constexpr double kEqualizationTolerance = 1e-4;

// Repeats EqualizePair over every pair until max |s - 1| < 1e-4 or 20 sweeps.
// Activation statistics of the first layer are divided by s. Throws
// kValidation when batch norm is still unfolded.
Model EqualizeNetwork(const Model& model, EqualizationReport* report = nullptr);

// max_i r_i / min_i r_i over channels with r_i > 0 (1 when none).
double RangeSpread(const std::vector<double>& ranges);

}  // namespace eqq

#endif  // EQQ_DFQ_EQUALIZE_H_
