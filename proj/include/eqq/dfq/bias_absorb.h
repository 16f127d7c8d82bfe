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


#ifndef EQQ_DFQ_BIAS_ABSORB_H_
#define EQQ_DFQ_BIAS_ABSORB_H_

#include <string>
#include <string_view>
#include <vector>

#include "eqq/dfq/equalize.h"
#include "eqq/layers/conv.h"
#include "eqq/netbuild/model.h"

namespace eqq {

inline constexpr double kAbsorbSigmas = 3.0;

// c_i = max(0, beta_i - 3 * gamma_i).
std::vector<double> AbsorptionAmounts(const ActivationStats& stats);

// Moves c out of the first layer's bias and into the second layer's bias
// through the second layer's weight sums. Exact whenever every pre-activation
// of the first layer is at least c. The second layer must be unpadded.
void AbsorbPair(ConvKernel& first, ActivationStats& stats, ConvKernel& second,
                const std::vector<double>& c);

enum class AbsorbStatus { kAbsorbed, kNothingToAbsorb, kNoStatistics, kPadded };

std::string_view AbsorbStatusName(AbsorbStatus status);

struct AbsorbSite {
  LayerPair pair;
  AbsorbStatus status = AbsorbStatus::kNothingToAbsorb;
  double max_shift = 0.0;
};

struct AbsorbReport {
  std::vector<AbsorbSite> sites;
};

Model AbsorbHighBias(const Model& model, AbsorbReport* report = nullptr);

}  // namespace eqq

#endif  // EQQ_DFQ_BIAS_ABSORB_H_
