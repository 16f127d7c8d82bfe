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


#include "eqq/dfq/bias_absorb.h"

#include <algorithm>
#include <cmath>

#include "eqq/common/error.h"
#include "eqq/dfq/equalize.h"

namespace eqq {

std::vector<double> AbsorptionAmounts(const ActivationStats& stats) {
  std::vector<double> c(stats.shift.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = std::max(0.0, static_cast<double>(stats.shift[i]) -
                             kAbsorbSigmas * std::fabs(stats.scale[i]));
  }
  return c;
}

void AbsorbPair(ConvKernel& first, ActivationStats& stats, ConvKernel& second,
                const std::vector<double>& c) {
  Check(first.out_channels == second.in_channels &&
            c.size() == static_cast<size_t>(first.out_channels) &&
            stats.shift.size() == c.size(),
        ErrorCode::kDimension, "bias absorption channel mismatch");
  Check(second.padding == 0, ErrorCode::kValidation,
        "bias absorption needs an unpadded second layer");
  for (size_t i = 0; i < c.size(); ++i) {
    first.bias[i] = static_cast<float>(first.bias[i] - c[i]);
    stats.shift[i] = static_cast<float>(stats.shift[i] - c[i]);
  }
  for (int o = 0; o < second.out_channels; ++o) {
    double add = 0.0;
    const int fan = second.fan_in_channels();
    for (int j = 0; j < fan; ++j) {
      const int i = second.depthwise ? o : j;
      if (c[i] == 0.0) continue;
      double sum = 0.0;
      for (float w : second.filter(o, j)) sum += w;
      add += sum * c[i];
    }
    second.bias[o] = static_cast<float>(second.bias[o] + add);
  }
}

std::string_view AbsorbStatusName(AbsorbStatus status) {
  switch (status) {
    case AbsorbStatus::kAbsorbed:
      return "absorbed";
    case AbsorbStatus::kNothingToAbsorb:
      return "nothing";
    case AbsorbStatus::kNoStatistics:
      return "skipped-no-statistics";
    case AbsorbStatus::kPadded:
      return "skipped-padded";
  }
  return "unknown";
}

Model AbsorbHighBias(const Model& model, AbsorbReport* report) {
  Check(!model.has_unfolded_bn(), ErrorCode::kValidation,
        "batch norm must be folded before bias absorption");
  Check(!model.has_equivariant_layers(), ErrorCode::kValidation,
        "bias absorption needs plain kernels; export the model first");
  Model out = model;
  AbsorbReport rep;
  for (const LayerPair& pair : FindLayerPairs(out)) {
    ConvLayer& first = out.MutableLayer(pair.first);
    ConvLayer& second = out.MutableLayer(pair.second);
    AbsorbSite site{pair, AbsorbStatus::kNothingToAbsorb, 0.0};
    if (!first.act_stats) {
      site.status = AbsorbStatus::kNoStatistics;
    } else if (second.kernel().padding != 0) {
      site.status = AbsorbStatus::kPadded;
    } else {
      const std::vector<double> c = AbsorptionAmounts(*first.act_stats);
      site.max_shift = *std::max_element(c.begin(), c.end());
      if (site.max_shift > 0.0) {
        AbsorbPair(first.kernel(), *first.act_stats, second.kernel(), c);
        site.status = AbsorbStatus::kAbsorbed;
      }
    }
    rep.sites.push_back(site);
  }
  if (report != nullptr) *report = std::move(rep);
  return out;
}

}  // namespace eqq
