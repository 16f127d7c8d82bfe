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


#include "eqq/dfq/quantize_model.h"

#include <string>
#include <vector>

#include "eqq/common/error.h"

namespace eqq {

Model QuantizeModel(const Model& model, int weight_bits, int act_bits,
                    const SiteRanges& ranges) {
  Check(!model.has_unfolded_bn(), ErrorCode::kValidation,
        "batch norm must be folded before quantization");
  Check(!model.has_equivariant_layers(), ErrorCode::kValidation,
        "quantization needs plain kernels; export the model first");
  for (int bits : {weight_bits, act_bits}) {
    Check(bits >= kMinBits && bits <= kMaxBits, ErrorCode::kValidation,
          "bit width must lie in [" + std::to_string(kMinBits) + ", " +
              std::to_string(kMaxBits) + "], got " + std::to_string(bits));
  }

  Model out = model;
  QuantState state;
  state.weight_bits = weight_bits;
  state.act_bits = act_bits;
  std::vector<std::string> degenerate;

  std::vector<std::pair<std::string, std::vector<float>*>> weights;
  for (ConvLayer* layer : out.MutableLayers()) {
    weights.emplace_back(layer->name, &layer->kernel().weights);
  }
  weights.emplace_back("classifier", &out.classifier.weight);
  for (auto& [name, w] : weights) {
    const double m = MaxAbs(*w);
    if (m == 0.0) {
      degenerate.push_back(name + ".weight");
      continue;
    }
    state.weight_ranges[name] = Range{-m, m};
  }

  for (const std::string& site : ActivationSites(out)) {
    const auto it = ranges.find(site);
    Check(it != ranges.end(), ErrorCode::kCalibrationRequired,
          "no activation range for site '" + site + "'");
    const Range r = it->second.ZeroExtended().ToFloat();
    if (r.hi == r.lo) {
      degenerate.push_back("act." + site);
      continue;
    }
    state.activation_ranges[site] = r;
  }

  if (!degenerate.empty()) {
    std::string list;
    for (const std::string& d : degenerate) list += (list.empty() ? "" : ", ") + d;
    Fail(ErrorCode::kDegenerateRange, "degenerate quantization range: " + list);
  }

  for (auto& [name, w] : weights) {
    FakeQuantize(*w, SymmetricQuantParams(*w, weight_bits));
  }
  out.quant = std::move(state);
  return out;
}

}  // namespace eqq
