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

#include "eqq/layers/batchnorm.h"

#include <cmath>

#include "eqq/common/error.h"

namespace eqq {

BNStats BNStats::Identity(const FieldType& layout) {
  const int u = layout.units();
  return BNStats{layout, std::vector<float>(u, 1.0f), std::vector<float>(u, 0.0f),
                 std::vector<float>(u, 0.0f), std::vector<float>(u, 1.0f)};
}

BNStats BNStats::Replicated() const {
  const int c = layout.channels();
  BNStats out{FieldType::Trivial(c, layout.group_order()), {}, {}, {}, {}};
  for (int ch = 0; ch < c; ++ch) {
    const int u = layout.UnitOfChannel(ch);
    out.gamma.push_back(gamma[u]);
    out.beta.push_back(beta[u]);
    out.mean.push_back(mean[u]);
    out.var.push_back(var[u]);
  }
  return out;
}

std::vector<double> BNStats::ChannelScale() const {
  std::vector<double> s(layout.channels());
  for (int c = 0; c < layout.channels(); ++c) {
    const int u = layout.UnitOfChannel(c);
    s[c] = gamma[u] / std::sqrt(static_cast<double>(var[u]) + kBatchNormEpsilon);
  }
  return s;
}

std::vector<double> BNStats::ChannelShift() const {
  const std::vector<double> scale = ChannelScale();
  std::vector<double> t(layout.channels());
  for (int c = 0; c < layout.channels(); ++c) {
    const int u = layout.UnitOfChannel(c);
    t[c] = beta[u] - mean[u] * scale[c];
  }
  return t;
}

void BNStats::Validate() const {
  const size_t u = layout.units();
  Check(gamma.size() == u && beta.size() == u && mean.size() == u &&
            var.size() == u,
        ErrorCode::kValidation,
        "batch norm needs " + std::to_string(u) + " units for " +
            layout.ToString());
  for (float v : var) {
    Check(v > 0.0f, ErrorCode::kValidation,
          "batch norm variance must be positive, got " + std::to_string(v));
  }
}

FeatureField BatchNormApply(const FeatureField& x, const BNStats& bn) {
  bn.Validate();
  Check(bn.layout.channels() == x.channels(), ErrorCode::kValidation,
        "batch norm layout " + bn.layout.ToString() +
            " does not match field " + x.type().ToString());
  Check(bn.layout == x.type() || bn.layout.is_trivial(), ErrorCode::kValidation,
        "block-shared batch norm must match the field's block structure");
  FeatureField out = x;
  for (int b = 0; b < x.batch(); ++b) {
    for (int c = 0; c < x.channels(); ++c) {
      const int u = bn.layout.UnitOfChannel(c);
      const double inv = 1.0 / std::sqrt(static_cast<double>(bn.var[u]) +
                                         kBatchNormEpsilon);
      const double g = bn.gamma[u];
      const double m = bn.mean[u];
      const double beta = bn.beta[u];
      for (float& v : out.plane(b, c)) {
        v = static_cast<float>(g * (v - m) * inv + beta);
      }
    }
  }
  return out;
}

ConvKernel BatchNormFold(const ConvKernel& kernel, const BNStats& bn) {
  bn.Validate();
  Check(bn.layout.channels() == kernel.out_channels, ErrorCode::kValidation,
        "batch norm with " + std::to_string(bn.layout.channels()) +
            " channels cannot fold into a kernel with " +
            std::to_string(kernel.out_channels) + " outputs");
  ConvKernel out = kernel;
  const std::vector<double> scale = bn.ChannelScale();
  for (int o = 0; o < kernel.out_channels; ++o) {
    const int u = bn.layout.UnitOfChannel(o);
    const size_t n = kernel.fan_in_channels() * kernel.filter_size();
    for (size_t j = 0; j < n; ++j) {
      float& w = out.weights[o * n + j];
      w = static_cast<float>(w * scale[o]);
    }
    out.bias[o] = static_cast<float>(
        bn.beta[u] + (static_cast<double>(kernel.bias[o]) - bn.mean[u]) * scale[o]);
  }
  return out;
}

}  // namespace eqq
