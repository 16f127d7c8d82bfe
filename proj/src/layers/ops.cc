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

#include "eqq/layers/ops.h"

#include <algorithm>

#include "eqq/common/error.h"
#include "eqq/ffcore/transform.h"

namespace eqq {

FeatureField Relu(const FeatureField& x) {
  FeatureField out = x;
  for (float& v : out.mutable_data()) v = v > 0.0f ? v : 0.0f;
  return out;
}

FeatureField Add(const FeatureField& a, const FeatureField& b) {
  Check(a.type() == b.type() && a.batch() == b.batch() &&
            a.height() == b.height() && a.width() == b.width(),
        ErrorCode::kDimension, "residual branches must have equal shapes");
  FeatureField out = a;
  auto dst = out.mutable_data();
  auto src = b.data();
  for (size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  return out;
}

FeatureField GroupPool(const FeatureField& x) {
  const FieldType& in = x.type();
  const int n = in.group_order();
  const FieldType out_type = FieldType::Trivial(in.units(), n);
  FeatureField out(out_type, x.batch(), x.height(), x.width());
  const size_t hw = static_cast<size_t>(x.height()) * x.width();
  for (int b = 0; b < x.batch(); ++b) {
    for (int c = 0; c < in.trivial_mult(); ++c) {
      auto src = x.plane(b, c);
      std::copy(src.begin(), src.end(), out.plane(b, c).begin());
    }
    for (int block = 0; block < in.regular_mult(); ++block) {
      auto dst = out.plane(b, in.trivial_mult() + block);
      for (size_t p = 0; p < hw; ++p) {
        double acc = 0.0;
        for (int r = 0; r < n; ++r) {
          acc += x.plane(b, in.RegularChannel(block, r))[p];
        }
        dst[p] = static_cast<float>(acc / n);
      }
    }
  }
  return out;
}

FeatureField GlobalPoolMasked(const FeatureField& x) {
  Check(x.is_odd_square(), ErrorCode::kDimension,
        "masked global pooling needs an odd square field");
  const int k = x.height();
  FeatureField out(x.type(), x.batch(), 1, 1);
  int count = 0;
  for (int row = 0; row < k; ++row) {
    for (int col = 0; col < k; ++col) count += InCircularMask(row, col, k);
  }
  for (int b = 0; b < x.batch(); ++b) {
    for (int c = 0; c < x.channels(); ++c) {
      auto src = x.plane(b, c);
      double acc = 0.0;
      for (int row = 0; row < k; ++row) {
        for (int col = 0; col < k; ++col) {
          if (InCircularMask(row, col, k)) acc += src[row * k + col];
        }
      }
      out.at(b, c, 0, 0) = static_cast<float>(acc / count);
    }
  }
  return out;
}

Linear Linear::Make(int in_features, int out_features) {
  Check(in_features >= 1 && out_features >= 1, ErrorCode::kDimension,
        "linear layer needs positive sizes");
  Linear l;
  l.in_features = in_features;
  l.out_features = out_features;
  l.weight.assign(static_cast<size_t>(in_features) * out_features, 0.0f);
  l.bias.assign(out_features, 0.0f);
  return l;
}

std::vector<float> ApplyLinear(const Linear& linear, const FeatureField& x) {
  Check(x.height() == 1 && x.width() == 1 && x.channels() == linear.in_features,
        ErrorCode::kDimension,
        "linear head expects a 1x1 field with " +
            std::to_string(linear.in_features) + " channels");
  std::vector<float> out(static_cast<size_t>(x.batch()) * linear.out_features);
  for (int b = 0; b < x.batch(); ++b) {
    for (int o = 0; o < linear.out_features; ++o) {
      double acc = linear.bias[o];
      for (int i = 0; i < linear.in_features; ++i) {
        acc += static_cast<double>(linear.weight[o * linear.in_features + i]) *
               x.at(b, i, 0, 0);
      }
      out[b * linear.out_features + o] = static_cast<float>(acc);
    }
  }
  return out;
}

}  // namespace eqq
