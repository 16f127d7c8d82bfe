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

#include "eqq/dfq/quant_params.h"

#include <algorithm>
#include <cmath>

#include "eqq/common/error.h"

namespace eqq {

Range Range::ZeroExtended() const {
  return {std::min(lo, 0.0), std::max(hi, 0.0)};
}

Range Range::Union(const Range& other) const {
  return {std::min(lo, other.lo), std::max(hi, other.hi)};
}

Range Range::ToFloat() const {
  return {static_cast<double>(static_cast<float>(lo)),
          static_cast<double>(static_cast<float>(hi))};
}

QuantParams ChooseQuantParams(Range range, int bits) {
  Check(bits >= kMinBits && bits <= kMaxBits, ErrorCode::kValidation,
        "bit width must be in [2, 32], got " + std::to_string(bits));
  Check(range.lo <= range.hi, ErrorCode::kValidation,
        "quantization range is inverted");
  const Range r = range.ZeroExtended();
  Check(r.hi > r.lo, ErrorCode::kDegenerateRange,
        "quantization range collapses to a point after zero-extension");
  QuantParams p;
  p.bits = bits;
  p.scale = (r.hi - r.lo) / static_cast<double>(p.levels());
  p.zero_point = std::clamp<int64_t>(
      static_cast<int64_t>(std::round(-r.lo / p.scale)), 0, p.levels());
  return p;
}

QuantParams SymmetricQuantParams(std::span<const float> values, int bits) {
  double m = 0.0;
  for (float v : values) m = std::max(m, std::fabs(static_cast<double>(v)));
  return ChooseQuantParams({-m, m}, bits);
}

int64_t QuantizeValue(double x, const QuantParams& p) {
  const double q = std::round(x / p.scale) + static_cast<double>(p.zero_point);
  return static_cast<int64_t>(
      std::clamp(q, 0.0, static_cast<double>(p.levels())));
}

double DequantizeValue(int64_t q, const QuantParams& p) {
  return static_cast<double>(q - p.zero_point) * p.scale;
}

QuantizedTensor QuantizeTensor(std::span<const float> x, int bits,
                               Range range) {
  QuantizedTensor t;
  t.params = ChooseQuantParams(range, bits);
  t.values.reserve(x.size());
  for (float v : x) t.values.push_back(QuantizeValue(v, t.params));
  return t;
}

std::vector<double> Dequantize(const QuantizedTensor& t) {
  std::vector<double> out;
  out.reserve(t.values.size());
  for (int64_t q : t.values) out.push_back(DequantizeValue(q, t.params));
  return out;
}

void FakeQuantize(std::span<float> values, const QuantParams& p) {
  for (float& v : values) {
    v = static_cast<float>(DequantizeValue(QuantizeValue(v, p), p));
  }
}

}  // namespace eqq
