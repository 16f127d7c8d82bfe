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

#ifndef EQQ_DFQ_QUANT_PARAMS_H_
#define EQQ_DFQ_QUANT_PARAMS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace eqq {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  // Smallest range containing both this one and 0.
  Range ZeroExtended() const;
  Range Union(const Range& other) const;
  // Both ends rounded to float, so the range survives a float32 container.
  Range ToFloat() const;

  friend bool operator==(const Range&, const Range&) = default;
};

// Affine per-tensor quantization: real = (q - zero_point) * scale with
// q in [0, 2^bits - 1].
struct QuantParams {
  double scale = 1.0;
  int64_t zero_point = 0;
  int bits = 8;

  int64_t levels() const { return (int64_t{1} << bits) - 1; }
};

inline constexpr int kMinBits = 2;
inline constexpr int kMaxBits = 32;

// scale = (hi - lo) / (2^bits - 1), zero_point = round(-lo / scale) clamped,
// computed on the zero-extended range. Throws kDegenerateRange when the
// extended range is empty and kValidation for unsupported bit widths.
QuantParams ChooseQuantParams(Range range, int bits);

// Symmetric parameters for weights: lo = -max|w|, hi = +max|w|.
QuantParams SymmetricQuantParams(std::span<const float> values, int bits);

// clamp(round(x / scale) + zero_point), rounding half away from zero.
int64_t QuantizeValue(double x, const QuantParams& p);
double DequantizeValue(int64_t q, const QuantParams& p);

struct QuantizedTensor {
  std::vector<int64_t> values;
  QuantParams params;
};

QuantizedTensor QuantizeTensor(std::span<const float> x, int bits, Range range);
std::vector<double> Dequantize(const QuantizedTensor& t);

// Quantize-dequantize round trip in place.
void FakeQuantize(std::span<float> values, const QuantParams& p);

}  // namespace eqq

#endif  // EQQ_DFQ_QUANT_PARAMS_H_
