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

#ifndef EQQ_LAYERS_BATCHNORM_H_
#define EQQ_LAYERS_BATCHNORM_H_

#include <vector>

#include "eqq/ffcore/field.h"
#include "eqq/layers/conv.h"

namespace eqq {

inline constexpr double kBatchNormEpsilon = 1e-5;

// Inference-time batch norm statistics with one unit per trivial channel and
// one unit per regular block (shared by its N channels).
struct BNStats {
  FieldType layout;
  std::vector<float> gamma;
  std::vector<float> beta;
  std::vector<float> mean;
  std::vector<float> var;

  // gamma = 1, beta = 0, mean = 0, var = 1.
  static BNStats Identity(const FieldType& layout);

  int units() const { return layout.units(); }

  // Copies every unit onto each of its channels, giving a per-channel layout
  // (all-trivial type of the same width).
  BNStats Replicated() const;

  // Effective per-channel affine map y = scale * x + shift.
  std::vector<double> ChannelScale() const;
  std::vector<double> ChannelShift() const;

  // Throws kValidation for non-positive variance or wrong buffer lengths.
  void Validate() const;
};

// gamma * (x - mean) / sqrt(var + eps) + beta, broadcast over block channels.
FeatureField BatchNormApply(const FeatureField& x, const BNStats& bn);

// w' = w * gamma / sqrt(var + eps) per output channel,
// b' = beta + (b - mean) * gamma / sqrt(var + eps).
ConvKernel BatchNormFold(const ConvKernel& kernel, const BNStats& bn);

}  // namespace eqq

#endif  // EQQ_LAYERS_BATCHNORM_H_
