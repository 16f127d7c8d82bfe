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

#ifndef EQQ_LAYERS_CONV_H_
#define EQQ_LAYERS_CONV_H_

#include <span>
#include <vector>

#include "eqq/ffcore/field.h"

namespace eqq {

// Plain convolution weights. Dense kernels are [out][in][k][k]; depthwise
// kernels use the diagonal form [channels][1][k][k] with in == out.
struct ConvKernel {
  int out_channels = 0;
  int in_channels = 0;
  int kernel_size = 1;
  int stride = 1;
  int padding = 0;
  bool depthwise = false;
  std::vector<float> weights;
  std::vector<float> bias;

  static ConvKernel Dense(int out_channels, int in_channels, int kernel_size,
                          int stride = 1, int padding = 0);
  static ConvKernel Depthwise(int channels, int kernel_size, int stride = 1,
                              int padding = 0);

  // Input channels that feed each output channel (1 for depthwise).
  int fan_in_channels() const { return depthwise ? 1 : in_channels; }
  size_t filter_size() const {
    return static_cast<size_t>(kernel_size) * kernel_size;
  }

  // Weights of output channel `o` against (local) input channel `i`.
  std::span<float> filter(int o, int i) {
    return {weights.data() + (static_cast<size_t>(o) * fan_in_channels() + i) *
                                 filter_size(),
            filter_size()};
  }
  std::span<const float> filter(int o, int i) const {
    return {weights.data() + (static_cast<size_t>(o) * fan_in_channels() + i) *
                                 filter_size(),
            filter_size()};
  }

  // All weights producing output channel `o`.
  std::span<const float> output_slice(int o) const {
    const size_t n = fan_in_channels() * filter_size();
    return {weights.data() + o * n, n};
  }

  // Throws kDimension when buffer sizes disagree with the declared shape.
  void Validate() const;
};

// floor((size + 2p - k) / s) + 1, or throws kDimension if that is < 1.
int ConvOutputSize(int size, int kernel_size, int stride, int padding);

// Cross-correlation (no kernel flip) with zero padding and per-output-channel
// bias. Accumulates in double. The result is tagged with `out_type`.
FeatureField Conv2d(const FeatureField& x, const ConvKernel& kernel,
                    const FieldType& out_type);

}  // namespace eqq

#endif  // EQQ_LAYERS_CONV_H_
