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

#include "eqq/layers/conv.h"

#include <algorithm>

#include "eqq/common/error.h"

namespace eqq {

ConvKernel ConvKernel::Dense(int out_channels, int in_channels,
                             int kernel_size, int stride, int padding) {
  ConvKernel k;
  k.out_channels = out_channels;
  k.in_channels = in_channels;
  k.kernel_size = kernel_size;
  k.stride = stride;
  k.padding = padding;
  k.weights.assign(static_cast<size_t>(out_channels) * in_channels *
                       kernel_size * kernel_size,
                   0.0f);
  k.bias.assign(out_channels, 0.0f);
  k.Validate();
  return k;
}

ConvKernel ConvKernel::Depthwise(int channels, int kernel_size, int stride,
                                 int padding) {
  ConvKernel k;
  k.out_channels = channels;
  k.in_channels = channels;
  k.kernel_size = kernel_size;
  k.stride = stride;
  k.padding = padding;
  k.depthwise = true;
  k.weights.assign(static_cast<size_t>(channels) * kernel_size * kernel_size,
                   0.0f);
  k.bias.assign(channels, 0.0f);
  k.Validate();
  return k;
}

void ConvKernel::Validate() const {
  Check(out_channels >= 1 && in_channels >= 1, ErrorCode::kDimension,
        "conv kernel needs positive channel counts");
  Check(kernel_size >= 1 && kernel_size % 2 == 1, ErrorCode::kDimension,
        "conv kernel size must be odd, got " + std::to_string(kernel_size));
  Check(stride >= 1 && padding >= 0, ErrorCode::kDimension,
        "conv stride must be >= 1 and padding >= 0");
  Check(!depthwise || in_channels == out_channels, ErrorCode::kDimension,
        "depthwise kernel needs equal in / out channels");
  Check(weights.size() ==
            static_cast<size_t>(out_channels) * fan_in_channels() *
                filter_size(),
        ErrorCode::kDimension, "conv weight buffer has the wrong length");
  Check(bias.size() == static_cast<size_t>(out_channels),
        ErrorCode::kDimension, "conv bias buffer has the wrong length");
}

int ConvOutputSize(int size, int kernel_size, int stride, int padding) {
  const int span = size + 2 * padding - kernel_size;
  Check(span >= 0, ErrorCode::kDimension,
        "kernel " + std::to_string(kernel_size) + " does not fit input " +
            std::to_string(size) + " with padding " + std::to_string(padding));
  return span / stride + 1;
}

namespace {

// acc[oy][ox] += w * x[oy * s - p + ky][ox * s - p + kx] for one filter tap
// over the whole output plane.
void AccumulatePlane(std::span<const float> in, int in_h, int in_w,
                     std::span<const float> filter, int k, int stride,
                     int padding, std::vector<double>& acc, int out_h,
                     int out_w) {
  for (int ky = 0; ky < k; ++ky) {
    for (int kx = 0; kx < k; ++kx) {
      const double w = filter[ky * k + kx];
      if (w == 0.0) continue;
      for (int oy = 0; oy < out_h; ++oy) {
        const int iy = oy * stride - padding + ky;
        if (iy < 0 || iy >= in_h) continue;
        const float* row = in.data() + static_cast<size_t>(iy) * in_w;
        double* out_row = acc.data() + static_cast<size_t>(oy) * out_w;
        // Valid ox range: 0 <= ox * s - p + kx < in_w.
        int ox_begin = 0;
        const int lead = padding - kx;
        if (lead > 0) ox_begin = (lead + stride - 1) / stride;
        int ox_end = out_w;
        const int last = in_w - 1 + padding - kx;
        if (last < 0) continue;
        ox_end = std::min(out_w, last / stride + 1);
        for (int ox = ox_begin; ox < ox_end; ++ox) {
          out_row[ox] += w * row[ox * stride - padding + kx];
        }
      }
    }
  }
}

}  // namespace

FeatureField Conv2d(const FeatureField& x, const ConvKernel& kernel,
                    const FieldType& out_type) {
  kernel.Validate();
  Check(x.channels() == kernel.in_channels, ErrorCode::kDimension,
        "conv expects " + std::to_string(kernel.in_channels) +
            " input channels, got " + std::to_string(x.channels()));
  Check(out_type.channels() == kernel.out_channels, ErrorCode::kDimension,
        "conv output type " + out_type.ToString() + " does not match " +
            std::to_string(kernel.out_channels) + " output channels");
  const int k = kernel.kernel_size;
  const int out_h = ConvOutputSize(x.height(), k, kernel.stride, kernel.padding);
  const int out_w = ConvOutputSize(x.width(), k, kernel.stride, kernel.padding);
  FeatureField out(out_type, x.batch(), out_h, out_w);
  std::vector<double> acc(static_cast<size_t>(out_h) * out_w);
  for (int b = 0; b < x.batch(); ++b) {
    for (int o = 0; o < kernel.out_channels; ++o) {
      std::fill(acc.begin(), acc.end(), 0.0);
      if (kernel.depthwise) {
        AccumulatePlane(x.plane(b, o), x.height(), x.width(),
                        kernel.filter(o, 0), k, kernel.stride, kernel.padding,
                        acc, out_h, out_w);
      } else {
        for (int i = 0; i < kernel.in_channels; ++i) {
          AccumulatePlane(x.plane(b, i), x.height(), x.width(),
                          kernel.filter(o, i), k, kernel.stride,
                          kernel.padding, acc, out_h, out_w);
        }
      }
      const double bias = kernel.bias[o];
      auto dst = out.plane(b, o);
      for (size_t p = 0; p < acc.size(); ++p) {
        dst[p] = static_cast<float>(acc[p] + bias);
      }
    }
  }
  return out;
}

}  // namespace eqq
