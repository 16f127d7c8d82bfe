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


#include "eqq/dfq/equalize.h"

#include <algorithm>
#include <cmath>

#include "eqq/common/error.h"

namespace eqq {

namespace {

double MaxAbsOf(std::span<const float> values) {
  double m = 0.0;
  for (float v : values) m = std::max(m, std::fabs(static_cast<double>(v)));
  return m;
}

void Scale(std::span<float> values, double factor) {
  for (float& v : values) v = static_cast<float>(v * factor);
}

}  // namespace

std::vector<double> ChannelRange(const ConvKernel& kernel, RangeSide side) {
  if (side == RangeSide::kOutgoing || kernel.depthwise) {
    std::vector<double> r(kernel.out_channels);
    for (int o = 0; o < kernel.out_channels; ++o) {
      r[o] = MaxAbsOf(kernel.output_slice(o));
    }
    return r;
  }
  std::vector<double> r(kernel.in_channels, 0.0);
  for (int o = 0; o < kernel.out_channels; ++o) {
    for (int i = 0; i < kernel.in_channels; ++i) {
      r[i] = std::max(r[i], MaxAbsOf(kernel.filter(o, i)));
    }
  }
  return r;
}

RangeReport EqualizePair(ConvKernel& first, ConvKernel& second) {
  Check(first.out_channels == second.in_channels, ErrorCode::kDimension,
        "equalization needs matching channels, got " +
            std::to_string(first.out_channels) + " outputs feeding " +
            std::to_string(second.in_channels) + " inputs");
  RangeReport rep;
  rep.r1 = ChannelRange(first, RangeSide::kOutgoing);
  rep.r2 = ChannelRange(second, RangeSide::kIncoming);
  const int channels = first.out_channels;
  rep.s.assign(channels, 1.0);
  for (int i = 0; i < channels; ++i) {
    const double r1 = rep.r1[i];
    const double r2 = rep.r2[i];
    if (r1 * r2 > 0.0) rep.s[i] = std::sqrt(r1 * r2) / r2;
  }
  for (int i = 0; i < channels; ++i) {
    const double s = rep.s[i];
    if (s == 1.0) continue;
    for (int j = 0; j < first.fan_in_channels(); ++j) {
      Scale(first.filter(i, j), 1.0 / s);
    }
    first.bias[i] = static_cast<float>(first.bias[i] / s);
    if (second.depthwise) {
      Scale(second.filter(i, 0), s);
    } else {
      for (int o = 0; o < second.out_channels; ++o) Scale(second.filter(o, i), s);
    }
  }
  return rep;
}

std::vector<LayerPair> FindLayerPairs(const Model& model) {
  std::vector<LayerPair> pairs;
  const auto& blocks = model.blocks;
  for (size_t b = 0; b < blocks.size(); ++b) {
    const auto& layers = blocks[b].layers;
    for (size_t l = 0; l + 1 < layers.size(); ++l) {
      if (layers[l].relu) pairs.push_back({layers[l].name, layers[l + 1].name});
    }
    if (b + 1 < blocks.size() && !layers.empty() && layers.back().relu &&
        !blocks[b].residual && !blocks[b + 1].residual &&
        !blocks[b + 1].layers.empty()) {
      pairs.push_back({layers.back().name, blocks[b + 1].layers.front().name});
    }
  }
  return pairs;
}

double BlockScaleSpread(const std::vector<double>& s, const FieldType& type) {
  double spread = 0.0;
  for (int b = 0; b < type.regular_mult(); ++b) {
    double lo = s[type.RegularChannel(b, 0)];
    double hi = lo;
    for (int r = 1; r < type.group_order(); ++r) {
      const double v = s[type.RegularChannel(b, r)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    spread = std::max(spread, hi / lo - 1.0);
  }
  return spread;
}

double RangeSpread(const std::vector<double>& ranges) {
  double lo = 0.0;
  double hi = 0.0;
  for (double r : ranges) {
    if (r <= 0.0) continue;
    lo = lo == 0.0 ? r : std::min(lo, r);
    hi = std::max(hi, r);
  }
  return lo > 0.0 ? hi / lo : 1.0;
}

namespace {

void CheckEqualizable(const Model& model) {
  Check(!model.has_unfolded_bn(), ErrorCode::kValidation,
        "batch norm must be folded before equalization");
  Check(!model.has_equivariant_layers(), ErrorCode::kValidation,
        "equalization needs plain kernels; export the model first");
}

}  // namespace

Model EqualizeNetwork(const Model& model, EqualizationReport* report) {
  CheckEqualizable(model);
  Model out = model;
  const std::vector<LayerPair> pairs = FindLayerPairs(out);
  std::vector<PairEqualization> info(pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) {
    const ConvLayer& first = out.Layer(pairs[p].first);
    info[p].pair = pairs[p];
    info[p].r1_before = ChannelRange(first.kernel(), RangeSide::kOutgoing);
    info[p].r2_before =
        ChannelRange(out.Layer(pairs[p].second).kernel(), RangeSide::kIncoming);
    info[p].scale.assign(first.out_type.channels(), 1.0);
  }

  int sweeps = 0;
  bool converged = pairs.empty();
  double max_step = 0.0;
  while (!converged && sweeps < kMaxEqualizationSweeps) {
    max_step = 0.0;
    for (size_t p = 0; p < pairs.size(); ++p) {
      ConvLayer& first = out.MutableLayer(pairs[p].first);
      ConvLayer& second = out.MutableLayer(pairs[p].second);
      const RangeReport rep = EqualizePair(first.kernel(), second.kernel());
      for (size_t i = 0; i < rep.s.size(); ++i) {
        const double s = rep.s[i];
        max_step = std::max(max_step, std::fabs(s - 1.0));
        info[p].scale[i] *= s;
        if (first.act_stats) {
          first.act_stats->shift[i] =
              static_cast<float>(first.act_stats->shift[i] / s);
          first.act_stats->scale[i] =
              static_cast<float>(first.act_stats->scale[i] / s);
        }
      }
    }
    ++sweeps;
    converged = max_step < kEqualizationTolerance;
  }

  if (report != nullptr) {
    for (size_t p = 0; p < pairs.size(); ++p) {
      const ConvLayer& first = out.Layer(pairs[p].first);
      info[p].r1_after = ChannelRange(first.kernel(), RangeSide::kOutgoing);
      info[p].r2_after = ChannelRange(out.Layer(pairs[p].second).kernel(),
                                      RangeSide::kIncoming);
      info[p].block_spread = BlockScaleSpread(info[p].scale, first.out_type);
    }
    report->sweeps = sweeps;
    report->converged = converged;
    report->last_max_step = max_step;
    report->pairs = std::move(info);
  }
  return out;
}

}  // namespace eqq
