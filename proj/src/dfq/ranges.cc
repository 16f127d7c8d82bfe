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


#include "eqq/dfq/ranges.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqq/common/error.h"

namespace eqq {

namespace {

Range LayerRange(const ConvLayer& layer) {
  Check(layer.act_stats.has_value(), ErrorCode::kCalibrationRequired,
        "layer '" + layer.name +
            "' has no batch norm statistics; calibrate with sample images");
  const ActivationStats& st = *layer.act_stats;
  Range total;
  for (size_t c = 0; c < st.shift.size(); ++c) {
    const double spread = kDataFreeSigmas * std::fabs(st.scale[c]);
    Range r{st.shift[c] - spread, st.shift[c] + spread};
    if (layer.relu) r = {std::max(0.0, r.lo), std::max(0.0, r.hi)};
    total = c == 0 ? r : total.Union(r);
  }
  return total.ZeroExtended();
}

}  // namespace

SiteRanges EstimateActivationRanges(const Model& model) {
  SiteRanges ranges;
  Range current{0.0, 1.0};
  ranges["input"] = current;
  for (const Block& block : model.blocks) {
    const Range block_in = current;
    for (const ConvLayer& layer : block.layers) {
      current = LayerRange(layer);
      ranges[layer.name] = current;
    }
    if (block.residual) {
      current = Range{current.lo + block_in.lo, current.hi + block_in.hi};
      ranges[block.name + ".add"] = current;
    }
  }
  ranges["pool"] = current;
  return ranges;
}

SiteRanges Calibrate(const Model& model, const FeatureField& images) {
  Check(images.batch() > 0, ErrorCode::kValidation,
        "calibration needs at least one image");
  Model plain = model;
  plain.quant.reset();
  SiteRanges ranges;
  ForwardOptions options;
  options.site_hook = [&](std::string_view site, const FeatureField& value) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (float v : value.data()) {
      lo = std::min(lo, static_cast<double>(v));
      hi = std::max(hi, static_cast<double>(v));
    }
    ranges[std::string(site)] = Range{lo, hi}.ZeroExtended();
  };
  Forward(plain, images, options);
  return ranges;
}

}  // namespace eqq
