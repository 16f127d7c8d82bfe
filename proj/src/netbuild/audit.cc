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


#include "eqq/netbuild/audit.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eqq/common/error.h"
#include "eqq/common/rng.h"
#include "eqq/ffcore/equivariance.h"
#include "eqq/ffcore/transform.h"

namespace eqq {

namespace {

constexpr int kBlobs = 6;

struct Blob {
  double x, y, sigma;
  std::vector<double> amplitude;
};

double Taper(double r, double radius) {
  const double inner = 0.6 * radius;
  if (r <= inner) return 1.0;
  if (r >= radius) return 0.0;
  const double t = (r - inner) / (radius - inner);
  const double c = std::cos(0.5 * std::numbers::pi * t);
  return c * c;
}

}  // namespace

FeatureField SmoothProbeImages(const FieldType& type, int batch, int size,
                               uint64_t seed, double angle) {
  FeatureField out(type, batch, size, size);
  const double center = 0.5 * (size - 1);
  const double radius = 0.5 * size;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Rng rng(seed);
  for (int b = 0; b < batch; ++b) {
    std::vector<Blob> blobs(kBlobs);
    for (Blob& blob : blobs) {
      const double r = 0.5 * radius * std::sqrt(rng.Unit());
      const double phi = 2.0 * std::numbers::pi * rng.Unit();
      blob.x = r * std::cos(phi);
      blob.y = r * std::sin(phi);
      blob.sigma = size * rng.Uniform(0.06, 0.14);
      blob.amplitude.resize(type.channels());
      for (double& a : blob.amplitude) a = rng.Uniform(0.0, 0.4);
    }
    for (int row = 0; row < size; ++row) {
      for (int col = 0; col < size; ++col) {
        // y-up coordinates, pulled back through the rotation.
        const double x = col - center;
        const double y = center - row;
        const double u = c * x + s * y;
        const double v = -s * x + c * y;
        const double w = Taper(std::hypot(x, y), radius);
        for (int ch = 0; ch < type.channels(); ++ch) {
          double value = 0.0;
          for (const Blob& blob : blobs) {
            const double dx = u - blob.x;
            const double dy = v - blob.y;
            value += blob.amplitude[ch] *
                     std::exp(-(dx * dx + dy * dy) /
                              (2.0 * blob.sigma * blob.sigma));
          }
          out.at(b, ch, row, col) =
              static_cast<float>(std::min(1.0, value) * w);
        }
      }
    }
  }
  return out;
}

GroupElement ElementForDegrees(double degrees, int group_order) {
  const double steps = degrees * group_order / 360.0;
  const double rounded = std::round(steps);
  Check(std::fabs(steps - rounded) < 1e-9, ErrorCode::kValidation,
        "angle " + std::to_string(degrees) + " is not a multiple of 360/" +
            std::to_string(group_order));
  return GroupElement::Make(static_cast<int>(rounded), group_order);
}

bool AuditResult::passed() const { return first_failure() == nullptr; }

const AuditRow* AuditResult::first_failure() const {
  for (const AuditRow& row : rows) {
    if (row.quarter_turn && !(row.error <= kQuarterTurnTolerance)) return &row;
  }
  return nullptr;
}

AuditResult RunAudit(const Model& model, const std::vector<double>& degrees,
                     uint64_t seed, int probe_batch) {
  const int size = model.plan.input_size;
  const int n = model.arch.group_order;
  AuditResult result;
  for (double deg : degrees) {
    const GroupElement g = ElementForDegrees(deg, n);
    const bool quarter = g.is_quarter_turn();
    FeatureField x(model.input_type, probe_batch, size, size);
    FeatureField gx = x;
    if (quarter) {
      Rng rng(seed);
      for (float& v : x.mutable_data()) v = static_cast<float>(rng.Unit());
      // The model masks its input; rotating the masked image keeps both
      // sides on the same support.
      gx = Act(CircularMask(x), g);
    } else {
      x = SmoothProbeImages(model.input_type, probe_batch, size, seed, 0.0);
      gx = SmoothProbeImages(model.input_type, probe_batch, size, seed,
                             g.angle());
    }

    std::vector<std::pair<const ConvLayer*, FeatureField>> inputs;
    ForwardOptions options;
    options.layer_input_hook = [&](const ConvLayer& layer,
                                   const FeatureField& in) {
      inputs.emplace_back(&layer, in);
    };
    const Logits base = Forward(model, x, options);
    const Logits turned = Forward(model, gx);
    result.rows.push_back(
        {deg, quarter, "logits", RelativeError(turned.values, base.values)});
    for (const auto& [layer, in] : inputs) {
      const ConvLayer* l = layer;
      const FieldMap phi = [l](const FeatureField& f) {
        return ApplyLayer(*l, f);
      };
      result.rows.push_back(
          {deg, quarter, layer->name, EquivarianceError(phi, in, g)});
    }
  }
  return result;
}

}  // namespace eqq
