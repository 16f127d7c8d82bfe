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


#ifndef EQQ_NETBUILD_AUDIT_H_
#define EQQ_NETBUILD_AUDIT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "eqq/ffcore/field.h"
#include "eqq/netbuild/model.h"

namespace eqq {

inline constexpr double kQuarterTurnTolerance = 1e-4;

// Smooth test images: a few Gaussian blobs under a radial taper that reaches
// zero at the inscribed circle, rendered analytically after a counter-
// clockwise rotation by `angle` radians. Values lie in [0, 1].
FeatureField SmoothProbeImages(const FieldType& type, int batch, int size,
                               uint64_t seed, double angle);

// Group element for a rotation by `degrees`. Throws kValidation unless the
// angle is a multiple of 360 / N.
GroupElement ElementForDegrees(double degrees, int group_order);

struct AuditRow {
  double degrees = 0.0;
  bool quarter_turn = false;
  std::string scope;  // "logits" or a layer name
  double error = 0.0;
};

struct AuditResult {
  std::vector<AuditRow> rows;

  // True iff every quarter-turn row is within kQuarterTurnTolerance.
  bool passed() const;
  // First quarter-turn row above the tolerance, or nullptr.
  const AuditRow* first_failure() const;
};

// Logit invariance and per-layer equivariance error for each angle. Quarter
// turns use seeded noise images and exact grid rotation; other angles use
// smooth probe images rendered at the rotated pose and interpolated actions
// on intermediate fields.
AuditResult RunAudit(const Model& model, const std::vector<double>& degrees,
                     uint64_t seed, int probe_batch = 2);

}  // namespace eqq

#endif  // EQQ_NETBUILD_AUDIT_H_
