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

#ifndef EQQ_FFCORE_EQUIVARIANCE_H_
#define EQQ_FFCORE_EQUIVARIANCE_H_

#include <functional>

#include "eqq/ffcore/field.h"

namespace eqq {

using FieldMap = std::function<FeatureField(const FeatureField&)>;

inline constexpr double kEquivarianceEpsilon = 1e-12;

// ||phi(g.f) - g.phi(f)||_inf / max(||phi(f)||_inf, eps). The output action
// uses the FieldType that `phi` attaches to its result.
double EquivarianceError(const FieldMap& phi, const FeatureField& f,
                         const GroupElement& g);

}  // namespace eqq

#endif  // EQQ_FFCORE_EQUIVARIANCE_H_
