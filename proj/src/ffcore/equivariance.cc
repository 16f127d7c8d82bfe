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

#include "eqq/ffcore/equivariance.h"

#include <algorithm>

#include "eqq/common/error.h"
#include "eqq/ffcore/transform.h"

namespace eqq {

double EquivarianceError(const FieldMap& phi, const FeatureField& f,
                         const GroupElement& g) {
  const FeatureField out = phi(f);
  const FeatureField out_of_moved = phi(Act(f, g));
  const GroupElement g_out =
      GroupElement::Make(g.r(), out.type().group_order());
  Check(g_out.group_order() == g.group_order(), ErrorCode::kType,
        "output field type belongs to a different group");
  const FeatureField moved_out = Act(out, g_out);
  Check(moved_out.size() == out_of_moved.size(), ErrorCode::kDimension,
        "map changed output shape under the group action");
  const double diff = MaxAbsDiff(out_of_moved.data(), moved_out.data());
  return diff / std::max(MaxAbs(out.data()), kEquivarianceEpsilon);
}

}  // namespace eqq
