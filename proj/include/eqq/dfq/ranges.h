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


#ifndef EQQ_DFQ_RANGES_H_
#define EQQ_DFQ_RANGES_H_

#include <map>
#include <string>

#include "eqq/dfq/quant_params.h"
#include "eqq/ffcore/field.h"
#include "eqq/netbuild/model.h"

namespace eqq {

using SiteRanges = std::map<std::string, Range>;

inline constexpr double kDataFreeSigmas = 6.0;

// Per-site ranges from retained activation statistics: beta +- 6 |gamma| per
// channel (clipped at 0 after ReLU), united over channels and zero-extended.
// The input is taken as [0, 1]; residual sums add intervals. Throws
// kCalibrationRequired naming the first layer without statistics.
SiteRanges EstimateActivationRanges(const Model& model);

// Observed min / max per site over `images`, zero-extended. Throws
// kValidation on an empty batch.
SiteRanges Calibrate(const Model& model, const FeatureField& images);

}  // namespace eqq

#endif  // EQQ_DFQ_RANGES_H_
