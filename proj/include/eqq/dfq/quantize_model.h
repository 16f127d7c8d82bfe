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


#ifndef EQQ_DFQ_QUANTIZE_MODEL_H_
#define EQQ_DFQ_QUANTIZE_MODEL_H_

#include "eqq/dfq/ranges.h"
#include "eqq/netbuild/model.h"

namespace eqq {

// Fake-quantizes every weight tensor (symmetric, per tensor) and attaches
// activation ranges so Forward quantizes each site. Biases stay in float.
// Throws kValidation on unfolded or coefficient-parameterised layers,
// kCalibrationRequired on a missing site range and kDegenerateRange listing
// every tensor whose range is a single point.
Model QuantizeModel(const Model& model, int weight_bits, int act_bits,
                    const SiteRanges& ranges);

}  // namespace eqq

#endif  // EQQ_DFQ_QUANTIZE_MODEL_H_
