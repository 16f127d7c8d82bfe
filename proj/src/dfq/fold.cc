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


#include "eqq/dfq/fold.h"

#include "eqq/common/error.h"

namespace eqq {

Model FoldBatchNorm(const Model& model) {
  Model out = model;
  for (ConvLayer* layer : out.MutableLayers()) {
    Check(!layer->is_equivariant(), ErrorCode::kValidation,
          "layer '" + layer->name +
              "' is coefficient-parameterised; export the model before folding");
    if (!layer->bn) continue;
    const BNStats per_channel = layer->bn->Replicated();
    layer->kernel() = BatchNormFold(layer->kernel(), per_channel);
    layer->act_stats = ActivationStats{per_channel.beta, per_channel.gamma};
    layer->bn.reset();
  }
  return out;
}

}  // namespace eqq
