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

#ifndef EQQ_LAYERS_OPS_H_
#define EQQ_LAYERS_OPS_H_

#include <vector>

#include "eqq/ffcore/field.h"

namespace eqq {

FeatureField Relu(const FeatureField& x);

// Elementwise sum of two fields of identical type and shape.
FeatureField Add(const FeatureField& a, const FeatureField& b);

// Averages every regular block into one trivial channel; trivial channels
// pass through. The result is all-trivial over the same group.
FeatureField GroupPool(const FeatureField& x);

// Mean over in-mask pixels, per image and channel. The result is a 1x1 field
// of the same type.
FeatureField GlobalPoolMasked(const FeatureField& x);

// Fully connected head: logits = weight * features + bias.
struct Linear {
  int in_features = 0;
  int out_features = 0;
  std::vector<float> weight;  // [out][in]
  std::vector<float> bias;    // [out]

  static Linear Make(int in_features, int out_features);
};

// Applies `linear` to each image of a 1x1 field; returns [batch][out] values.
std::vector<float> ApplyLinear(const Linear& linear, const FeatureField& x);

}  // namespace eqq

#endif  // EQQ_LAYERS_OPS_H_
