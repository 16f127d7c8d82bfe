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


#ifndef EQQ_IO_MODEL_IO_H_
#define EQQ_IO_MODEL_IO_H_

#include <string>
#include <string_view>

#include "eqq/io/weight_store.h"
#include "eqq/netbuild/arch.h"
#include "eqq/netbuild/model.h"

namespace eqq {

// Every parameter of `model` as named tensors, plus a "model.state" record
// of variant, field layout, folding and quantization settings.
WeightStore SaveWeights(const Model& model);

// Rebuilds a model for `arch` from a store. Throws kMissingTensor,
// kDimMismatch (shape differs from what the architecture expects) and
// kUnknownTensor (a tensor the architecture has no place for).
Model LoadWeights(const WeightStore& store, const ArchConfig& arch);

std::string SerializeModel(const Model& model);
Model DeserializeModel(std::string_view bytes, const ArchConfig& arch);

}  // namespace eqq

#endif  // EQQ_IO_MODEL_IO_H_
