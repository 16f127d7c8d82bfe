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


#ifndef EQQ_DFQ_FOLD_H_
#define EQQ_DFQ_FOLD_H_

#include "eqq/netbuild/model.h"

namespace eqq {

// Folds every batch norm into its convolution and keeps the post-BN shift and
// scale per output channel as activation statistics. Throws kValidation if
// the model still has coefficient-parameterised layers.
Model FoldBatchNorm(const Model& model);

}  // namespace eqq

#endif  // EQQ_DFQ_FOLD_H_
