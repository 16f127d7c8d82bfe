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

#ifndef EQQ_LAYERS_EQUIV_CONV_H_
#define EQQ_LAYERS_EQUIV_CONV_H_

#include <string_view>
#include <vector>

#include "eqq/basis/steerable_basis.h"
#include "eqq/ffcore/field.h"
#include "eqq/layers/conv.h"

namespace eqq {

enum class EquivKind { kLifting, kGroup, kDepthwise, kPointwise };

std::string_view EquivKindName(EquivKind kind);

// Free parameters of an equivariant convolution. Coefficients are stored
// flat, row-major over CoeffShape():
//   lifting    [m_out][c_in][atoms]
//   group      [m_out][m_in][N][atoms]
//   depthwise  [m][atoms]
//   pointwise  [m_out][m_in][N]
class EquivConvParams {
 public:
  // Zero-initialised parameters. Throws kType when the field types do not fit
  // the kind (lifting: trivial -> regular; others: regular -> regular, with
  // equal multiplicities for depthwise and k == 1 for pointwise).
  static EquivConvParams Make(EquivKind kind, const FieldType& in_type,
                              const FieldType& out_type, int kernel_size,
                              int stride = 1, int padding = 0);

  EquivKind kind() const { return kind_; }
  const FieldType& in_type() const { return in_type_; }
  const FieldType& out_type() const { return out_type_; }
  int group_order() const { return in_type_.group_order(); }
  int kernel_size() const { return kernel_size_; }
  int stride() const { return stride_; }
  int padding() const { return padding_; }
  const SteerableBasis& basis() const { return basis_; }

  std::vector<int> CoeffShape() const;
  const std::vector<float>& coeffs() const { return coeffs_; }
  std::vector<float>& mutable_coeffs() { return coeffs_; }

  // Coefficient vector of one base filter, widened to double. For lifting the
  // index is (o, i, 0); for depthwise (b, 0, 0); for group (o, i, t).
  FilterCoeffs BaseFilter(int a, int b, int t) const;

 private:
  EquivKind kind_ = EquivKind::kPointwise;
  FieldType in_type_;
  FieldType out_type_;
  int kernel_size_ = 1;
  int stride_ = 1;
  int padding_ = 0;
  SteerableBasis basis_;
  std::vector<float> coeffs_;
};

// K[(o, r)][i] = expand(rotate(c[o][i], r)).
ConvKernel ExpandLifting(const EquivConvParams& p);
// K[(o, r)][(i, s)] = expand(rotate(psi[o][i][(s - r) mod N], r)).
ConvKernel ExpandGroup(const EquivConvParams& p);
// Channel (b, r) filter = expand(rotate(psi[b], r)); diagonal form.
ConvKernel ExpandDepthwise(const EquivConvParams& p);
// K[(o, r)][(i, s)] = w[o][i][(s - r) mod N]; block-circulant 1x1 mixing.
ConvKernel ExpandPointwise(const EquivConvParams& p);
// Dispatches on kind().
ConvKernel Expand(const EquivConvParams& p);

// Number of free scalars (coefficient count).
size_t FreeParameterCount(const EquivConvParams& p);

}  // namespace eqq

#endif  // EQQ_LAYERS_EQUIV_CONV_H_
