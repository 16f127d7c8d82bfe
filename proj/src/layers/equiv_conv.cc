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

#include "eqq/layers/equiv_conv.h"

#include <numeric>

#include "eqq/common/error.h"

namespace eqq {
namespace {

void RequireKind(const EquivConvParams& p, EquivKind kind) {
  Check(p.kind() == kind, ErrorCode::kType,
        "expected a " + std::string(EquivKindName(kind)) + " layer, got " +
            std::string(EquivKindName(p.kind())));
}

void StoreFilter(std::span<float> dst, const std::vector<double>& src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<float>(src[i]);
}

}  // namespace

std::string_view EquivKindName(EquivKind kind) {
  switch (kind) {
    case EquivKind::kLifting: return "lifting";
    case EquivKind::kGroup: return "group";
    case EquivKind::kDepthwise: return "depthwise";
    case EquivKind::kPointwise: return "pointwise";
  }
  return "unknown";
}

EquivConvParams EquivConvParams::Make(EquivKind kind, const FieldType& in_type,
                                      const FieldType& out_type,
                                      int kernel_size, int stride,
                                      int padding) {
  Check(in_type.group_order() == out_type.group_order(), ErrorCode::kType,
        "equivariant layer needs one group on both sides");
  const std::string what = std::string(EquivKindName(kind)) + " layer " +
                           in_type.ToString() + " -> " + out_type.ToString();
  switch (kind) {
    case EquivKind::kLifting:
      Check(in_type.is_trivial() && out_type.is_regular(), ErrorCode::kType,
            what + ": lifting maps trivial fields to regular fields");
      break;
    case EquivKind::kGroup:
      Check(in_type.is_regular() && out_type.is_regular(), ErrorCode::kType,
            what + ": group conv maps regular fields to regular fields");
      break;
    case EquivKind::kDepthwise:
      Check(in_type.is_regular() && in_type == out_type, ErrorCode::kType,
            what + ": depthwise needs equal regular types");
      break;
    case EquivKind::kPointwise:
      Check(in_type.is_regular() && out_type.is_regular(), ErrorCode::kType,
            what + ": pointwise maps regular fields to regular fields");
      Check(kernel_size == 1, ErrorCode::kType, what + ": needs k == 1");
      break;
  }
  EquivConvParams p;
  p.kind_ = kind;
  p.in_type_ = in_type;
  p.out_type_ = out_type;
  p.kernel_size_ = kernel_size;
  p.stride_ = stride;
  p.padding_ = padding;
  p.basis_ = SteerableBasis::Build(kernel_size, in_type.group_order());
  const std::vector<int> shape = p.CoeffShape();
  p.coeffs_.assign(
      std::accumulate(shape.begin(), shape.end(), size_t{1},
                      [](size_t a, int b) { return a * b; }),
      0.0f);
  return p;
}

std::vector<int> EquivConvParams::CoeffShape() const {
  const int n = group_order();
  const int atoms = basis_.size();
  switch (kind_) {
    case EquivKind::kLifting:
      return {out_type_.regular_mult(), in_type_.channels(), atoms};
    case EquivKind::kGroup:
      return {out_type_.regular_mult(), in_type_.regular_mult(), n, atoms};
    case EquivKind::kDepthwise:
      return {in_type_.regular_mult(), atoms};
    case EquivKind::kPointwise:
      return {out_type_.regular_mult(), in_type_.regular_mult(), n};
  }
  return {};
}

FilterCoeffs EquivConvParams::BaseFilter(int a, int b, int t) const {
  const int atoms = basis_.size();
  size_t offset = 0;
  switch (kind_) {
    case EquivKind::kLifting:
      offset = (static_cast<size_t>(a) * in_type_.channels() + b) * atoms;
      break;
    case EquivKind::kGroup:
      offset = ((static_cast<size_t>(a) * in_type_.regular_mult() + b) *
                    group_order() + t) * atoms;
      break;
    case EquivKind::kDepthwise:
      offset = static_cast<size_t>(a) * atoms;
      break;
    case EquivKind::kPointwise:
      Fail(ErrorCode::kType, "pointwise layers have no steerable filters");
  }
  return FilterCoeffs(coeffs_.begin() + offset,
                      coeffs_.begin() + offset + atoms);
}

ConvKernel ExpandLifting(const EquivConvParams& p) {
  RequireKind(p, EquivKind::kLifting);
  const int n = p.group_order();
  const int m_out = p.out_type().regular_mult();
  const int c_in = p.in_type().channels();
  ConvKernel k = ConvKernel::Dense(p.out_type().channels(), c_in,
                                   p.kernel_size(), p.stride(), p.padding());
  for (int o = 0; o < m_out; ++o) {
    for (int i = 0; i < c_in; ++i) {
      const FilterCoeffs base = p.BaseFilter(o, i, 0);
      for (int r = 0; r < n; ++r) {
        const auto rotated =
            RotateCoeffs(base, GroupElement::Make(r, n), p.basis());
        StoreFilter(k.filter(p.out_type().RegularChannel(o, r), i),
                    ExpandFilter(rotated, p.basis()));
      }
    }
  }
  return k;
}

ConvKernel ExpandGroup(const EquivConvParams& p) {
  RequireKind(p, EquivKind::kGroup);
  const int n = p.group_order();
  const int m_out = p.out_type().regular_mult();
  const int m_in = p.in_type().regular_mult();
  ConvKernel k =
      ConvKernel::Dense(p.out_type().channels(), p.in_type().channels(),
                        p.kernel_size(), p.stride(), p.padding());
  for (int o = 0; o < m_out; ++o) {
    for (int i = 0; i < m_in; ++i) {
      for (int t = 0; t < n; ++t) {
        const FilterCoeffs base = p.BaseFilter(o, i, t);
        for (int r = 0; r < n; ++r) {
          const auto rotated =
              RotateCoeffs(base, GroupElement::Make(r, n), p.basis());
          // t = (s - r) mod N  =>  s = (t + r) mod N.
          const int s = (t + r) % n;
          StoreFilter(k.filter(p.out_type().RegularChannel(o, r),
                               p.in_type().RegularChannel(i, s)),
                      ExpandFilter(rotated, p.basis()));
        }
      }
    }
  }
  return k;
}

ConvKernel ExpandDepthwise(const EquivConvParams& p) {
  RequireKind(p, EquivKind::kDepthwise);
  const int n = p.group_order();
  ConvKernel k = ConvKernel::Depthwise(p.in_type().channels(), p.kernel_size(),
                                       p.stride(), p.padding());
  for (int b = 0; b < p.in_type().regular_mult(); ++b) {
    const FilterCoeffs base = p.BaseFilter(b, 0, 0);
    for (int r = 0; r < n; ++r) {
      const auto rotated =
          RotateCoeffs(base, GroupElement::Make(r, n), p.basis());
      StoreFilter(k.filter(p.in_type().RegularChannel(b, r), 0),
                  ExpandFilter(rotated, p.basis()));
    }
  }
  return k;
}

ConvKernel ExpandPointwise(const EquivConvParams& p) {
  RequireKind(p, EquivKind::kPointwise);
  const int n = p.group_order();
  const int m_out = p.out_type().regular_mult();
  const int m_in = p.in_type().regular_mult();
  ConvKernel k = ConvKernel::Dense(p.out_type().channels(),
                                   p.in_type().channels(), 1, p.stride(),
                                   p.padding());
  const auto& w = p.coeffs();
  for (int o = 0; o < m_out; ++o) {
    for (int r = 0; r < n; ++r) {
      for (int i = 0; i < m_in; ++i) {
        for (int s = 0; s < n; ++s) {
          const size_t t = (s - r + n) % n;
          k.filter(p.out_type().RegularChannel(o, r),
                   p.in_type().RegularChannel(i, s))[0] =
              w[(static_cast<size_t>(o) * m_in + i) * n + t];
        }
      }
    }
  }
  return k;
}

ConvKernel Expand(const EquivConvParams& p) {
  switch (p.kind()) {
    case EquivKind::kLifting: return ExpandLifting(p);
    case EquivKind::kGroup: return ExpandGroup(p);
    case EquivKind::kDepthwise: return ExpandDepthwise(p);
    case EquivKind::kPointwise: return ExpandPointwise(p);
  }
  Fail(ErrorCode::kType, "unknown equivariant layer kind");
}

size_t FreeParameterCount(const EquivConvParams& p) {
  return p.coeffs().size();
}

}  // namespace eqq
