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

#include "eqq/ffcore/field.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eqq/common/error.h"

namespace eqq {

FieldType FieldType::Make(int group_order, int trivial_mult,
                          int regular_mult) {
  Check(group_order >= 1, ErrorCode::kValidation,
        "group order must be >= 1, got " + std::to_string(group_order));
  Check(trivial_mult >= 0 && regular_mult >= 0, ErrorCode::kValidation,
        "field multiplicities must be non-negative");
  Check(trivial_mult + regular_mult >= 1, ErrorCode::kValidation,
        "field type needs at least one field");
  return FieldType(group_order, trivial_mult, regular_mult);
}

int FieldType::UnitOfChannel(int channel) const {
  if (channel < trivial_mult_) return channel;
  return trivial_mult_ + (channel - trivial_mult_) / group_order_;
}

std::string FieldType::ToString() const {
  return "C" + std::to_string(group_order_) + "[" +
         std::to_string(trivial_mult_) + " trivial + " +
         std::to_string(regular_mult_) + " regular]";
}

GroupElement GroupElement::Make(int r, int group_order) {
  Check(group_order >= 1, ErrorCode::kValidation, "group order must be >= 1");
  int reduced = r % group_order;
  if (reduced < 0) reduced += group_order;
  return GroupElement(reduced, group_order);
}

double GroupElement::angle() const {
  return 2.0 * std::numbers::pi * r_ / order_;
}

int GroupElement::QuarterTurns() const {
  if ((4 * r_) % order_ != 0) return -1;
  return (4 * r_) / order_;
}

GroupElement GroupElement::Compose(const GroupElement& other) const {
  Check(order_ == other.order_, ErrorCode::kType,
        "cannot compose elements of different groups");
  return Make(r_ + other.r_, order_);
}

FeatureField::FeatureField(FieldType type, int batch, int height, int width)
    : type_(type), batch_(batch), height_(height), width_(width) {
  Check(batch >= 1 && height >= 1 && width >= 1, ErrorCode::kDimension,
        "feature field dimensions must be positive");
  data_.assign(static_cast<size_t>(batch) * type.channels() * height * width,
               0.0f);
}

FeatureField::FeatureField(FieldType type, int batch, int height, int width,
                           std::vector<float> data)
    : type_(type),
      batch_(batch),
      height_(height),
      width_(width),
      data_(std::move(data)) {
  Check(batch >= 1 && height >= 1 && width >= 1, ErrorCode::kDimension,
        "feature field dimensions must be positive");
  Check(data_.size() ==
            static_cast<size_t>(batch) * type.channels() * height * width,
        ErrorCode::kDimension, "feature field data length mismatch");
}

FeatureField FeatureField::Retyped(const FieldType& type) const {
  Check(type.channels() == channels(), ErrorCode::kType,
        "retyping requires equal channel counts: " + type.ToString() +
            " vs " + type_.ToString());
  FeatureField out = *this;
  out.type_ = type;
  return out;
}

FeatureField FeatureField::Slice(int b) const {
  Check(b >= 0 && b < batch_, ErrorCode::kDimension, "batch index out of range");
  const size_t stride = static_cast<size_t>(channels()) * height_ * width_;
  std::vector<float> values(data_.begin() + b * stride,
                            data_.begin() + (b + 1) * stride);
  return FeatureField(type_, 1, height_, width_, std::move(values));
}

FeatureField StackBatch(std::span<const FeatureField> parts) {
  Check(!parts.empty(), ErrorCode::kDimension, "cannot stack an empty batch");
  const FeatureField& first = parts.front();
  std::vector<float> values;
  int batch = 0;
  for (const FeatureField& p : parts) {
    Check(p.type() == first.type() && p.height() == first.height() &&
              p.width() == first.width(),
          ErrorCode::kDimension, "stacked fields must share type and size");
    values.insert(values.end(), p.data().begin(), p.data().end());
    batch += p.batch();
  }
  return FeatureField(first.type(), batch, first.height(), first.width(),
                      std::move(values));
}

double MaxAbs(std::span<const float> values) {
  double m = 0.0;
  for (float v : values) m = std::max(m, std::fabs(static_cast<double>(v)));
  return m;
}

double MaxAbsDiff(std::span<const float> a, std::span<const float> b) {
  Check(a.size() == b.size(), ErrorCode::kDimension, "length mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(static_cast<double>(a[i]) - b[i]));
  }
  return m;
}

}  // namespace eqq
