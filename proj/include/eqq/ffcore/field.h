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

#ifndef EQQ_FFCORE_FIELD_H_
#define EQQ_FFCORE_FIELD_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace eqq {

// Group structure of a feature field's channel axis under the cyclic group
// C_N. Channels are laid out as `trivial_mult` single trivial channels
// followed by `regular_mult` blocks of N channels each.
class FieldType {
 public:
  FieldType() = default;

  // Throws kValidation when N < 1, a multiplicity is negative, or t + m == 0.
  static FieldType Make(int group_order, int trivial_mult, int regular_mult);
  static FieldType Trivial(int channels, int group_order) {
    return Make(group_order, channels, 0);
  }
  static FieldType Regular(int blocks, int group_order) {
    return Make(group_order, 0, blocks);
  }

  int group_order() const { return group_order_; }
  int trivial_mult() const { return trivial_mult_; }
  int regular_mult() const { return regular_mult_; }
  int channels() const { return trivial_mult_ + regular_mult_ * group_order_; }

  // One unit per trivial channel plus one per regular block.
  int units() const { return trivial_mult_ + regular_mult_; }
  int UnitOfChannel(int channel) const;

  bool is_trivial() const { return regular_mult_ == 0; }
  bool is_regular() const { return trivial_mult_ == 0; }

  // Channel index of offset `r` inside regular block `block`.
  int RegularChannel(int block, int r) const {
    return trivial_mult_ + block * group_order_ + r;
  }

  std::string ToString() const;

  friend bool operator==(const FieldType&, const FieldType&) = default;

 private:
  FieldType(int n, int t, int m)
      : group_order_(n), trivial_mult_(t), regular_mult_(m) {}

  int group_order_ = 1;
  int trivial_mult_ = 1;
  int regular_mult_ = 0;
};

// Rotation by r * 2pi / N.
class GroupElement {
 public:
  // `r` is reduced modulo N, so negative values name inverses.
  static GroupElement Make(int r, int group_order);
  static GroupElement Identity(int group_order) { return Make(0, group_order); }

  int r() const { return r_; }
  int group_order() const { return order_; }
  double angle() const;

  // Number of counter-clockwise quarter turns when the angle is a multiple of
  // pi/2, otherwise -1.
  int QuarterTurns() const;
  bool is_quarter_turn() const { return QuarterTurns() >= 0; }

  GroupElement Compose(const GroupElement& other) const;
  GroupElement Inverse() const { return Make(-r_, order_); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  GroupElement(int r, int n) : r_(r), order_(n) {}

  int r_ = 0;
  int order_ = 1;
};

// Dense NCHW float field tagged with its FieldType.
class FeatureField {
 public:
  FeatureField() = default;
  FeatureField(FieldType type, int batch, int height, int width);
  FeatureField(FieldType type, int batch, int height, int width,
               std::vector<float> data);

  const FieldType& type() const { return type_; }
  int batch() const { return batch_; }
  int channels() const { return type_.channels(); }
  int height() const { return height_; }
  int width() const { return width_; }
  size_t size() const { return data_.size(); }
  bool is_odd_square() const {
    return height_ == width_ && (height_ % 2) == 1;
  }

  size_t Offset(int b, int c, int y, int x) const {
    return ((static_cast<size_t>(b) * channels() + c) * height_ + y) *
               width_ + x;
  }
  float at(int b, int c, int y, int x) const { return data_[Offset(b, c, y, x)]; }
  float& at(int b, int c, int y, int x) { return data_[Offset(b, c, y, x)]; }

  std::span<const float> plane(int b, int c) const {
    return {data_.data() + Offset(b, c, 0, 0),
            static_cast<size_t>(height_) * width_};
  }
  std::span<float> plane(int b, int c) {
    return {data_.data() + Offset(b, c, 0, 0),
            static_cast<size_t>(height_) * width_};
  }

  std::span<const float> data() const { return data_; }
  std::span<float> mutable_data() { return data_; }

  // Same values under a different tag with the same channel count.
  FeatureField Retyped(const FieldType& type) const;

  // Single image `b` as a batch-of-one field.
  FeatureField Slice(int b) const;

 private:
  FieldType type_;
  int batch_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

// Concatenates batch-of-k fields of identical type and size.
FeatureField StackBatch(std::span<const FeatureField> parts);

// Infinity norm over all entries.
double MaxAbs(std::span<const float> values);
double MaxAbsDiff(std::span<const float> a, std::span<const float> b);

}  // namespace eqq

#endif  // EQQ_FFCORE_FIELD_H_
