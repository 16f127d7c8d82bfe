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


#include <cmath>
#include <numbers>

#include "eqq/common/error.h"
#include "eqq/common/rng.h"
#include "eqq/ffcore/equivariance.h"
#include "eqq/ffcore/field.h"
#include "eqq/ffcore/transform.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eqq {
namespace {

using ::testing::ElementsAre;
using ::testing::ElementsAreArray;
using testing::RandomField;
using testing::Values;

FeatureField Grid(std::vector<float> values, int size) {
  return FeatureField(FieldType::Trivial(1, 4), 1, size, size,
                      std::move(values));
}

TEST(FieldTypeTest, ChannelLayout) {
  const FieldType t = FieldType::Make(4, 2, 3);
  EXPECT_EQ(t.channels(), 14);
  EXPECT_EQ(t.units(), 5);
  EXPECT_EQ(t.RegularChannel(0, 0), 2);
  EXPECT_EQ(t.RegularChannel(2, 3), 13);
  EXPECT_EQ(t.UnitOfChannel(1), 1);
  EXPECT_EQ(t.UnitOfChannel(2), 2);
  EXPECT_EQ(t.UnitOfChannel(13), 4);
}

TEST(FieldTypeTest, RejectsNonPositiveGroupOrder) {
  EXPECT_THROW(FieldType::Make(0, 1, 0), Error);
}

TEST(GroupElementTest, ReducesAndComposes) {
  const GroupElement g = GroupElement::Make(-1, 4);
  EXPECT_EQ(g.r(), 3);
  EXPECT_EQ(g.Compose(GroupElement::Make(2, 4)).r(), 1);
  EXPECT_EQ(g.Inverse().r(), 1);
  EXPECT_DOUBLE_EQ(GroupElement::Make(1, 12).angle(), std::numbers::pi / 6);
}

TEST(GroupElementTest, QuarterTurns) {
  EXPECT_EQ(GroupElement::Make(3, 12).QuarterTurns(), 1);
  EXPECT_EQ(GroupElement::Make(9, 12).QuarterTurns(), 3);
  EXPECT_EQ(GroupElement::Make(1, 12).QuarterTurns(), -1);
  EXPECT_EQ(GroupElement::Make(1, 2).QuarterTurns(), 2);
  EXPECT_EQ(GroupElement::Make(0, 1).QuarterTurns(), 0);
}

TEST(FeatureFieldTest, RejectsWrongBufferLength) {
  EXPECT_THROW(FeatureField(FieldType::Trivial(1, 1), 1, 2, 2, {1, 2, 3}),
               Error);
}

TEST(TransformTest, QuarterTurnExample) {
  const FeatureField f = Grid({1, 2, 3, 4, 5, 6, 7, 8, 9}, 3);
  EXPECT_THAT(Values(RotateSpatialExact(f, 1)),
              ElementsAre(3, 6, 9, 2, 5, 8, 1, 4, 7));
}

TEST(TransformTest, FourQuarterTurnsIsIdentity) {
  const FeatureField f = RandomField(FieldType::Regular(2, 4), 2, 7, 7, 1);
  FeatureField g = f;
  for (int i = 0; i < 4; ++i) g = RotateSpatialExact(g, 1);
  EXPECT_THAT(Values(g), ElementsAreArray(Values(f)));
}

TEST(TransformTest, ExactRotationRequiresOddSquare) {
  const FeatureField f(FieldType::Trivial(1, 4), 1, 4, 4);
  EXPECT_THROW(RotateSpatialExact(f, 1), Error);
  EXPECT_NO_THROW(RotateSquareQuarterTurns(f, 1));
}

TEST(TransformTest, InterpolatedQuarterTurnMatchesExact) {
  const FeatureField f = RandomField(FieldType::Trivial(2, 4), 1, 9, 9, 2);
  const FeatureField a = RotateSpatialInterp(f, std::numbers::pi / 2);
  const FeatureField b = RotateSpatialExact(f, 1);
  EXPECT_LE(MaxAbsDiff(a.data(), b.data()), 1e-6);
}

TEST(TransformTest, ShiftChannelsExample) {
  FeatureField f(FieldType::Regular(1, 4), 1, 1, 1, {1, 2, 3, 4});
  EXPECT_THAT(Values(ShiftChannels(f, 1)), ElementsAre(4, 1, 2, 3));
}

TEST(TransformTest, ShiftLeavesTrivialChannels) {
  FeatureField f(FieldType::Make(4, 1, 1), 1, 1, 1, {9, 1, 2, 3, 4});
  EXPECT_THAT(Values(ShiftChannels(f, 2)), ElementsAre(9, 3, 4, 1, 2));
}

TEST(TransformTest, ActIsAHomomorphism) {
  const FeatureField f = RandomField(FieldType::Make(4, 1, 2), 1, 9, 9, 3);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const GroupElement ga = GroupElement::Make(a, 4);
      const GroupElement gb = GroupElement::Make(b, 4);
      const FeatureField lhs = Act(Act(f, gb), ga);
      const FeatureField rhs = Act(f, ga.Compose(gb));
      EXPECT_THAT(Values(lhs), ElementsAreArray(Values(rhs)));
    }
  }
}

TEST(TransformTest, MaskMatchesDistanceOracle) {
  for (int size : {1, 3, 5, 8, 15}) {
    const double c = 0.5 * (size - 1);
    for (int r = 0; r < size; ++r) {
      for (int col = 0; col < size; ++col) {
        const double d = std::hypot(r - c, col - c);
        EXPECT_EQ(InCircularMask(r, col, size), d <= 0.5 * size + 1e-12)
            << size << " " << r << " " << col;
      }
    }
  }
}

TEST(TransformTest, MaskIsIdempotentAndRotationInvariant) {
  const FeatureField f = RandomField(FieldType::Trivial(1, 4), 1, 11, 11, 4);
  const FeatureField m = CircularMask(f);
  EXPECT_THAT(Values(CircularMask(m)), ElementsAreArray(Values(m)));
  EXPECT_THAT(Values(CircularMask(RotateSpatialExact(f, 1))),
              ElementsAreArray(Values(RotateSpatialExact(m, 1))));
}

TEST(EquivarianceTest, IdentityMapHasZeroError) {
  const FeatureField f = RandomField(FieldType::Regular(1, 4), 1, 7, 7, 5);
  const FieldMap id = [](const FeatureField& x) { return x; };
  EXPECT_EQ(EquivarianceError(id, f, GroupElement::Make(1, 4)), 0.0);
}

TEST(EquivarianceTest, ShiftCommutesButChannelScalingDoesNot) {
  const FeatureField f = RandomField(FieldType::Regular(1, 4), 1, 7, 7, 6);
  const FieldMap shift = [](const FeatureField& x) { return ShiftChannels(x, 2); };
  EXPECT_EQ(EquivarianceError(shift, f, GroupElement::Make(1, 4)), 0.0);
  const FieldMap scale_first = [](const FeatureField& x) {
    FeatureField y = x;
    for (float& v : y.plane(0, 0)) v *= 2.0f;
    return y;
  };
  EXPECT_GT(EquivarianceError(scale_first, f, GroupElement::Make(1, 4)), 0.1);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Unit(), b.Unit());
}

TEST(RngTest, UnitInRange) {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.Unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(ErrorTest, CarriesCode) {
  try {
    Fail(ErrorCode::kPlanning, "boom");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPlanning);
    EXPECT_STREQ(e.what(), "boom");
    EXPECT_EQ(ErrorCodeName(e.code()), "planning");
  }
}

}  // namespace
}  // namespace eqq
