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
#include "eqq/ffcore/transform.h"
#include "eqq/netbuild/arch.h"
#include "eqq/netbuild/audit.h"
#include "eqq/netbuild/grid_plan.h"
#include "eqq/netbuild/model.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eqq {
namespace {

using ::testing::ElementsAreArray;
using ::testing::HasSubstr;
using testing::RandomField;
using testing::ToyArch;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

ArchConfig FourStrideTwoStages() {
  ArchConfig a = ToyArch(4, 95);
  a.stem = {3, 2, 8};
  a.blocks = {{1, 8, 2, 1}, {1, 8, 2, 1}, {1, 8, 2, 1}};
  return a;
}

TEST(ArchTest, PresetsLoad) {
  EXPECT_THAT(PresetNames(), ::testing::Contains("pcam95"));
  const ArchConfig m = PresetArch("mobilenetv2");
  EXPECT_EQ(m.group_order, 12);
  EXPECT_EQ(m.input_size, 95);
  EXPECT_EQ(m.blocks.size(), 7u);
  const ArchConfig p = PresetArch("pcam95");
  EXPECT_EQ(p.stem.stride, 1);
  EXPECT_EQ(p.blocks[5].stride, 1);
  EXPECT_EQ(CodeOf([] { PresetArch("resnet"); }), ErrorCode::kValidation);
}

TEST(ArchTest, JsonRoundTrip) {
  const ArchConfig a = PresetArch("toy");
  const ArchConfig b = ArchFromJson(ArchToJson(a));
  EXPECT_EQ(ArchToJson(a), ArchToJson(b));
}

TEST(ArchTest, RejectsEvenKernel) {
  ArchConfig a = PresetArch("toy");
  a.stem.kernel_size = 4;
  EXPECT_EQ(CodeOf([&] { a.Validate(); }), ErrorCode::kValidation);
}

TEST(ArchTest, LayerNames) {
  std::vector<std::string> names;
  for (const auto& b : EnumerateLayers(PresetArch("toy"))) {
    for (const auto& l : b.layers) names.push_back(l.name);
  }
  EXPECT_THAT(names, ElementsAreArray({"stem", "block0.dw", "block0.project",
                                       "block1.expand", "block1.dw",
                                       "block1.project", "block2.expand",
                                       "block2.dw", "block2.project", "head"}));
}

TEST(GridPlanTest, StrideTwoOnNinetyFive) {
  EXPECT_EQ(PlanPadding("x", 95, 3, 2), 0);
  EXPECT_EQ(PlanPadding("x", 95, 3, 1), 1);
  EXPECT_EQ(PlanPadding("x", 95, 5, 1), 2);
}

TEST(GridPlanTest, ChainOfStrideTwoStages) {
  const GridPlan plan = PlanGrid(95, FourStrideTwoStages());
  std::vector<int> sizes = {plan.input_size};
  for (const PlannedLayer& l : plan.layers) {
    if (l.stride == 2) {
      EXPECT_EQ(l.padding, 0) << l.name;
      sizes.push_back(l.output_size);
    }
  }
  EXPECT_THAT(sizes, ElementsAreArray({95, 47, 23, 11, 5}));
}

TEST(GridPlanTest, AllSizesOddAndCentered) {
  for (const std::string& preset : PresetNames()) {
    const ArchConfig a = PresetArch(preset);
    const GridPlan plan = PlanGrid(a.input_size, a);
    for (const PlannedLayer& l : plan.layers) {
      EXPECT_EQ(l.output_size % 2, 1) << preset << " " << l.name;
      const int first = (l.kernel_size - 1) / 2 - l.padding;
      const int last = first + l.stride * (l.output_size - 1);
      EXPECT_EQ(first + last, l.input_size - 1) << preset << " " << l.name;
    }
  }
}

TEST(GridPlanTest, EvenInputRejected) {
  EXPECT_EQ(CodeOf([] { PlanGrid(96, PresetArch("pcam95")); }),
            ErrorCode::kValidation);
}

TEST(GridPlanTest, PlanningFailureNamesLayer) {
  try {
    PlanPadding("block3.dw", 11, 3, 3);
    FAIL() << "expected a planning error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPlanning);
    EXPECT_THAT(e.what(), HasSubstr("block3.dw"));
  }
}

TEST(ModelTest, SameSeedSameModel) {
  const Model a = BuildModel(ToyArch(4), Variant::kEquivariant, 5);
  const Model b = BuildModel(ToyArch(4), Variant::kEquivariant, 5);
  const auto la = a.Layers();
  const auto lb = b.Layers();
  ASSERT_EQ(la.size(), lb.size());
  for (size_t i = 0; i < la.size(); ++i) {
    EXPECT_EQ(la[i]->equiv().coeffs(), lb[i]->equiv().coeffs());
    EXPECT_EQ(la[i]->bn->var, lb[i]->bn->var);
  }
  EXPECT_EQ(a.classifier.weight, b.classifier.weight);
}

TEST(ModelTest, TrivialGroupMatchesConventionalShapes) {
  const Model e = BuildModel(ToyArch(1), Variant::kEquivariant, 1);
  const Model c = BuildModel(ToyArch(1), Variant::kConventional, 1);
  const auto le = e.Layers();
  const auto lc = c.Layers();
  ASSERT_EQ(le.size(), lc.size());
  for (size_t i = 0; i < le.size(); ++i) {
    const ConvKernel ke = le[i]->ExpandedKernel();
    const ConvKernel kc = lc[i]->ExpandedKernel();
    EXPECT_EQ(ke.out_channels, kc.out_channels) << le[i]->name;
    EXPECT_EQ(ke.in_channels, kc.in_channels) << le[i]->name;
    EXPECT_EQ(ke.weights.size(), kc.weights.size()) << le[i]->name;
    EXPECT_EQ(ke.depthwise, kc.depthwise) << le[i]->name;
  }
}

TEST(ModelTest, BlockWidthsRoundUp) {
  ArchConfig a = ToyArch(12);
  const Model m = BuildModel(a, Variant::kEquivariant, 1);
  EXPECT_EQ(m.Layer("stem").out_type, FieldType::Regular(1, 12));
  EXPECT_EQ(m.Layer("block1.expand").out_type, FieldType::Regular(2, 12));
  EXPECT_EQ(m.Layer("block1.project").out_type, FieldType::Regular(2, 12));
}

TEST(ModelTest, ResidualsFollowStrideAndType) {
  const Model m = BuildModel(ToyArch(4), Variant::kEquivariant, 1);
  EXPECT_FALSE(m.blocks[0].residual);  // stem
  EXPECT_TRUE(m.blocks[1].residual);
  EXPECT_FALSE(m.blocks[2].residual);  // stride 2
  EXPECT_TRUE(m.blocks[3].residual);
  EXPECT_FALSE(m.blocks[4].residual);  // head
}

TEST(ModelTest, ConventionalHasMoreParameters) {
  for (int n : {2, 4, 12}) {
    const ArchConfig a = ToyArch(n);
    EXPECT_GT(FreeParameterCount(BuildModel(a, Variant::kConventional, 1)),
              FreeParameterCount(BuildModel(a, Variant::kEquivariant, 1)))
        << "N=" << n;
  }
}

TEST(ForwardTest, ZeroImageGivesClassifierBias) {
  const Model m = BuildModel(ToyArch(4), Variant::kEquivariant, 2);
  const FeatureField x(m.input_type, 1, 15, 15);
  const Logits l = Forward(m, x);
  EXPECT_THAT(l.values, ElementsAreArray(m.classifier.bias));
}

TEST(ForwardTest, BatchMatchesSingles) {
  const Model m = BuildModel(ToyArch(4), Variant::kEquivariant, 3);
  const FeatureField x = RandomField(m.input_type, 3, 15, 15, 4, 0.0, 1.0);
  const Logits all = Forward(m, x);
  for (int b = 0; b < 3; ++b) {
    const Logits one = Forward(m, x.Slice(b));
    for (int c = 0; c < all.classes; ++c) {
      EXPECT_NEAR(one.values[c], all.row(b)[c], 1e-6);
    }
  }
}

TEST(ForwardTest, SizeMismatchIsDimensionError) {
  const Model m = BuildModel(ToyArch(4), Variant::kEquivariant, 3);
  const FeatureField x(m.input_type, 1, 13, 13);
  EXPECT_EQ(CodeOf([&] { Forward(m, x); }), ErrorCode::kDimension);
}

TEST(ForwardTest, QuarterTurnInvariance) {
  for (int n : {2, 4, 12}) {
    const Model m = BuildModel(ToyArch(n), Variant::kEquivariant, 10 + n);
    const FeatureField x = RandomField(m.input_type, 2, 15, 15, 5, 0.0, 1.0);
    const Logits base = Forward(m, x);
    for (int q = 1; q < 4; ++q) {
      if (n == 2 && q != 2) continue;
      const Logits rot = Forward(m, RotateSpatialExact(x, q));
      EXPECT_LE(RelativeError(rot.values, base.values), 1e-4)
          << "N=" << n << " q=" << q;
    }
  }
}

TEST(ForwardTest, ConventionalVariantIsNotInvariant) {
  const Model m = BuildModel(ToyArch(4), Variant::kConventional, 4);
  const FeatureField x = RandomField(m.input_type, 2, 15, 15, 6, 0.0, 1.0);
  const Logits base = Forward(m, x);
  const Logits rot = Forward(m, RotateSpatialExact(x, 1));
  EXPECT_GT(RelativeError(rot.values, base.values), 1e-4);
}

TEST(ExportTest, MatchesSourceAndStaysInvariant) {
  const Model m = BuildModel(ToyArch(4), Variant::kEquivariant, 7);
  const ExportResult r = ExportConventional(m);
  EXPECT_FALSE(r.noop);
  EXPECT_FALSE(r.model.has_equivariant_layers());
  EXPECT_EQ(r.model.variant, Variant::kConventional);
  for (int i = 0; i < 10; ++i) {
    const FeatureField x = RandomField(m.input_type, 1, 15, 15, 50 + i, 0.0, 1.0);
    const Logits a = Forward(m, x);
    const Logits b = Forward(r.model, x);
    EXPECT_LE(RelativeError(b.values, a.values), 1e-5);
    const Logits c = Forward(r.model, RotateSpatialExact(x, 1));
    EXPECT_LE(RelativeError(c.values, b.values), 1e-4);
  }
}

TEST(ExportTest, SecondExportIsNoop) {
  const Model m = BuildModel(ToyArch(4), Variant::kEquivariant, 8);
  const ExportResult once = ExportConventional(m);
  const ExportResult twice = ExportConventional(once.model);
  EXPECT_TRUE(twice.noop);
  EXPECT_FALSE(twice.warning.empty());
  const auto a = once.model.Layers();
  const auto b = twice.model.Layers();
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i]->kernel().weights, b[i]->kernel().weights);
  }
}

TEST(AuditTest, QuarterTurnsPass) {
  const Model m = BuildModel(ToyArch(4), Variant::kEquivariant, 9);
  const AuditResult r = RunAudit(m, {0, 90, 180, 270}, 1);
  EXPECT_TRUE(r.passed());
  for (const AuditRow& row : r.rows) {
    EXPECT_LE(row.error, 1e-5) << row.degrees << " " << row.scope;
    if (row.degrees == 0) EXPECT_EQ(row.error, 0.0);
  }
}

TEST(AuditTest, ConventionalModelFailsAndNamesLayer) {
  const Model m = BuildModel(ToyArch(4), Variant::kConventional, 9);
  const AuditResult r = RunAudit(m, {90}, 1);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_failure()->degrees, 90);
}

TEST(AuditTest, RejectsAnglesOutsideTheGroup) {
  EXPECT_EQ(CodeOf([] { ElementForDegrees(45, 4); }), ErrorCode::kValidation);
  EXPECT_EQ(ElementForDegrees(30, 12).r(), 1);
  EXPECT_EQ(ElementForDegrees(-90, 4).r(), 3);
}

TEST(AuditTest, SmoothProbeRotatesWithAngle) {
  const FieldType t = FieldType::Trivial(1, 4);
  const FeatureField a = SmoothProbeImages(t, 1, 21, 3, 0.0);
  const FeatureField b = SmoothProbeImages(t, 1, 21, 3, std::numbers::pi / 2);
  EXPECT_LE(MaxAbsDiff(RotateSpatialExact(a, 1).data(), b.data()), 1e-5);
  for (float v : a.data()) {
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 1.0f);
  }
}

}  // namespace
}  // namespace eqq
