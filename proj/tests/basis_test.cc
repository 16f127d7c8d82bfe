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

#include "eqq/basis/steerable_basis.h"
#include "eqq/common/error.h"
#include "eqq/common/rng.h"
#include "eqq/ffcore/field.h"
#include "eqq/ffcore/transform.h"
#include "gtest/gtest.h"

namespace eqq {
namespace {

// Counts (ring, frequency, phase) triples by brute enumeration.
int AtomCountOracle(int k, int n) {
  int count = 0;
  for (int ring = 0; ring <= (k - 1) / 2; ++ring) {
    for (int mu = 0; mu <= k; ++mu) {
      const bool keep = mu <= ring && (n == 1 || 2 * mu < n);
      if (keep) count += mu == 0 ? 1 : 2;
    }
  }
  return count;
}

std::vector<double> RandomCoeffs(int size, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> c(size);
  for (double& v : c) v = rng.Uniform(-1.0, 1.0);
  return c;
}

FeatureField AsField(const std::vector<double>& kernel, int k) {
  std::vector<float> v(kernel.begin(), kernel.end());
  return FeatureField(FieldType::Trivial(1, 1), 1, k, k, std::move(v));
}

TEST(SteerableBasisTest, AtomCountsMatchEnumeration) {
  EXPECT_EQ(SteerableBasis::Build(3, 4).size(), 4);
  EXPECT_EQ(SteerableBasis::Build(5, 12).size(), 9);
  EXPECT_EQ(SteerableBasis::Build(5, 4).size(), 7);
  for (int k : {1, 3, 5, 7}) {
    for (int n : {1, 2, 3, 4, 6, 8, 12}) {
      EXPECT_EQ(SteerableBasis::Build(k, n).size(), AtomCountOracle(k, n))
          << "k=" << k << " N=" << n;
    }
  }
}

TEST(SteerableBasisTest, RejectsEvenKernels) {
  EXPECT_THROW(SteerableBasis::Build(4, 4), Error);
  EXPECT_THROW(SteerableBasis::Build(0, 4), Error);
}

TEST(SteerableBasisTest, AtomsHaveUnitNorm) {
  const SteerableBasis basis = SteerableBasis::Build(5, 12);
  for (int a = 0; a < basis.size(); ++a) {
    double sq = 0.0;
    for (double v : basis.samples(a)) sq += v * v;
    EXPECT_NEAR(sq, 1.0, 1e-12);
  }
}

TEST(SteerableBasisTest, FrequencyCutoff) {
  EXPECT_TRUE(KeepsFrequency(1.0, 1, 4));
  EXPECT_FALSE(KeepsFrequency(2.0, 2, 4));
  EXPECT_TRUE(KeepsFrequency(2.0, 2, 12));
  EXPECT_FALSE(KeepsFrequency(1.0, 2, 12));
  EXPECT_TRUE(KeepsFrequency(2.0, 2, 1));
}

TEST(SteerableBasisTest, PairsAreOrderedCosThenSin) {
  const SteerableBasis basis = SteerableBasis::Build(5, 12);
  const auto& atoms = basis.atoms();
  for (size_t a = 0; a < atoms.size(); ++a) {
    if (atoms[a].frequency == 0) {
      EXPECT_EQ(atoms[a].phase, Phase::kCos);
      continue;
    }
    if (atoms[a].phase == Phase::kCos) {
      ASSERT_LT(a + 1, atoms.size());
      EXPECT_EQ(atoms[a + 1].phase, Phase::kSin);
      EXPECT_EQ(atoms[a + 1].frequency, atoms[a].frequency);
    }
  }
}

TEST(SteerableBasisTest, QuarterTurnRotationIsBitExact) {
  for (int k : {3, 5}) {
    for (int n : {4, 12}) {
      const SteerableBasis basis = SteerableBasis::Build(k, n);
      const auto c = RandomCoeffs(basis.size(), 10 * k + n);
      const FeatureField base = AsField(ExpandFilter(c, basis), k);
      const int quarter = n / 4;
      for (int q = 1; q < 4; ++q) {
        const auto rc = RotateCoeffs(c, GroupElement::Make(q * quarter, n), basis);
        const FeatureField rotated = AsField(ExpandFilter(rc, basis), k);
        const FeatureField expected = RotateSpatialExact(base, q);
        EXPECT_EQ(MaxAbsDiff(rotated.data(), expected.data()), 0.0)
            << "k=" << k << " N=" << n << " q=" << q;
      }
    }
  }
}

TEST(SteerableBasisTest, RotationIsAGroupAction) {
  const SteerableBasis basis = SteerableBasis::Build(5, 12);
  const auto c = RandomCoeffs(basis.size(), 3);
  auto once = c;
  for (int i = 0; i < 12; ++i) {
    once = RotateCoeffs(once, GroupElement::Make(1, 12), basis);
  }
  for (size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(once[i], c[i], 1e-12);
  const auto two = RotateCoeffs(
      RotateCoeffs(c, GroupElement::Make(1, 12), basis),
      GroupElement::Make(4, 12), basis);
  const auto direct = RotateCoeffs(c, GroupElement::Make(5, 12), basis);
  for (size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(two[i], direct[i], 1e-12);
}

TEST(SteerableBasisTest, RotationPreservesCoefficientNorm) {
  const SteerableBasis basis = SteerableBasis::Build(5, 12);
  const auto c = RandomCoeffs(basis.size(), 4);
  const auto r = RotateCoeffs(c, GroupElement::Make(1, 12), basis);
  double a = 0.0;
  double b = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    a += c[i] * c[i];
    b += r[i] * r[i];
  }
  EXPECT_NEAR(a, b, 1e-12);
}

// A smooth, band-limited filter rotated by pi/6 analytically should be close
// to the bilinear rotation of its samples.
TEST(SteerableBasisTest, NonQuarterRotationTracksInterpolation) {
  const SteerableBasis basis = SteerableBasis::Build(5, 12);
  const auto c = RandomCoeffs(basis.size(), 5);
  const auto kernel = ExpandFilter(c, basis);
  const auto analytic =
      ExpandFilter(RotateCoeffs(c, GroupElement::Make(1, 12), basis), basis);
  const FeatureField interp =
      RotateSpatialInterp(AsField(kernel, 5), std::numbers::pi / 6);
  double diff = 0.0;
  double norm = 0.0;
  // Compare inside the inscribed disc, where interpolation has support.
  for (int r = 0; r < 5; ++r) {
    for (int col = 0; col < 5; ++col) {
      if (!InCircularMask(r, col, 5)) continue;
      const int i = r * 5 + col;
      diff = std::max(diff, std::fabs(analytic[i] - interp.data()[i]));
      norm = std::max(norm, std::fabs(analytic[i]));
    }
  }
  EXPECT_LE(diff / norm, 0.35);
}

}  // namespace
}  // namespace eqq
