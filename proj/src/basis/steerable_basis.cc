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

#include "eqq/basis/steerable_basis.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "eqq/common/error.h"

namespace eqq {
namespace {

// Exact cos / sin of 2 pi a / n when the angle is a multiple of pi/2.
void CosSinOfFraction(int a, int n, double* c, double* s) {
  a %= n;
  if ((4 * a) % n == 0) {
    static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double kSin[4] = {0.0, 1.0, 0.0, -1.0};
    const int q = (4 * a) / n;
    *c = kCos[q];
    *s = kSin[q];
    return;
  }
  const double angle = 2.0 * std::numbers::pi * a / n;
  *c = std::cos(angle);
  *s = std::sin(angle);
}

// Re / Im of (dx + i dy)^mu / |dx + i dy|^mu. The power is formed in integer
// arithmetic, so samples at rotated pixels are exact sign permutations.
void Harmonic(int dx, int dy, int mu, double* re, double* im) {
  if (mu == 0) {
    *re = 1.0;
    *im = 0.0;
    return;
  }
  if (dx == 0 && dy == 0) {
    *re = 0.0;
    *im = 0.0;
    return;
  }
  long long pr = 1;
  long long pi = 0;
  for (int i = 0; i < mu; ++i) {
    const long long nr = pr * dx - pi * dy;
    const long long ni = pr * dy + pi * dx;
    pr = nr;
    pi = ni;
  }
  const double norm =
      std::pow(std::sqrt(static_cast<double>(dx * dx + dy * dy)), mu);
  *re = static_cast<double>(pr) / norm;
  *im = static_cast<double>(pi) / norm;
}

}  // namespace

bool KeepsFrequency(double radius, int frequency, int group_order) {
  if (frequency < 0) return false;
  if (frequency > radius) return false;
  if (group_order > 1 && 2 * frequency >= group_order) return false;
  return true;
}

SteerableBasis SteerableBasis::Build(int kernel_size, int group_order) {
  Check(kernel_size >= 1 && kernel_size % 2 == 1, ErrorCode::kDimension,
        "steerable basis needs an odd kernel size, got " +
            std::to_string(kernel_size));
  Check(group_order >= 1, ErrorCode::kValidation, "group order must be >= 1");
  SteerableBasis basis;
  basis.kernel_size_ = kernel_size;
  basis.group_order_ = group_order;
  const int half = (kernel_size - 1) / 2;
  const size_t kk = static_cast<size_t>(kernel_size) * kernel_size;

  for (int ring = 0; ring <= half; ++ring) {
    const double radius = ring;
    for (int mu = 0; KeepsFrequency(radius, mu, group_order); ++mu) {
      for (Phase phase : {Phase::kCos, Phase::kSin}) {
        if (mu == 0 && phase == Phase::kSin) continue;
        std::vector<double> grid(kk);
        double norm_sq = 0.0;
        for (int row = 0; row < kernel_size; ++row) {
          for (int col = 0; col < kernel_size; ++col) {
            const int dx = col - half;
            const int dy = row - half;
            const double dist = std::sqrt(static_cast<double>(dx * dx + dy * dy));
            const double profile =
                std::exp(-(dist - radius) * (dist - radius) /
                         (2.0 * kRingSigma * kRingSigma));
            double re = 0.0;
            double im = 0.0;
            Harmonic(dx, dy, mu, &re, &im);
            const double v = profile * (phase == Phase::kCos ? re : im);
            grid[row * kernel_size + col] = v;
            norm_sq += v * v;
          }
        }
        Check(norm_sq > 1e-24, ErrorCode::kValidation,
              "steerable atom vanished on the sampling grid");
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& v : grid) v *= inv;
        basis.atoms_.push_back({ring, radius, mu, phase});
        basis.samples_.insert(basis.samples_.end(), grid.begin(), grid.end());
      }
    }
  }
  return basis;
}

FilterCoeffs RotateCoeffs(std::span<const double> coeffs, const GroupElement& g,
                          const SteerableBasis& basis) {
  Check(coeffs.size() == static_cast<size_t>(basis.size()), ErrorCode::kType,
        "coefficient count " + std::to_string(coeffs.size()) +
            " does not match basis size " + std::to_string(basis.size()));
  Check(g.group_order() == basis.group_order(), ErrorCode::kType,
        "group element and basis belong to different groups");
  FilterCoeffs out(coeffs.begin(), coeffs.end());
  if (g.r() == 0) return out;
  const auto& atoms = basis.atoms();
  for (size_t a = 0; a < atoms.size(); ++a) {
    if (atoms[a].frequency == 0 || atoms[a].phase != Phase::kCos) continue;
    double c = 0.0;
    double s = 0.0;
    CosSinOfFraction(atoms[a].frequency * g.r(), g.group_order(), &c, &s);
    const double alpha = coeffs[a];
    const double beta = coeffs[a + 1];
    out[a] = c * alpha + s * beta;
    out[a + 1] = -s * alpha + c * beta;
  }
  return out;
}

std::vector<double> ExpandFilter(std::span<const double> coeffs,
                                 const SteerableBasis& basis) {
  Check(coeffs.size() == static_cast<size_t>(basis.size()), ErrorCode::kType,
        "coefficient count " + std::to_string(coeffs.size()) +
            " does not match basis size " + std::to_string(basis.size()));
  const size_t kk =
      static_cast<size_t>(basis.kernel_size()) * basis.kernel_size();
  std::vector<double> kernel(kk, 0.0);
  const auto& atoms = basis.atoms();
  for (size_t a = 0; a < atoms.size(); ++a) {
    const auto s0 = basis.samples(static_cast<int>(a));
    if (atoms[a].frequency == 0) {
      for (size_t p = 0; p < kk; ++p) kernel[p] += coeffs[a] * s0[p];
      continue;
    }
    const auto s1 = basis.samples(static_cast<int>(a + 1));
    for (size_t p = 0; p < kk; ++p) {
      kernel[p] += coeffs[a] * s0[p] + coeffs[a + 1] * s1[p];
    }
    ++a;
  }
  return kernel;
}

}  // namespace eqq
