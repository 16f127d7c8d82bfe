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

#ifndef EQQ_BASIS_STEERABLE_BASIS_H_
#define EQQ_BASIS_STEERABLE_BASIS_H_

#include <span>
#include <vector>

#include "eqq/ffcore/field.h"

namespace eqq {

// Width of the Gaussian ring profile, in pixels.
inline constexpr double kRingSigma = 0.6;

enum class Phase { kCos, kSin };

struct Atom {
  int ring = 0;
  double radius = 0.0;
  int frequency = 0;
  Phase phase = Phase::kCos;
};

// Band-limit: angular frequency mu is kept on ring radius rho iff mu <= rho
// and, for N > 1, 2 * mu < N.
bool KeepsFrequency(double radius, int frequency, int group_order);

// Sampled band-limited steerable atoms for a k x k kernel. Atoms are ordered
// by ring, then frequency, with each mu > 0 cos atom immediately followed by
// its sin partner. Angles are measured in array coordinates (x to the right,
// y down), which makes coefficient rotation a rotation by -mu * angle.
class SteerableBasis {
 public:
  // Throws kDimension for even or non-positive `kernel_size`.
  static SteerableBasis Build(int kernel_size, int group_order);

  int kernel_size() const { return kernel_size_; }
  int group_order() const { return group_order_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  // k * k row-major samples of one atom; unit L2 norm.
  std::span<const double> samples(int atom) const {
    const size_t kk = static_cast<size_t>(kernel_size_) * kernel_size_;
    return {samples_.data() + atom * kk, kk};
  }

 private:
  int kernel_size_ = 1;
  int group_order_ = 1;
  std::vector<Atom> atoms_;
  std::vector<double> samples_;
};

using FilterCoeffs = std::vector<double>;

// Analytic rotation of a filter by g: each (cos, sin) coefficient pair of
// frequency mu is multiplied by the 2x2 rotation matrix of -mu * angle(g).
// Angles that land on multiples of pi/2 use exact matrix entries.
FilterCoeffs RotateCoeffs(std::span<const double> coeffs, const GroupElement& g,
                          const SteerableBasis& basis);

// sum_a coeffs[a] * samples[a], as a row-major k x k kernel. Each (cos, sin)
// pair is summed before being accumulated so that quarter-turn rotated
// coefficient sets reproduce the grid rotation bit-exactly.
std::vector<double> ExpandFilter(std::span<const double> coeffs,
                                 const SteerableBasis& basis);

}  // namespace eqq

#endif  // EQQ_BASIS_STEERABLE_BASIS_H_
