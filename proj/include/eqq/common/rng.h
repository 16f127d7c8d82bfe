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

#ifndef EQQ_COMMON_RNG_H_
#define EQQ_COMMON_RNG_H_

#include <cstdint>
#include <random>

namespace eqq {

// Seeded generator with a platform-independent mapping from engine output to
// doubles. std::uniform_real_distribution is implementation-defined, which
// would make weight containers differ between standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Unit(); }

  // Uniform integer in [0, n).
  uint64_t Below(uint64_t n) { return engine_() % n; }

  // Standard normal via Box-Muller on Unit().
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace eqq

#endif  // EQQ_COMMON_RNG_H_
