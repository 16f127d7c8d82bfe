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

#ifndef EQQ_FFCORE_TRANSFORM_H_
#define EQQ_FFCORE_TRANSFORM_H_

#include "eqq/ffcore/field.h"

namespace eqq {

// Rotations are counter-clockwise as displayed (row 0 at the top). A quarter
// turn sends pixel (row, col) to (size - 1 - col, row).

// Exact index permutation. Requires an odd square grid; `quarter_turns` is
// reduced mod 4.
FeatureField RotateSpatialExact(const FeatureField& f, int quarter_turns);

// Same permutation without the odd-size requirement. Even grids rotate about
// the corner shared by the four central pixels. Used to demonstrate what goes
// wrong on even grids; the engine itself never calls it.
FeatureField RotateSquareQuarterTurns(const FeatureField& f, int quarter_turns);

// Bilinear rotation about the center pixel. Samples that fall outside the
// grid read as 0.
FeatureField RotateSpatialInterp(const FeatureField& f, double angle);

// Cyclic shift inside each regular block: output offset k reads input offset
// (k - r) mod N. Trivial channels are untouched.
FeatureField ShiftChannels(const FeatureField& f, int r);

// Regular-representation action of `g`: spatial rotation (exact for
// quarter-turn angles, bilinear otherwise) followed by the channel shift.
FeatureField Act(const FeatureField& f, const GroupElement& g);

// True when pixel (row, col) of a size x size grid lies within R + 0.5 of the
// center, R = (size - 1) / 2.
bool InCircularMask(int row, int col, int size);

// Zeros every pixel outside the inscribed disc. Idempotent.
FeatureField CircularMask(const FeatureField& f);

}  // namespace eqq

#endif  // EQQ_FFCORE_TRANSFORM_H_
