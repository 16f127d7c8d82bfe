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

#include "eqq/ffcore/transform.h"

#include <cmath>

#include "eqq/common/error.h"

namespace eqq {
namespace {

void RequireOddSquare(const FeatureField& f, const char* op) {
  Check(f.height() == f.width(), ErrorCode::kDimension,
        std::string(op) + ": field must be square, got " +
            std::to_string(f.height()) + "x" + std::to_string(f.width()));
  Check(f.height() % 2 == 1, ErrorCode::kDimension,
        std::string(op) + ": field size must be odd, got " +
            std::to_string(f.height()));
}

// Snaps coordinates that are integers up to trig round-off, so interpolated
// rotations by multiples of pi/2 reproduce the exact permutation.
double Snap(double v) {
  const double r = std::round(v);
  return std::fabs(v - r) < 1e-9 ? r : v;
}

}  // namespace

FeatureField RotateSquareQuarterTurns(const FeatureField& f,
                                      int quarter_turns) {
  Check(f.height() == f.width(), ErrorCode::kDimension,
        "rotation needs a square field");
  const int q = ((quarter_turns % 4) + 4) % 4;
  if (q == 0) return f;
  const int k = f.height();
  FeatureField out(f.type(), f.batch(), k, k);
  for (int b = 0; b < f.batch(); ++b) {
    for (int c = 0; c < f.channels(); ++c) {
      for (int row = 0; row < k; ++row) {
        for (int col = 0; col < k; ++col) {
          int r2 = row;
          int c2 = col;
          for (int t = 0; t < q; ++t) {
            const int nr = k - 1 - c2;
            c2 = r2;
            r2 = nr;
          }
          out.at(b, c, r2, c2) = f.at(b, c, row, col);
        }
      }
    }
  }
  return out;
}

FeatureField RotateSpatialExact(const FeatureField& f, int quarter_turns) {
  RequireOddSquare(f, "rotate_spatial_exact");
  return RotateSquareQuarterTurns(f, quarter_turns);
}

FeatureField RotateSpatialInterp(const FeatureField& f, double angle) {
  RequireOddSquare(f, "rotate_spatial_interp");
  const int k = f.height();
  const double m = (k - 1) / 2.0;
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  FeatureField out(f.type(), f.batch(), k, k);
  for (int row = 0; row < k; ++row) {
    for (int col = 0; col < k; ++col) {
      // Output pixel in y-up coordinates, pulled back through R(-angle).
      const double x = col - m;
      const double y = m - row;
      const double xs = cs * x + sn * y;
      const double ys = -sn * x + cs * y;
      const double src_col = Snap(m + xs);
      const double src_row = Snap(m - ys);
      const int r0 = static_cast<int>(std::floor(src_row));
      const int c0 = static_cast<int>(std::floor(src_col));
      const double fr = src_row - r0;
      const double fc = src_col - c0;
      const int rows[2] = {r0, r0 + 1};
      const int cols[2] = {c0, c0 + 1};
      const double wr[2] = {1.0 - fr, fr};
      const double wc[2] = {1.0 - fc, fc};
      for (int b = 0; b < f.batch(); ++b) {
        for (int c = 0; c < f.channels(); ++c) {
          double acc = 0.0;
          for (int i = 0; i < 2; ++i) {
            if (wr[i] == 0.0 || rows[i] < 0 || rows[i] >= k) continue;
            for (int j = 0; j < 2; ++j) {
              if (wc[j] == 0.0 || cols[j] < 0 || cols[j] >= k) continue;
              acc += wr[i] * wc[j] * f.at(b, c, rows[i], cols[j]);
            }
          }
          out.at(b, c, row, col) = static_cast<float>(acc);
        }
      }
    }
  }
  return out;
}

FeatureField ShiftChannels(const FeatureField& f, int r) {
  const FieldType& type = f.type();
  const int n = type.group_order();
  const int shift = ((r % n) + n) % n;
  if (shift == 0 || type.regular_mult() == 0) return f;
  FeatureField out(type, f.batch(), f.height(), f.width());
  for (int b = 0; b < f.batch(); ++b) {
    for (int c = 0; c < type.trivial_mult(); ++c) {
      auto src = f.plane(b, c);
      std::copy(src.begin(), src.end(), out.plane(b, c).begin());
    }
    for (int block = 0; block < type.regular_mult(); ++block) {
      for (int k = 0; k < n; ++k) {
        auto src = f.plane(b, type.RegularChannel(block, (k - shift + n) % n));
        std::copy(src.begin(), src.end(),
                  out.plane(b, type.RegularChannel(block, k)).begin());
      }
    }
  }
  return out;
}

FeatureField Act(const FeatureField& f, const GroupElement& g) {
  Check(g.group_order() == f.type().group_order(), ErrorCode::kType,
        "group element of C" + std::to_string(g.group_order()) +
            " cannot act on " + f.type().ToString());
  if (g.r() == 0) return f;
  const int q = g.QuarterTurns();
  FeatureField rotated =
      q >= 0 ? RotateSpatialExact(f, q) : RotateSpatialInterp(f, g.angle());
  return ShiftChannels(rotated, g.r());
}

bool InCircularMask(int row, int col, int size) {
  // dist <= R + 0.5 with R = (size - 1) / 2, compared in integers:
  // 4 * dist^2 <= size^2.
  const int two_dr = 2 * row - (size - 1);
  const int two_dc = 2 * col - (size - 1);
  return two_dr * two_dr + two_dc * two_dc <= size * size;
}

FeatureField CircularMask(const FeatureField& f) {
  RequireOddSquare(f, "circular_mask");
  const int k = f.height();
  FeatureField out = f;
  for (int b = 0; b < f.batch(); ++b) {
    for (int c = 0; c < f.channels(); ++c) {
      for (int row = 0; row < k; ++row) {
        for (int col = 0; col < k; ++col) {
          if (!InCircularMask(row, col, k)) out.at(b, c, row, col) = 0.0f;
        }
      }
    }
  }
  return out;
}

}  // namespace eqq
