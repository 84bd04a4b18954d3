// Copyright 2026 The Privbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVBOUND_NUMERIC_H_
#define PRIVBOUND_NUMERIC_H_

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace privbound {

// Default absolute comparison tolerance for all verification predicates.
inline constexpr double kTolerance = 1e-12;

// Weights with absolute value below this are treated as exact zeros.
inline constexpr double kWeightFloor = 1e-300;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool IsZeroWeight(double w) { return std::abs(w) < kWeightFloor; }

inline bool NearlyEqual(double a, double b, double tol = kTolerance) {
  if (a == b) return true;  // covers matching infinities
  return std::abs(a - b) <= tol;
}

// |log(a/b)| under the ratio conventions: 0/0 counts as 1 (gives 0) and a
// single-sided zero gives +infinity.
inline double AbsLogRatio(double a, double b) {
  const bool az = IsZeroWeight(a);
  const bool bz = IsZeroWeight(b);
  if (az && bz) return 0.0;
  if (az || bz) return kInfinity;
  return std::abs(std::log(a) - std::log(b));
}

// Product with the 0 * inf = inf convention used on the right-hand side of
// Lipschitz bounds, where an infinite distance must never relax a constraint
// to zero.
inline double LipschitzProduct(double a, double b) {
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) {
    return kInfinity;
  }
  return a * b;
}

// Canonical 12-significant-digit decimal form used by every text surface
// (CSV cells, JSON numbers rendered as strings, sampled-output labels), so
// identical runs print identical bytes.
inline std::string FormatSig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

}  // namespace privbound

#endif  // PRIVBOUND_NUMERIC_H_
