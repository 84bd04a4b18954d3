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

#ifndef PRIVBOUND_KERNELS_H_
#define PRIVBOUND_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "privbound/universe.h"

namespace privbound {

class DiscreteMechanism;
class RealOutputMechanism;

// Every kernel below exists twice: a plain serial reference (`...Serial`) and
// a parallel variant with the same name minus the suffix. The parallel
// variants shard independent units (pairs, anchors, grid points, draws)
// across OpenMP threads and reduce with order-independent rules: maxima over
// a fixed candidate set, lexicographically smallest witnesses, and integer
// counts. Both variants therefore return bit-identical results, which the
// test suite asserts; without OpenMP the parallel names simply forward to the
// serial ones.

void SetThreadCount(int n);  // 0 restores the OpenMP default
int MaxThreadCount();

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

struct PairScan {
  double value = 0.0;
  std::size_t a = kNoIndex;
  std::size_t b = kNoIndex;
  std::size_t outcome = kNoIndex;
};

// Max over unit pairs (i, j) of the worst per-outcome |log ratio| between
// rows i and j. `rows` is dataset-major and aligned with u's enumeration.
PairScan MaxUnitPairLogRatioSerial(const DataUniverse& u,
                                   const std::vector<std::vector<double>>& rows);
PairScan MaxUnitPairLogRatio(const DataUniverse& u,
                             const std::vector<std::vector<double>>& rows);

// Max over unit pairs of |values[i] - values[j]|.
PairScan MaxUnitPairGapSerial(const DataUniverse& u,
                              const std::vector<double>& values);
PairScan MaxUnitPairGap(const DataUniverse& u,
                        const std::vector<double>& values);

struct GroupScan {
  bool pass = true;
  std::size_t a = kNoIndex;
  std::size_t b = kNoIndex;
  std::size_t outcome = kNoIndex;
  double distance = 0.0;
  double mult_distance = 0.0;
};

// Checks, over every ordered pair i < j at finite distance d, that the worst
// per-outcome |log ratio| stays at or below epsilon * d + tol. The witness is
// the lexicographically first violating pair.
GroupScan GroupLipschitzScanSerial(const DataUniverse& u,
                                   const std::vector<std::vector<double>>& rows,
                                   double epsilon, double tol);
GroupScan GroupLipschitzScan(const DataUniverse& u,
                             const std::vector<std::vector<double>>& rows,
                             double epsilon, double tol);

// Same check with the closed-form log ratio |values[i] - values[j]| *
// inv_scale in place of an outcome scan.
GroupScan GroupLipschitzScanValuesSerial(const DataUniverse& u,
                                         const std::vector<double>& values,
                                         double inv_scale, double epsilon,
                                         double tol);
GroupScan GroupLipschitzScanValues(const DataUniverse& u,
                                   const std::vector<double>& values,
                                   double inv_scale, double epsilon,
                                   double tol);

// For each member of `support` (as anchor), the largest distance to any
// member of `support`.
std::vector<double> AnchorRadiiSerial(const DataUniverse& u,
                                      const std::vector<std::size_t>& support);
std::vector<double> AnchorRadii(const DataUniverse& u,
                                const std::vector<std::size_t>& support);

double SetDiameterSerial(const DataUniverse& u,
                         const std::vector<std::size_t>& support);
double SetDiameter(const DataUniverse& u,
                   const std::vector<std::size_t>& support);

double CrossDistanceSerial(const DataUniverse& u,
                           const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b);
double CrossDistance(const DataUniverse& u, const std::vector<std::size_t>& a,
                     const std::vector<std::size_t>& b);

struct EnvelopePoint {
  double lower = 0.0;
  double upper = 0.0;
};

// Pointwise envelope over anchors: at each grid point, the max over anchors
// of exp(-eps * radius) * density and the min of exp(+eps * radius) *
// density. `densities` is anchor-major: densities[a * n_points + p].
std::vector<EnvelopePoint> EnvelopeFromDensitiesSerial(
    const std::vector<double>& densities, std::size_t n_anchors,
    std::size_t n_points, const std::vector<double>& radii, double eps);
std::vector<EnvelopePoint> EnvelopeFromDensities(
    const std::vector<double>& densities, std::size_t n_anchors,
    std::size_t n_points, const std::vector<double>& radii, double eps);

// Number of draws in [0, n) whose sampled outcome index has hit[index] != 0.
std::uint64_t CountDiscreteHitsSerial(const DiscreteMechanism& m,
                                      const Dataset& x,
                                      const std::vector<char>& hit,
                                      std::uint64_t n, std::uint64_t seed);
std::uint64_t CountDiscreteHits(const DiscreteMechanism& m, const Dataset& x,
                                const std::vector<char>& hit, std::uint64_t n,
                                std::uint64_t seed);

// Number of draws landing in [lo, hi).
std::uint64_t CountRealHitsSerial(const RealOutputMechanism& m,
                                  const Dataset& x, double lo, double hi,
                                  std::uint64_t n, std::uint64_t seed);
std::uint64_t CountRealHits(const RealOutputMechanism& m, const Dataset& x,
                            double lo, double hi, std::uint64_t n,
                            std::uint64_t seed);

}  // namespace privbound

#endif  // PRIVBOUND_KERNELS_H_
