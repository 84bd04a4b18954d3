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

#include "privbound/kernels.h"

#include <algorithm>
#include <cmath>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "privbound/errors.h"
#include "privbound/mechanisms.h"
#include "privbound/numeric.h"
#include "privbound/rng.h"

namespace privbound {

void SetThreadCount(int n) {
#ifdef _OPENMP
  if (n >= 1) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int MaxThreadCount() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> UnitPairs(
    const DataUniverse& u) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (const std::size_t j : u.Neighbors(i)) {
      if (j > i) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

// Worst |log ratio| over outcomes and its first argmax. (value 0, kNoIndex)
// for identical rows.
std::pair<double, std::size_t> WorstLogRatio(const std::vector<double>& p,
                                             const std::vector<double>& q) {
  double worst = 0.0;
  std::size_t arg = kNoIndex;
  for (std::size_t t = 0; t < p.size(); ++t) {
    const double v = AbsLogRatio(p[t], q[t]);
    if (v > worst) {
      worst = v;
      arg = t;
      if (std::isinf(v)) break;
    }
  }
  return {worst, arg};
}

struct RankedBest {
  PairScan scan;
  std::size_t rank = kNoIndex;

  // Max value; ties to the smallest pair rank. A zero value never produces a
  // witness, matching a serial first-strict-max scan.
  void Offer(double value, std::size_t rank_in, std::size_t a, std::size_t b,
             std::size_t outcome) {
    const bool better =
        value > scan.value ||
        (value == scan.value && value > 0.0 && rank_in < rank);
    if (!better) return;
    scan.value = value;
    scan.a = a;
    scan.b = b;
    scan.outcome = outcome;
    rank = rank_in;
  }

  void Merge(const RankedBest& other) {
    if (other.rank == kNoIndex) return;
    Offer(other.scan.value, other.rank, other.scan.a, other.scan.b,
          other.scan.outcome);
  }
};

using PairEval =
    std::pair<double, std::size_t> (*)(const void*, std::size_t, std::size_t);

PairScan MaxUnitPairScanSerial(const DataUniverse& u, const void* ctx,
                               PairEval eval) {
  const auto pairs = UnitPairs(u);
  RankedBest best;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [v, t] = eval(ctx, pairs[k].first, pairs[k].second);
    best.Offer(v, k, pairs[k].first, pairs[k].second, t);
  }
  return best.scan;
}

PairScan MaxUnitPairScanParallel(const DataUniverse& u, const void* ctx,
                                 PairEval eval) {
#ifndef _OPENMP
  return MaxUnitPairScanSerial(u, ctx, eval);
#else
  const auto pairs = UnitPairs(u);
  RankedBest best;
#pragma omp parallel
  {
    RankedBest local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(pairs.size());
         ++k) {
      const auto [v, t] = eval(ctx, pairs[k].first, pairs[k].second);
      local.Offer(v, static_cast<std::size_t>(k), pairs[k].first,
                  pairs[k].second, t);
    }
#pragma omp critical(privbound_pair_scan)
    best.Merge(local);
  }
  return best.scan;
#endif
}

std::pair<double, std::size_t> EvalRowRatio(const void* ctx, std::size_t i,
                                            std::size_t j) {
  const auto& rows = *static_cast<const std::vector<std::vector<double>>*>(ctx);
  return WorstLogRatio(rows[i], rows[j]);
}

std::pair<double, std::size_t> EvalValueGap(const void* ctx, std::size_t i,
                                            std::size_t j) {
  const auto& values = *static_cast<const std::vector<double>*>(ctx);
  return {std::abs(values[i] - values[j]), kNoIndex};
}

}  // namespace

PairScan MaxUnitPairLogRatioSerial(
    const DataUniverse& u, const std::vector<std::vector<double>>& rows) {
  if (rows.size() != u.size()) throw InputError("pair scan: row count");
  return MaxUnitPairScanSerial(u, &rows, EvalRowRatio);
}

PairScan MaxUnitPairLogRatio(const DataUniverse& u,
                             const std::vector<std::vector<double>>& rows) {
  if (rows.size() != u.size()) throw InputError("pair scan: row count");
  return MaxUnitPairScanParallel(u, &rows, EvalRowRatio);
}

PairScan MaxUnitPairGapSerial(const DataUniverse& u,
                              const std::vector<double>& values) {
  if (values.size() != u.size()) throw InputError("pair scan: value count");
  return MaxUnitPairScanSerial(u, &values, EvalValueGap);
}

PairScan MaxUnitPairGap(const DataUniverse& u,
                        const std::vector<double>& values) {
  if (values.size() != u.size()) throw InputError("pair scan: value count");
  return MaxUnitPairScanParallel(u, &values, EvalValueGap);
}

namespace {

struct GroupEvalCtx {
  const std::vector<std::vector<double>>* rows = nullptr;
  const std::vector<double>* values = nullptr;
  double inv_scale = 0.0;
};

// First violation (lexicographic in (i, j)) of the Lipschitz condition among
// pairs starting at i, or pass.
GroupScan GroupRowSweep(const DataUniverse& u, const GroupEvalCtx& ctx,
                        double epsilon, double tol, std::size_t i) {
  GroupScan out;
  const auto dists = u.DistancesFrom(i);
  for (std::size_t j = i + 1; j < dists.size(); ++j) {
    const double d = dists[j];
    if (std::isinf(d)) continue;  // disconnected pairs are unconstrained
    const double budget = LipschitzProduct(epsilon, d);
    double v;
    std::size_t t = kNoIndex;
    if (ctx.rows != nullptr) {
      std::tie(v, t) = WorstLogRatio((*ctx.rows)[i], (*ctx.rows)[j]);
    } else {
      v = std::abs((*ctx.values)[i] - (*ctx.values)[j]) * ctx.inv_scale;
    }
    if (v > budget + tol) {
      out.pass = false;
      out.a = i;
      out.b = j;
      out.outcome = t;
      out.distance = d;
      out.mult_distance = v;
      return out;
    }
  }
  return out;
}

GroupScan GroupScanSerial(const DataUniverse& u, const GroupEvalCtx& ctx,
                          double epsilon, double tol) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const GroupScan row = GroupRowSweep(u, ctx, epsilon, tol, i);
    if (!row.pass) return row;
  }
  return GroupScan{};
}

GroupScan GroupScanParallel(const DataUniverse& u, const GroupEvalCtx& ctx,
                            double epsilon, double tol) {
#ifndef _OPENMP
  return GroupScanSerial(u, ctx, epsilon, tol);
#else
  u.size();  // materialize before the parallel region
  GroupScan best;
#pragma omp parallel
  {
    GroupScan local;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(u.size());
         ++i) {
      if (!local.pass && local.a < static_cast<std::size_t>(i)) continue;
      const GroupScan row =
          GroupRowSweep(u, ctx, epsilon, tol, static_cast<std::size_t>(i));
      if (!row.pass && (local.pass || row.a < local.a)) local = row;
    }
#pragma omp critical(privbound_group_scan)
    {
      if (!local.pass &&
          (best.pass || local.a < best.a ||
           (local.a == best.a && local.b < best.b))) {
        best = local;
      }
    }
  }
  return best;
#endif
}

}  // namespace

GroupScan GroupLipschitzScanSerial(const DataUniverse& u,
                                   const std::vector<std::vector<double>>& rows,
                                   double epsilon, double tol) {
  if (rows.size() != u.size()) throw InputError("group scan: row count");
  GroupEvalCtx ctx;
  ctx.rows = &rows;
  return GroupScanSerial(u, ctx, epsilon, tol);
}

GroupScan GroupLipschitzScan(const DataUniverse& u,
                             const std::vector<std::vector<double>>& rows,
                             double epsilon, double tol) {
  if (rows.size() != u.size()) throw InputError("group scan: row count");
  GroupEvalCtx ctx;
  ctx.rows = &rows;
  return GroupScanParallel(u, ctx, epsilon, tol);
}

GroupScan GroupLipschitzScanValuesSerial(const DataUniverse& u,
                                         const std::vector<double>& values,
                                         double inv_scale, double epsilon,
                                         double tol) {
  if (values.size() != u.size()) throw InputError("group scan: value count");
  GroupEvalCtx ctx;
  ctx.values = &values;
  ctx.inv_scale = inv_scale;
  return GroupScanSerial(u, ctx, epsilon, tol);
}

GroupScan GroupLipschitzScanValues(const DataUniverse& u,
                                   const std::vector<double>& values,
                                   double inv_scale, double epsilon,
                                   double tol) {
  if (values.size() != u.size()) throw InputError("group scan: value count");
  GroupEvalCtx ctx;
  ctx.values = &values;
  ctx.inv_scale = inv_scale;
  return GroupScanParallel(u, ctx, epsilon, tol);
}

namespace {

double RadiusOf(const DataUniverse& u, const std::vector<std::size_t>& support,
                std::size_t anchor) {
  double radius = 0.0;
  if (u.metric() == MetricKind::kExplicitGraph) {
    const auto dists = u.DistancesFrom(anchor);
    for (const std::size_t j : support) radius = std::max(radius, dists[j]);
  } else {
    for (const std::size_t j : support) {
      radius = std::max(radius, u.Distance(anchor, j));
    }
  }
  return radius;
}

}  // namespace

std::vector<double> AnchorRadiiSerial(const DataUniverse& u,
                                      const std::vector<std::size_t>& support) {
  std::vector<double> radii(support.size(), 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) {
    radii[k] = RadiusOf(u, support, support[k]);
  }
  return radii;
}

std::vector<double> AnchorRadii(const DataUniverse& u,
                                const std::vector<std::size_t>& support) {
#ifndef _OPENMP
  return AnchorRadiiSerial(u, support);
#else
  u.size();  // materialize before the parallel region
  std::vector<double> radii(support.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(support.size());
       ++k) {
    radii[k] = RadiusOf(u, support, support[k]);
  }
  return radii;
#endif
}

double SetDiameterSerial(const DataUniverse& u,
                         const std::vector<std::size_t>& support) {
  double d = 0.0;
  for (const double r : AnchorRadiiSerial(u, support)) d = std::max(d, r);
  return d;
}

double SetDiameter(const DataUniverse& u,
                   const std::vector<std::size_t>& support) {
  double d = 0.0;
  for (const double r : AnchorRadii(u, support)) d = std::max(d, r);
  return d;
}

double CrossDistanceSerial(const DataUniverse& u,
                           const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b) {
  double worst = 0.0;
  for (const std::size_t i : a) {
    if (u.metric() == MetricKind::kExplicitGraph) {
      const auto dists = u.DistancesFrom(i);
      for (const std::size_t j : b) worst = std::max(worst, dists[j]);
    } else {
      for (const std::size_t j : b) worst = std::max(worst, u.Distance(i, j));
    }
  }
  return worst;
}

double CrossDistance(const DataUniverse& u, const std::vector<std::size_t>& a,
                     const std::vector<std::size_t>& b) {
#ifndef _OPENMP
  return CrossDistanceSerial(u, a, b);
#else
  u.size();
  double worst = 0.0;
#pragma omp parallel
  {
    double local = 0.0;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(a.size());
         ++k) {
      const std::size_t i = a[static_cast<std::size_t>(k)];
      if (u.metric() == MetricKind::kExplicitGraph) {
        const auto dists = u.DistancesFrom(i);
        for (const std::size_t j : b) local = std::max(local, dists[j]);
      } else {
        for (const std::size_t j : b) local = std::max(local, u.Distance(i, j));
      }
    }
#pragma omp critical(privbound_cross_distance)
    worst = std::max(worst, local);
  }
  return worst;
#endif
}

namespace {

void EnvelopeAtPoint(const std::vector<double>& densities,
                     std::size_t n_anchors, std::size_t n_points,
                     const std::vector<double>& lo_factor,
                     const std::vector<double>& hi_factor, std::size_t p,
                     EnvelopePoint* out) {
  double lo = 0.0;
  double hi = kInfinity;
  for (std::size_t a = 0; a < n_anchors; ++a) {
    const double d = densities[a * n_points + p];
    lo = std::max(lo, lo_factor[a] * d);
    hi = std::min(hi, LipschitzProduct(hi_factor[a], d));
  }
  out->lower = lo;
  out->upper = hi;
}

std::vector<EnvelopePoint> EnvelopeImpl(const std::vector<double>& densities,
                                        std::size_t n_anchors,
                                        std::size_t n_points,
                                        const std::vector<double>& radii,
                                        double eps, bool parallel) {
  if (densities.size() != n_anchors * n_points || radii.size() != n_anchors) {
    throw InputError("envelope: shape mismatch");
  }
  std::vector<double> lo_factor(n_anchors), hi_factor(n_anchors);
  for (std::size_t a = 0; a < n_anchors; ++a) {
    const double er = LipschitzProduct(eps, radii[a]);
    lo_factor[a] = std::exp(-er);
    hi_factor[a] = std::exp(er);
  }
  std::vector<EnvelopePoint> out(n_points);
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(n_points);
         ++p) {
      EnvelopeAtPoint(densities, n_anchors, n_points, lo_factor, hi_factor,
                      static_cast<std::size_t>(p), &out[p]);
    }
    return out;
  }
#else
  (void)parallel;
#endif
  for (std::size_t p = 0; p < n_points; ++p) {
    EnvelopeAtPoint(densities, n_anchors, n_points, lo_factor, hi_factor, p,
                    &out[p]);
  }
  return out;
}

}  // namespace

std::vector<EnvelopePoint> EnvelopeFromDensitiesSerial(
    const std::vector<double>& densities, std::size_t n_anchors,
    std::size_t n_points, const std::vector<double>& radii, double eps) {
  return EnvelopeImpl(densities, n_anchors, n_points, radii, eps, false);
}

std::vector<EnvelopePoint> EnvelopeFromDensities(
    const std::vector<double>& densities, std::size_t n_anchors,
    std::size_t n_points, const std::vector<double>& radii, double eps) {
  return EnvelopeImpl(densities, n_anchors, n_points, radii, eps, true);
}

std::uint64_t CountDiscreteHitsSerial(const DiscreteMechanism& m,
                                      const Dataset& x,
                                      const std::vector<char>& hit,
                                      std::uint64_t n, std::uint64_t seed) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    count += hit[m.SampleIndex(x, seed, i)] != 0 ? 1 : 0;
  }
  return count;
}

std::uint64_t CountDiscreteHits(const DiscreteMechanism& m, const Dataset& x,
                                const std::vector<char>& hit, std::uint64_t n,
                                std::uint64_t seed) {
#ifndef _OPENMP
  return CountDiscreteHitsSerial(m, x, hit, n, seed);
#else
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    count += hit[m.SampleIndex(x, seed, static_cast<std::uint64_t>(i))] != 0
                 ? 1
                 : 0;
  }
  return count;
#endif
}

std::uint64_t CountRealHitsSerial(const RealOutputMechanism& m,
                                  const Dataset& x, double lo, double hi,
                                  std::uint64_t n, std::uint64_t seed) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double t = m.SampleReal(x, seed, i);
    count += (t >= lo && t < hi) ? 1 : 0;
  }
  return count;
}

std::uint64_t CountRealHits(const RealOutputMechanism& m, const Dataset& x,
                            double lo, double hi, std::uint64_t n,
                            std::uint64_t seed) {
#ifndef _OPENMP
  return CountRealHitsSerial(m, x, lo, hi, n, seed);
#else
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const double t = m.SampleReal(x, seed, static_cast<std::uint64_t>(i));
    count += (t >= lo && t < hi) ? 1 : 0;
  }
  return count;
#endif
}

}  // namespace privbound
