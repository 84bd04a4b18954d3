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

#include "privbound/pufferfish.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

#include "privbound/errors.h"
#include "privbound/kernels.h"
#include "privbound/numeric.h"
#include "privbound/rng.h"

namespace privbound {

namespace {

void CheckEvent(const FiniteMeasure& prior, const EventSet& event,
                const char* what) {
  if (event.empty()) throw InputError(std::string(what) + ": empty event");
  for (const std::size_t i : event) {
    if (i >= prior.size()) {
      throw InputError(std::string(what) + ": event index out of range");
    }
  }
}

void CheckInstantiation(const PufferfishInstantiation& in) {
  if (in.universe == nullptr) {
    throw InputError("pufferfish: null universe");
  }
  if (!(in.epsilon >= 0.0)) {
    throw InputError("pufferfish: epsilon must be >= 0 (may be infinite)");
  }
  const std::size_t n = in.universe->size();
  for (const FiniteMeasure& att : in.attackers) {
    if (att.size() != n) {
      throw InputError("pufferfish: attacker prior size mismatch");
    }
  }
  for (const ConjecturePair& p : in.pairs) {
    if (p.first.empty() || p.second.empty()) {
      throw InputError("pufferfish: conjecture events must be nonempty");
    }
    for (const std::size_t i : p.first) {
      if (i >= n) throw InputError("pufferfish: event index out of range");
    }
    for (const std::size_t i : p.second) {
      if (i >= n) throw InputError("pufferfish: event index out of range");
    }
  }
}

}  // namespace

double EventMass(const FiniteMeasure& prior, const EventSet& event) {
  CheckEvent(prior, event, "event mass");
  double mass = 0.0;
  for (const std::size_t i : event) mass += prior.weight(i);
  return mass;
}

FiniteMeasure Condition(const FiniteMeasure& prior, const EventSet& event) {
  CheckEvent(prior, event, "conditioning");
  double mass = 0.0;
  for (const std::size_t i : event) mass += prior.weight(i);
  if (IsZeroWeight(mass)) {
    throw WellDefinednessError(
        "conditioning on an event of zero prior probability");
  }
  std::vector<double> w(prior.size(), 0.0);
  for (const std::size_t i : event) w[i] = prior.weight(i) / mass;
  return FiniteMeasure(prior.outcomes_ptr(), std::move(w),
                       /*normalized=*/true);
}

FiniteMeasure PrivatisedDataProb(const DataUniverse& u,
                                 const FiniteMeasure& prior,
                                 const DiscreteMechanism& m) {
  if (prior.size() != u.size()) {
    throw InputError("privatised law: prior is not over the universe");
  }
  std::vector<double> acc(m.output_labels()->size(), 0.0);
  for (std::size_t i = 0; i < prior.size(); ++i) {
    const double w = prior.weight(i);
    if (IsZeroWeight(w)) continue;
    const FiniteMeasure law = m.Distribution(u.dataset(i));
    for (std::size_t t = 0; t < acc.size(); ++t) {
      acc[t] += w * law.weight(t);
    }
  }
  double total = 0.0;
  for (const double v : acc) total += v;
  if (std::abs(total - 1.0) > 1e-9) {
    throw InputError("privatised law: mixture mass " + FormatSig12(total));
  }
  for (double& v : acc) v /= total;
  return FiniteMeasure(m.output_labels(), std::move(acc), /*normalized=*/true);
}

std::vector<double> PrivatisedDensityGrid(const DataUniverse& u,
                                          const FiniteMeasure& prior,
                                          const RealOutputMechanism& m,
                                          const std::vector<double>& grid) {
  if (prior.size() != u.size()) {
    throw InputError("privatised density: prior is not over the universe");
  }
  std::vector<double> acc(grid.size(), 0.0);
  for (std::size_t i = 0; i < prior.size(); ++i) {
    const double w = prior.weight(i);
    if (IsZeroWeight(w)) continue;
    const Dataset& x = u.dataset(i);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      acc[p] += w * m.Density(x, grid[p]);
    }
  }
  return acc;
}

namespace {

enum class CheckStyle { kMultDistance, kContainment, kPointwise };

// One (attacker, pair) cell: 0 = satisfied, 1 = violated (with outcome and
// log ratio), 2 = ill-defined.
struct CellResult {
  int status = 0;
  std::size_t outcome = 0;
  double log_ratio = 0.0;
};

CellResult EvaluateCell(const PufferfishInstantiation& in,
                        const DiscreteMechanism& m, std::size_t a,
                        std::size_t s, CheckStyle style, double tol) {
  CellResult r;
  const FiniteMeasure& att = in.attackers[a];
  const ConjecturePair& pair = in.pairs[s];
  if (IsZeroWeight(EventMass(att, pair.first)) ||
      IsZeroWeight(EventMass(att, pair.second))) {
    r.status = 2;
    return r;
  }
  const FiniteMeasure lhs =
      PrivatisedDataProb(*in.universe, Condition(att, pair.first), m);
  const FiniteMeasure rhs =
      PrivatisedDataProb(*in.universe, Condition(att, pair.second), m);

  switch (style) {
    case CheckStyle::kMultDistance: {
      double worst = 0.0;
      std::size_t arg = 0;
      for (std::size_t t = 0; t < lhs.size(); ++t) {
        const double v = AbsLogRatio(lhs.weight(t), rhs.weight(t));
        if (v > worst) {
          worst = v;
          arg = t;
          if (std::isinf(v)) break;
        }
      }
      if (worst > in.epsilon + tol) {
        r.status = 1;
        r.outcome = arg;
        r.log_ratio = worst;
      }
      return r;
    }
    case CheckStyle::kContainment: {
      if (std::isinf(in.epsilon)) return r;  // every law is contained
      const MeasureInterval ball_rhs = MultBall(rhs, in.epsilon);
      const MeasureInterval ball_lhs = MultBall(lhs, in.epsilon);
      if (IntervalContains(ball_rhs, lhs, tol) &&
          IntervalContains(ball_lhs, rhs, tol)) {
        return r;
      }
      // Locate the first outcome escaping either ball, for the witness.
      for (std::size_t t = 0; t < lhs.size(); ++t) {
        const double lo = ball_rhs.lower.weight(t);
        const double hi = ball_rhs.upper.weight(t);
        const double lo2 = ball_lhs.lower.weight(t);
        const double hi2 = ball_lhs.upper.weight(t);
        if (lhs.weight(t) < lo - tol || lhs.weight(t) > hi + tol ||
            rhs.weight(t) < lo2 - tol || rhs.weight(t) > hi2 + tol) {
          r.status = 1;
          r.outcome = t;
          r.log_ratio = AbsLogRatio(lhs.weight(t), rhs.weight(t));
          return r;
        }
      }
      r.status = 1;  // containment failed but no single outcome found
      return r;
    }
    case CheckStyle::kPointwise: {
      if (std::isinf(in.epsilon)) return r;
      const double factor = std::exp(in.epsilon);
      for (std::size_t t = 0; t < lhs.size(); ++t) {
        const double p = lhs.weight(t);
        const double q = rhs.weight(t);
        const bool pz = IsZeroWeight(p);
        const bool qz = IsZeroWeight(q);
        if (pz && qz) continue;
        if (pz != qz || p > q * factor + tol || q > p * factor + tol) {
          r.status = 1;
          r.outcome = t;
          r.log_ratio = AbsLogRatio(p, q);
          return r;
        }
      }
      return r;
    }
  }
  return r;
}

PufferfishVerdict RunCheck(const PufferfishInstantiation& in,
                           const DiscreteMechanism& m, CheckStyle style,
                           double tol, bool parallel) {
  CheckInstantiation(in);
  in.universe->size();  // materialize before any parallel region
  const std::size_t n_cells = in.attackers.size() * in.pairs.size();
  PufferfishVerdict verdict;
  std::size_t best_cell = n_cells;
  CellResult best;

  auto consider = [&](std::size_t cell, const CellResult& r,
                      std::size_t* checked, std::size_t* skipped,
                      std::size_t* local_best_cell, CellResult* local_best) {
    if (r.status == 2) {
      ++*skipped;
      return;
    }
    ++*checked;
    if (r.status == 1 && cell < *local_best_cell) {
      *local_best_cell = cell;
      *local_best = r;
    }
  };

#ifdef _OPENMP
  if (parallel && n_cells > 1) {
#pragma omp parallel
    {
      std::size_t checked = 0, skipped = 0;
      std::size_t local_cell = n_cells;
      CellResult local;
#pragma omp for schedule(dynamic, 8) nowait
      for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_cells);
           ++c) {
        const auto cell = static_cast<std::size_t>(c);
        const CellResult r = EvaluateCell(in, m, cell / in.pairs.size(),
                                          cell % in.pairs.size(), style, tol);
        consider(cell, r, &checked, &skipped, &local_cell, &local);
      }
#pragma omp critical(privbound_pufferfish)
      {
        verdict.pairs_checked += checked;
        verdict.pairs_skipped += skipped;
        if (local_cell < best_cell) {
          best_cell = local_cell;
          best = local;
        }
      }
    }
  } else {
#else
  (void)parallel;
  {
#endif
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      const CellResult r = EvaluateCell(in, m, cell / in.pairs.size(),
                                        cell % in.pairs.size(), style, tol);
      consider(cell, r, &verdict.pairs_checked, &verdict.pairs_skipped,
               &best_cell, &best);
    }
  }

  if (best_cell < n_cells) {
    verdict.pass = false;
    PufferfishWitness w;
    w.attacker = best_cell / in.pairs.size();
    w.pair = best_cell % in.pairs.size();
    w.outcome = best.outcome;
    w.outcome_label = (*m.output_labels())[best.outcome];
    w.log_ratio = best.log_ratio;
    verdict.witness = w;
  }
  return verdict;
}

}  // namespace

PufferfishVerdict PufferfishSatisfiedSerial(const PufferfishInstantiation& in,
                                            const DiscreteMechanism& m,
                                            double tol) {
  return RunCheck(in, m, CheckStyle::kMultDistance, tol, false);
}

PufferfishVerdict PufferfishSatisfied(const PufferfishInstantiation& in,
                                      const DiscreteMechanism& m, double tol) {
  return RunCheck(in, m, CheckStyle::kMultDistance, tol, true);
}

PufferfishVerdict PufferfishByIntervalContainment(
    const PufferfishInstantiation& in, const DiscreteMechanism& m,
    double tol) {
  return RunCheck(in, m, CheckStyle::kContainment, tol, true);
}

PufferfishVerdict PufferfishByPointwiseRatios(
    const PufferfishInstantiation& in, const DiscreteMechanism& m,
    double tol) {
  return RunCheck(in, m, CheckStyle::kPointwise, tol, true);
}

std::size_t ConditionedGraph::Find(const FiniteMeasure& prior) const {
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].NearlyEquals(prior, kTolerance)) return v;
  }
  return vertices.size();
}

ConditionedGraph BuildConditionedGraph(const PufferfishInstantiation& in,
                                       int depth) {
  CheckInstantiation(in);
  if (depth < 1) throw InputError("conditioned graph: depth must be >= 1");
  ConditionedGraph g;

  auto add_vertex = [&g](const FiniteMeasure& mu) {
    const std::size_t v = g.Find(mu);
    if (v < g.vertices.size()) return v;
    g.vertices.push_back(mu);
    g.adjacency.emplace_back();
    return g.vertices.size() - 1;
  };
  auto add_edge = [&g](std::size_t v1, std::size_t v2) {
    if (v1 == v2) return;
    auto& a1 = g.adjacency[v1];
    if (std::find(a1.begin(), a1.end(), v2) == a1.end()) {
      a1.push_back(v2);
      g.adjacency[v2].push_back(v1);
    }
  };

  // Sources of the first round are the attackers; later rounds use the
  // vertices created by the previous round.
  std::vector<FiniteMeasure> sources = in.attackers;
  for (int round = 0; round < depth; ++round) {
    std::size_t first_new = g.vertices.size();
    for (const FiniteMeasure& src : sources) {
      for (const ConjecturePair& pair : in.pairs) {
        const double m1 = EventMass(src, pair.first);
        const double m2 = EventMass(src, pair.second);
        if (!IsZeroWeight(m1)) add_vertex(Condition(src, pair.first));
        if (!IsZeroWeight(m2)) add_vertex(Condition(src, pair.second));
        if (!IsZeroWeight(m1) && !IsZeroWeight(m2)) {
          add_edge(g.Find(Condition(src, pair.first)),
                   g.Find(Condition(src, pair.second)));
        }
      }
    }
    if (round + 1 < depth) {
      sources.assign(g.vertices.begin() + static_cast<std::ptrdiff_t>(
                                              std::min(first_new, g.vertices.size())),
                     g.vertices.end());
      if (sources.empty()) break;  // closure reached early
    }
  }
  return g;
}

double DpsDistance(const ConditionedGraph& g, const FiniteMeasure& a,
                   const FiniteMeasure& b) {
  const std::size_t ia = g.Find(a);
  const std::size_t ib = g.Find(b);
  if (ia == g.vertices.size() || ib == g.vertices.size()) {
    throw InputError(
        "graph distance: prior is not in the conditioning closure");
  }
  if (ia == ib) return 0.0;
  std::vector<double> dist(g.vertices.size(), kInfinity);
  dist[ia] = 0.0;
  std::deque<std::size_t> queue{ia};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const std::size_t w : g.adjacency[v]) {
      if (std::isinf(dist[w])) {
        dist[w] = dist[v] + 1.0;
        if (w == ib) return dist[w];
        queue.push_back(w);
      }
    }
  }
  return kInfinity;
}

double DpsDistance(const PufferfishInstantiation& in, const FiniteMeasure& a,
                   const FiniteMeasure& b, int depth) {
  return DpsDistance(BuildConditionedGraph(in, depth), a, b);
}

FiniteMeasure DatasetPosterior(const DataUniverse& u,
                               const FiniteMeasure& prior, const Mechanism& m,
                               const Outcome& t) {
  if (prior.size() != u.size()) {
    throw InputError("posterior: prior is not over the universe");
  }
  std::vector<double> w(prior.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (IsZeroWeight(prior.weight(i))) continue;
    w[i] = prior.weight(i) * OutcomeDensity(m, u.dataset(i), t);
    total += w[i];
  }
  if (IsZeroWeight(total)) {
    throw WellDefinednessError(
        "posterior: the outcome has zero probability under the prior");
  }
  for (double& v : w) v /= total;
  return FiniteMeasure(prior.outcomes_ptr(), std::move(w), /*normalized=*/true);
}

OddsRatioResult OddsRatioCheck(const DataUniverse& u,
                               const FiniteMeasure& prior, const EventSet& e1,
                               const EventSet& e2, const Mechanism& m,
                               const Outcome& t, double epsilon, double tol) {
  const double p1 = EventMass(prior, e1);
  const double p2 = EventMass(prior, e2);
  if (IsZeroWeight(p1) || IsZeroWeight(p2)) {
    throw WellDefinednessError("odds ratio: zero prior odds");
  }
  const FiniteMeasure post = DatasetPosterior(u, prior, m, t);
  const double q1 = EventMass(post, e1);
  const double q2 = EventMass(post, e2);
  if (IsZeroWeight(q1) && IsZeroWeight(q2)) {
    throw WellDefinednessError(
        "odds ratio: posterior places no mass on either conjecture");
  }
  OddsRatioResult r;
  if (IsZeroWeight(q2)) {
    r.ratio = kInfinity;
  } else {
    r.ratio = (q1 / q2) * (p2 / p1);
  }
  r.within = r.ratio >= std::exp(-epsilon) - tol &&
             r.ratio <= std::exp(epsilon) + tol;
  return r;
}

Partition::Partition(const DataUniverse& u, std::vector<EventSet> blocks_in,
                     std::vector<std::string> labels_in)
    : blocks(std::move(blocks_in)), labels(std::move(labels_in)) {
  if (blocks.empty()) throw InputError("partition: no blocks");
  std::vector<char> seen(u.size(), 0);
  for (const EventSet& b : blocks) {
    for (const std::size_t i : b) {
      if (i >= u.size()) throw InputError("partition: index out of range");
      if (seen[i]) throw InputError("partition: blocks overlap");
      seen[i] = 1;
    }
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!seen[i]) {
      throw InputError("partition: dataset " + u.label(i) +
                       " is in no block");
    }
  }
  if (labels.empty()) {
    labels.reserve(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      labels.push_back(std::to_string(k));
    }
  }
  if (labels.size() != blocks.size()) {
    throw InputError("partition: one label per block required");
  }
}

Partition RecordPartition(const DataUniverse& u, std::size_t record_index) {
  std::vector<EventSet> blocks;
  std::vector<std::string> labels;
  for (std::int32_t r = 0; r < static_cast<std::int32_t>(u.alphabet().size());
       ++r) {
    blocks.push_back(RecordValueEvent(u, record_index, r));
    labels.push_back(u.alphabet()[static_cast<std::size_t>(r)]);
  }
  return Partition(u, std::move(blocks), std::move(labels));
}

FiniteMeasure MarginalizeOnto(const Partition& p, const FiniteMeasure& mu) {
  std::vector<double> w(p.blocks.size(), 0.0);
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    for (const std::size_t i : p.blocks[k]) {
      if (i >= mu.size()) {
        throw InputError("marginalize: partition does not match the measure");
      }
      w[k] += mu.weight(i);
    }
  }
  return FiniteMeasure(p.labels, std::move(w), mu.normalized());
}

bool DrnMembership(const DataUniverse& u, const FiniteMeasure& prior,
                   const Partition& p, const Mechanism& m, const Outcome& t,
                   double epsilon, double tol) {
  const FiniteMeasure prior_z = MarginalizeOnto(p, prior);
  const FiniteMeasure post_z =
      MarginalizeOnto(p, DatasetPosterior(u, prior, m, t));
  return DrnContains(prior_z, epsilon, post_z, tol);
}

BoundPair PufferfishPowerBounds(double alpha, double epsilon, double dps) {
  return PowerBoundsTwoSided(alpha, epsilon, dps);
}

PufferfishInstantiation DpCorrespondenceInstantiation(const DataUniverse& u,
                                                      double epsilon) {
  if (u.mode() != DatasetMode::kVector ||
      u.metric() != MetricKind::kHamming || u.lengths().size() != 1) {
    throw InputError(
        "correspondence: need a fixed-length vector universe under the "
        "record-flip metric");
  }
  const int n = u.lengths().front();
  if (n < 1) throw InputError("correspondence: need records");
  PufferfishInstantiation in;
  in.universe = &u;
  in.epsilon = epsilon;
  const auto n_values = static_cast<std::int32_t>(u.alphabet().size());
  for (int i = 0; i < n; ++i) {
    std::vector<EventSet> events;
    events.reserve(static_cast<std::size_t>(n_values));
    for (std::int32_t r = 0; r < n_values; ++r) {
      events.push_back(RecordValueEvent(u, static_cast<std::size_t>(i), r));
    }
    for (std::int32_t r = 0; r < n_values; ++r) {
      for (std::int32_t s = 0; s < n_values; ++s) {
        ConjecturePair pair;
        pair.first = events[static_cast<std::size_t>(r)];
        pair.second = events[static_cast<std::size_t>(s)];
        in.pairs.push_back(std::move(pair));
      }
    }
  }
  return in;
}

std::vector<FiniteMeasure> SampleProductAttackers(const DataUniverse& u,
                                                  std::size_t count,
                                                  std::uint64_t seed) {
  if (u.mode() != DatasetMode::kVector || u.lengths().size() != 1) {
    throw InputError("product attackers: need a fixed-length vector universe");
  }
  const auto n = static_cast<std::size_t>(u.lengths().front());
  const std::size_t a = u.alphabet().size();
  const auto labels = u.labels();
  std::vector<FiniteMeasure> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    CounterRng rng(seed, /*stream=*/k);
    // One distribution per record position, uniform on the simplex.
    std::vector<std::vector<double>> q(n, std::vector<double>(a));
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t r = 0; r < a; ++r) {
        q[i][r] = rng.NextExponential();
        total += q[i][r];
      }
      for (std::size_t r = 0; r < a; ++r) q[i][r] /= total;
    }
    std::vector<double> w(u.size());
    double total = 0.0;
    for (std::size_t d = 0; d < u.size(); ++d) {
      const Dataset& x = u.dataset(d);
      double v = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        v *= q[i][static_cast<std::size_t>(x.records[i])];
      }
      w[d] = v;
      total += v;
    }
    for (double& v : w) v /= total;
    out.emplace_back(labels, std::move(w), /*normalized=*/true);
  }
  return out;
}

}  // namespace privbound
