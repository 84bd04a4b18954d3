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

#ifndef PRIVBOUND_PUFFERFISH_H_
#define PRIVBOUND_PUFFERFISH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privbound/inference.h"
#include "privbound/measures.h"
#include "privbound/mechanisms.h"
#include "privbound/universe.h"

namespace privbound {

// Two competing conjectures about the dataset, as subsets of one universe.
struct ConjecturePair {
  EventSet first;
  EventSet second;
};

// A privacy requirement: every listed attacker prior, conditioned on either
// side of any listed conjecture pair, must induce privatised-data laws within
// multiplicative budget epsilon of each other.
struct PufferfishInstantiation {
  const DataUniverse* universe = nullptr;
  std::vector<FiniteMeasure> attackers;  // normalized, over universe labels
  std::vector<ConjecturePair> pairs;
  double epsilon = 0.0;
};

// Bayes conditioning of a dataset prior on an event: renormalized
// restriction. Zero event mass raises WellDefinednessError.
FiniteMeasure Condition(const FiniteMeasure& prior, const EventSet& event);

// Event probability under a prior.
double EventMass(const FiniteMeasure& prior, const EventSet& event);

// Law of the released output when the dataset is drawn from `prior`:
// the mixture sum_x prior(x) * Distribution(x).
FiniteMeasure PrivatisedDataProb(const DataUniverse& u,
                                 const FiniteMeasure& prior,
                                 const DiscreteMechanism& m);
// Mixture density values on a grid for real-output mechanisms.
std::vector<double> PrivatisedDensityGrid(const DataUniverse& u,
                                          const FiniteMeasure& prior,
                                          const RealOutputMechanism& m,
                                          const std::vector<double>& grid);

struct PufferfishWitness {
  std::size_t attacker = 0;
  std::size_t pair = 0;
  std::size_t outcome = 0;
  std::string outcome_label;
  double log_ratio = 0.0;
};

struct PufferfishVerdict {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;  // ill-defined: an event of zero prior mass
  std::optional<PufferfishWitness> witness;
};

// Checks the budget for every attacker and every well-defined conjecture
// pair; ill-defined pairs are skipped and counted. The witness is the first
// violation in (attacker, pair) order regardless of evaluation order.
PufferfishVerdict PufferfishSatisfiedSerial(const PufferfishInstantiation& in,
                                            const DiscreteMechanism& m,
                                            double tol = kTolerance);
PufferfishVerdict PufferfishSatisfied(const PufferfishInstantiation& in,
                                      const DiscreteMechanism& m,
                                      double tol = kTolerance);

// Same verdict computed through interval containment: each conditioned law
// must lie in the multiplicative ball of radius epsilon around the other.
PufferfishVerdict PufferfishByIntervalContainment(
    const PufferfishInstantiation& in, const DiscreteMechanism& m,
    double tol = kTolerance);
// Same verdict through per-outcome ratio comparisons.
PufferfishVerdict PufferfishByPointwiseRatios(const PufferfishInstantiation& in,
                                              const DiscreteMechanism& m,
                                              double tol = kTolerance);

// Graph over conditioned attacker priors: vertices are the distinct measures
// obtained by conditioning on events of the listed pairs (measure equality
// within kTolerance merges vertices), with an edge for every well-defined
// conditioning of one source on the two sides of a pair. With depth > 1 the
// construction is iterated, treating current vertices as sources.
struct ConditionedGraph {
  std::vector<FiniteMeasure> vertices;
  std::vector<std::vector<std::size_t>> adjacency;

  // Vertex holding this measure (within kTolerance), or vertices.size().
  std::size_t Find(const FiniteMeasure& prior) const;
};

ConditionedGraph BuildConditionedGraph(const PufferfishInstantiation& in,
                                       int depth = 1);

// Shortest-path distance between two conditioned priors in the graph;
// +infinity when disconnected, InputError when an argument is no vertex.
double DpsDistance(const ConditionedGraph& g, const FiniteMeasure& a,
                   const FiniteMeasure& b);
double DpsDistance(const PufferfishInstantiation& in, const FiniteMeasure& a,
                   const FiniteMeasure& b, int depth = 1);

// Exact dataset posterior given one released outcome. Marginal probability
// zero raises WellDefinednessError.
FiniteMeasure DatasetPosterior(const DataUniverse& u,
                               const FiniteMeasure& prior, const Mechanism& m,
                               const Outcome& t);

struct OddsRatioResult {
  double ratio = 1.0;  // (posterior odds of first vs second) / (prior odds)
  bool within = false;
};

// Ratio of posterior to prior odds between two conjectures after observing
// outcome t, and whether it lies in [e^-eps, e^+eps] within tol.
OddsRatioResult OddsRatioCheck(const DataUniverse& u,
                               const FiniteMeasure& prior, const EventSet& e1,
                               const EventSet& e2, const Mechanism& m,
                               const Outcome& t, double epsilon,
                               double tol = 1e-9);

// Disjoint events covering the whole universe.
struct Partition {
  Partition(const DataUniverse& u, std::vector<EventSet> blocks,
            std::vector<std::string> labels = {});
  std::vector<EventSet> blocks;
  std::vector<std::string> labels;
};

// Partition by the value of one record (vector-mode universes).
Partition RecordPartition(const DataUniverse& u, std::size_t record_index);

// Pushforward of a dataset measure onto the partition blocks.
FiniteMeasure MarginalizeOnto(const Partition& p, const FiniteMeasure& mu);

// Whether the partition-marginalized posterior stays in the density-ratio
// neighborhood of radius epsilon around the marginalized prior.
bool DrnMembership(const DataUniverse& u, const FiniteMeasure& prior,
                   const Partition& p, const Mechanism& m, const Outcome& t,
                   double epsilon, double tol = kTolerance);

// Power envelope between two attacker priors at graph distance dps:
// the two-sided bound with factor e^(eps * dps).
BoundPair PufferfishPowerBounds(double alpha, double epsilon, double dps);

// The instantiation whose conjecture pairs are all ordered pairs of
// single-record value events, per record position: for each position i and
// record values r, r', the pair ({x : x_i = r}, {x : x_i = r'}). Attackers
// are left empty for the caller to fill. Requires a fixed-length vector-mode
// product universe.
PufferfishInstantiation DpCorrespondenceInstantiation(const DataUniverse& u,
                                                      double epsilon);

// Deterministic sample of `count` product priors (records independent, each
// record's distribution drawn uniformly from the simplex).
std::vector<FiniteMeasure> SampleProductAttackers(const DataUniverse& u,
                                                  std::size_t count,
                                                  std::uint64_t seed);

}  // namespace privbound

#endif  // PRIVBOUND_PUFFERFISH_H_
