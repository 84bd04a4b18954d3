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

#ifndef PRIVBOUND_INFERENCE_H_
#define PRIVBOUND_INFERENCE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "privbound/measures.h"
#include "privbound/mechanisms.h"
#include "privbound/universe.h"

namespace privbound {

// One mechanism output: an outcome index of a discrete mechanism, or a point
// on the real line.
class Outcome {
 public:
  static Outcome Discrete(std::size_t index) {
    Outcome t;
    t.discrete_ = true;
    t.index_ = index;
    return t;
  }
  static Outcome Real(double value) {
    Outcome t;
    t.value_ = value;
    return t;
  }

  bool discrete() const { return discrete_; }
  std::size_t index() const { return index_; }
  double value() const { return value_; }

 private:
  Outcome() = default;
  bool discrete_ = false;
  std::size_t index_ = 0;
  double value_ = 0.0;
};

// Output probability (discrete) or density (real line) of dataset x at t.
// Datasets outside the mechanism's domain produce no outcomes: zero.
double OutcomeDensity(const Mechanism& m, const Dataset& x, const Outcome& t);

// Hypothesis-indexed dataset laws over one universe. Laws are normalized
// measures whose outcome lists are the universe's dataset labels.
class DataModel {
 public:
  DataModel(const DataUniverse* universe, std::vector<std::string> thetas,
            std::vector<FiniteMeasure> laws);

  const DataUniverse& universe() const { return *universe_; }
  std::size_t n_thetas() const { return thetas_.size(); }
  const std::vector<std::string>& thetas() const { return thetas_; }
  const std::string& theta(std::size_t k) const { return thetas_[k]; }
  const FiniteMeasure& law(std::size_t k) const { return laws_[k]; }
  std::size_t IndexOfTheta(const std::string& label) const;  // InputError

 private:
  const DataUniverse* universe_;
  std::vector<std::string> thetas_;
  std::vector<FiniteMeasure> laws_;
};

// Datasets that are possible under theta and can produce t: positive model
// weight and positive output density.
EventSet SupportGiven(const DataModel& model, std::size_t theta,
                      const Mechanism& m, const Outcome& t);
// Union over every theta with positive prior mass.
EventSet SupportGiven(const DataModel& model, const FiniteMeasure& prior,
                      const Mechanism& m, const Outcome& t);

// True when every pair of the set is at finite distance.
bool ConnectednessCheck(const DataUniverse& u, const EventSet& s);

// The set split along the universe's connected components (nonempty parts,
// ordered by smallest member).
std::vector<EventSet> SplitByComponent(const DataUniverse& u,
                                       const EventSet& s);

// Exact mixture value sum_x P_theta(x) * density(x, t).
double MarginalLikelihood(const DataModel& model, std::size_t theta,
                          const Mechanism& m, const Outcome& t);
// Exact prior predictive: sum over thetas of prior mass times marginal.
double PriorPredictive(const DataModel& model, const FiniteMeasure& prior,
                       const Mechanism& m, const Outcome& t);

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

// Budget and the distance quantities a bound was computed from.
// d_star: largest distance from the chosen anchor to the support.
// d_double_star: largest distance across the relevant pair of supports (or
// the support's diameter when both supports coincide).
struct BoundContext {
  double epsilon = 0.0;
  double d_star = 0.0;
  double d_double_star = 0.0;
};

// [p * exp(-eps * d_star), p * exp(+eps * d_star)] for an anchor density p.
BoundPair AnchorBounds(double anchor_density, double epsilon, double d_star);

// Single-anchor bounds on the marginal at t, anchored at universe index
// x_star (must belong to `support`). The support must be nonempty and
// connected; violations raise UndefinedBoundError.
BoundPair MarginalBounds(const Mechanism& m, const DataUniverse& u,
                         const EventSet& support, std::size_t x_star,
                         double epsilon, const Outcome& t,
                         BoundContext* ctx = nullptr);

// Best bounds over all anchors: max over anchors of the lower value, min of
// the upper value. Valid for every mixture supported on `support` when the
// mechanism is epsilon-DP.
BoundPair MarginalEnvelopeAt(const Mechanism& m, const DataUniverse& u,
                             const EventSet& support, double epsilon,
                             const Outcome& t);

struct Envelope {
  std::vector<double> lower;
  std::vector<double> upper;
};

// Envelope on a real grid (one entry per grid point).
Envelope MarginalEnvelopeGrid(const RealOutputMechanism& m,
                              const DataUniverse& u, const EventSet& support,
                              double epsilon, const std::vector<double>& grid);
// Envelope over every outcome of a discrete mechanism.
Envelope MarginalEnvelopeOutcomes(const DiscreteMechanism& m,
                                  const DataUniverse& u,
                                  const EventSet& support, double epsilon);

// Sound combination across components when the mixture weights between
// components are unknown: pointwise min of lowers, max of uppers.
Envelope CombineComponentEnvelopes(const std::vector<Envelope>& parts);

// Closed-form marginal envelope for binary randomized response on tuples of
// length n; independent of the outcome and of the mixing distribution:
// [1 / (e^eps + 1)^n, e^(n*eps) / (e^eps + 1)^n].
BoundPair RrMarginalBounds(double epsilon, int n);

// Largest power of a size-alpha test between hypotheses whose supports sit
// within distance d_double_star: min(1, alpha * e^(eps * d)). An infinite
// distance never relaxes the cap below 1 and a zero alpha with infinite
// distance still allows full power.
double PowerBound(double alpha, double epsilon, double d_double_star);

// Two-sided envelope on the same power, clamped to [0, 1]:
// [max(a/f, 1-(1-a)f), min(af, 1-(1-a)/f)] with f = e^(eps * d).
BoundPair PowerBoundsTwoSided(double alpha, double epsilon,
                              double d_double_star);

// [prior * exp(-eps * d), prior * exp(+eps * d)] on whichever scale (mass or
// density) `prior_value` is expressed.
BoundPair PosteriorBounds(double prior_value, double epsilon,
                          double d_double_star);

// Diameter of the support (for posterior distances); refuses empty supports.
double PosteriorDiameter(const DataUniverse& u, const EventSet& support);

}  // namespace privbound

#endif  // PRIVBOUND_INFERENCE_H_
