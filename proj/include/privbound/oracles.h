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

#ifndef PRIVBOUND_ORACLES_H_
#define PRIVBOUND_ORACLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "privbound/inference.h"
#include "privbound/measures.h"
#include "privbound/mechanisms.h"

// Brute-force and quadrature references that the bound computations are
// validated against. Everything here is exact (up to quadrature) and
// independent of the envelope machinery.

namespace privbound {

struct QuadratureGrid {
  QuadratureGrid(std::vector<double> points, std::vector<double> weights);

  // Points lo+step, lo+2*step, ..., up to hi, each weighted by step
  // (midpoint-style rectangle rule on the half-open interval (lo, hi]).
  static QuadratureGrid UniformOpenLow(double lo, double hi, double step);
  // Trapezoid weights for arbitrary sorted points.
  static QuadratureGrid Trapezoid(std::vector<double> points);

  double Integrate(const std::vector<double>& values) const;

  std::vector<double> points;
  std::vector<double> weights;
};

struct TestResult {
  double size = 0.0;
  double power = 0.0;
  double threshold = 0.0;              // likelihood ratio or output cutoff
  double boundary_probability = 0.0;   // rejection probability at the cutoff
  std::string description;
};

// Most powerful size-alpha randomized test between two hypotheses of the
// model, by likelihood-ratio ordering of the finite outcome space with
// randomization at the boundary outcome. Size equals alpha exactly.
TestResult ExactNpPower(const DiscreteMechanism& m, const DataModel& model,
                        std::size_t theta0, std::size_t theta1, double alpha);

// Closed-form most powerful test between Laplace(0, scale) and
// Laplace(separation, scale), rejecting above a threshold. Needs
// 0 < alpha < 1/2 so the threshold lands at or above the null location.
TestResult LaplaceNpPower(double scale, double separation, double alpha);

// Exact Bayes posterior over the model's hypotheses given one outcome.
// All-zero likelihood raises WellDefinednessError.
FiniteMeasure ExactPosterior(const DataModel& model,
                             const FiniteMeasure& prior, const Mechanism& m,
                             const Outcome& t);

// Density and mass helpers (log-gamma based, stable for large arguments).
double GammaPdf(double x, double shape, double rate);
double PoissonPmf(long long k, double mean);
double LaplacePdf(double t, double location, double scale);

// Smallest count m (doubled for safety) whose Poisson upper-tail Chernoff
// bound exp(-mean) * (e * mean / m)^m falls below `tail`.
long long PoissonTailCutoff(double max_mean, double tail = 1e-12);

// Posterior density on the grid for the hierarchy
//   theta ~ Gamma(shape, rate), x | theta ~ Poisson(theta),
//   t | x ~ Laplace(clamp(x, a0, a1), (a1 - a0) / eps),
// by truncated summation over x and quadrature normalization.
std::vector<double> GammaPoissonLaplacePosterior(double shape, double rate,
                                                 double eps, int a0, int a1,
                                                 double t,
                                                 const QuadratureGrid& grid);

// One draw of t from the same hierarchy; deterministic in (seed, index).
double PriorPredictiveSample(double shape, double rate, double eps, int a0,
                             int a1, std::uint64_t seed, std::uint64_t index);

struct McEstimate {
  double estimate = 0.0;  // empirical frequency
  double radius = 0.0;    // 99% confidence radius around the estimate
  std::uint64_t hits = 0;
  std::uint64_t draws = 0;
};

// Empirical probability that a sampled outcome lands in the flagged set.
McEstimate McProbability(const DiscreteMechanism& m, const Dataset& x,
                         const std::vector<char>& hit, std::uint64_t n_draws,
                         std::uint64_t seed);
// Empirical probability of [lo, hi) for a real-output mechanism.
McEstimate McProbabilityReal(const RealOutputMechanism& m, const Dataset& x,
                             double lo, double hi, std::uint64_t n_draws,
                             std::uint64_t seed);

}  // namespace privbound

#endif  // PRIVBOUND_ORACLES_H_
