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

#ifndef PRIVBOUND_MEASURES_H_
#define PRIVBOUND_MEASURES_H_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "privbound/numeric.h"

namespace privbound {

// Nonnegative measure on a finite outcome list. Outcome labels are distinct
// strings; weights below kWeightFloor are snapped to exact zero on
// construction. Normalization is a flag, not an invariant: a measure may
// carry any finite total mass, and `normalized` merely asserts (and checks)
// that the mass is 1 within kTolerance.
class FiniteMeasure {
 public:
  FiniteMeasure(std::vector<std::string> outcomes, std::vector<double> weights,
                bool normalized = false);
  FiniteMeasure(std::shared_ptr<const std::vector<std::string>> outcomes,
                std::vector<double> weights, bool normalized = false);

  static FiniteMeasure PointMass(
      std::shared_ptr<const std::vector<std::string>> outcomes,
      std::size_t index);
  static FiniteMeasure Uniform(
      std::shared_ptr<const std::vector<std::string>> outcomes);

  const std::vector<std::string>& outcomes() const { return *outcomes_; }
  const std::shared_ptr<const std::vector<std::string>>& outcomes_ptr() const {
    return outcomes_;
  }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }
  bool normalized() const { return normalized_; }

  double TotalMass() const;

  // True when the two measures are defined over the same outcome list
  // (pointer-equal fast path, element-wise fallback).
  bool SameOutcomes(const FiniteMeasure& other) const;

  // Index of the outcome with this label, or size() if absent.
  std::size_t IndexOf(const std::string& label) const;

  // Pointwise equality of weights within tol over a shared outcome list.
  bool NearlyEquals(const FiniteMeasure& other, double tol = kTolerance) const;

 private:
  std::shared_ptr<const std::vector<std::string>> outcomes_;
  std::vector<double> weights_;
  bool normalized_ = false;
};

// Order interval of measures: every measure mu with lower <= mu <= upper
// pointwise. Construction validates the pointwise ordering.
struct MeasureInterval {
  MeasureInterval(FiniteMeasure lower_bound, FiniteMeasure upper_bound);
  FiniteMeasure lower;
  FiniteMeasure upper;
};

// Laplace density on the real line with the given location and scale.
// The one continuous-output family with closed-form metric values; other
// continuous families are rejected as unsupported by the callers that would
// need them.
struct ShiftedLaplace {
  double location = 0.0;
  double scale = 1.0;
  double Density(double t) const;
  double LogDensity(double t) const;
};

// Worst-case log ratio of the two measures over all outcome sets. For finite
// measures this equals the maximum over single outcomes (a ratio of sums lies
// between the smallest and largest per-outcome ratio), which is how it is
// computed; the subset-enumeration equivalence is exercised in tests.
// Ratio conventions: 0/0 = 1; one-sided zero means the supports differ and
// the distance is +infinity.
double MultDistance(const FiniteMeasure& mu, const FiniteMeasure& nu);

// Closed form for two Laplace densities: |location difference| / scale when
// the scales match; +infinity otherwise (the log ratio diverges in the tail).
double MultDistance(const ShiftedLaplace& f, const ShiftedLaplace& g);

// True when lower <= mu <= upper pointwise, each comparison slack by tol.
bool IntervalContains(const MeasureInterval& interval, const FiniteMeasure& mu,
                      double tol = kTolerance);

// The interval [e^{-radius} * center, e^{+radius} * center].
MeasureInterval MultBall(const FiniteMeasure& center, double radius);

// Worst-case log change of density ratios: the spread between the largest and
// smallest per-outcome log ratio. +infinity when the measures are not
// mutually absolutely continuous. Invariant under rescaling either argument
// and under the choice of dominating measure.
double DensityRatioMetric(const FiniteMeasure& mu, const FiniteMeasure& nu);

// Same metric computed through explicitly supplied dominating weights
// (each positive wherever mu or nu is): densities mu_i/tau_i and nu_i/tau_i
// are formed first, then the ratio spread. Exists so that independence from
// the dominating measure is a testable property rather than an assumption.
double DensityRatioMetricDominated(const FiniteMeasure& mu,
                                   const FiniteMeasure& nu,
                                   const std::vector<double>& tau);

// Laplace pair: 2 * |location difference| / scale for equal scales,
// +infinity otherwise.
double DensityRatioMetric(const ShiftedLaplace& f, const ShiftedLaplace& g);

// Membership in the density-ratio neighborhood of `center` with the given
// radius: DensityRatioMetric(center, mu) <= radius + tol.
bool DrnContains(const FiniteMeasure& center, double radius,
                 const FiniteMeasure& mu, double tol = kTolerance);

// Scales all weights by c >= 0. The normalized flag survives only for c == 1.
FiniteMeasure Scale(const FiniteMeasure& mu, double c);

}  // namespace privbound

#endif  // PRIVBOUND_MEASURES_H_
