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

#include "privbound/measures.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "privbound/errors.h"

namespace privbound {
namespace {

void ValidateWeights(const std::vector<std::string>& outcomes,
                     std::vector<double>& weights, bool normalized) {
  if (outcomes.size() != weights.size()) {
    throw InputError("measure: outcome and weight counts differ");
  }
  std::unordered_set<std::string> seen;
  seen.reserve(outcomes.size());
  for (const auto& label : outcomes) {
    if (!seen.insert(label).second) {
      throw InputError("measure: duplicate outcome label '" + label + "'");
    }
  }
  double total = 0.0;
  for (double& w : weights) {
    if (!(w >= 0.0) || std::isinf(w)) {
      throw InputError("measure: weights must be finite and nonnegative");
    }
    if (IsZeroWeight(w)) w = 0.0;
    total += w;
  }
  if (normalized && !NearlyEqual(total, 1.0)) {
    throw InputError("measure: normalized flag set but total mass is not 1");
  }
}

}  // namespace

FiniteMeasure::FiniteMeasure(std::vector<std::string> outcomes,
                             std::vector<double> weights, bool normalized)
    : FiniteMeasure(std::make_shared<const std::vector<std::string>>(
                        std::move(outcomes)),
                    std::move(weights), normalized) {}

FiniteMeasure::FiniteMeasure(
    std::shared_ptr<const std::vector<std::string>> outcomes,
    std::vector<double> weights, bool normalized)
    : outcomes_(std::move(outcomes)),
      weights_(std::move(weights)),
      normalized_(normalized) {
  if (outcomes_ == nullptr) throw InputError("measure: null outcome list");
  ValidateWeights(*outcomes_, weights_, normalized_);
}

FiniteMeasure FiniteMeasure::PointMass(
    std::shared_ptr<const std::vector<std::string>> outcomes,
    std::size_t index) {
  if (outcomes == nullptr || index >= outcomes->size()) {
    throw InputError("point mass: index outside the outcome list");
  }
  std::vector<double> w(outcomes->size(), 0.0);
  w[index] = 1.0;
  return FiniteMeasure(std::move(outcomes), std::move(w), true);
}

FiniteMeasure FiniteMeasure::Uniform(
    std::shared_ptr<const std::vector<std::string>> outcomes) {
  if (outcomes == nullptr || outcomes->empty()) {
    throw InputError("uniform measure: empty outcome list");
  }
  std::vector<double> w(outcomes->size(), 1.0 / outcomes->size());
  return FiniteMeasure(std::move(outcomes), std::move(w), true);
}

double FiniteMeasure::TotalMass() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return total;
}

bool FiniteMeasure::SameOutcomes(const FiniteMeasure& other) const {
  if (outcomes_ == other.outcomes_) return true;
  return *outcomes_ == *other.outcomes_;
}

std::size_t FiniteMeasure::IndexOf(const std::string& label) const {
  const auto& list = *outcomes_;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == label) return i;
  }
  return list.size();
}

bool FiniteMeasure::NearlyEquals(const FiniteMeasure& other, double tol) const {
  if (!SameOutcomes(other)) return false;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (std::abs(weights_[i] - other.weights_[i]) > tol) return false;
  }
  return true;
}

MeasureInterval::MeasureInterval(FiniteMeasure lower_bound,
                                 FiniteMeasure upper_bound)
    : lower(std::move(lower_bound)), upper(std::move(upper_bound)) {
  if (!lower.SameOutcomes(upper)) {
    throw InputError("measure interval: endpoint outcome lists differ");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower.weight(i) > upper.weight(i)) {
      throw InputError("measure interval: lower endpoint exceeds upper");
    }
  }
}

double ShiftedLaplace::Density(double t) const {
  return std::exp(LogDensity(t));
}

double ShiftedLaplace::LogDensity(double t) const {
  return -std::log(2.0 * scale) - std::abs(t - location) / scale;
}

double MultDistance(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  if (!mu.SameOutcomes(nu)) {
    throw InputError("mult distance: outcome lists differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    worst = std::max(worst, AbsLogRatio(mu.weight(i), nu.weight(i)));
    if (std::isinf(worst)) return kInfinity;
  }
  return worst;
}

double MultDistance(const ShiftedLaplace& f, const ShiftedLaplace& g) {
  if (!(f.scale > 0.0) || !(g.scale > 0.0)) {
    throw InputError("mult distance: Laplace scale must be positive");
  }
  if (f.scale != g.scale) return kInfinity;
  return std::abs(f.location - g.location) / f.scale;
}

bool IntervalContains(const MeasureInterval& interval, const FiniteMeasure& mu,
                      double tol) {
  if (!interval.lower.SameOutcomes(mu)) {
    throw InputError("interval containment: outcome lists differ");
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double w = mu.weight(i);
    if (w < interval.lower.weight(i) - tol) return false;
    if (w > interval.upper.weight(i) + tol) return false;
  }
  return true;
}

MeasureInterval MultBall(const FiniteMeasure& center, double radius) {
  if (!(radius >= 0.0)) throw InputError("mult ball: negative radius");
  return MeasureInterval(Scale(center, std::exp(-radius)),
                         Scale(center, std::exp(radius)));
}

namespace {

// Spread of the per-outcome log density ratios; +infinity on any one-sided
// zero, 0 when no outcome carries mass of either measure.
double RatioSpread(const std::vector<double>& f, const std::vector<double>& g) {
  double max_lr = -kInfinity;
  double min_lr = kInfinity;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const bool fz = IsZeroWeight(f[i]);
    const bool gz = IsZeroWeight(g[i]);
    if (fz && gz) continue;
    if (fz || gz) return kInfinity;
    const double lr = std::log(f[i]) - std::log(g[i]);
    max_lr = std::max(max_lr, lr);
    min_lr = std::min(min_lr, lr);
  }
  if (max_lr == -kInfinity) return 0.0;
  return max_lr - min_lr;
}

}  // namespace

double DensityRatioMetric(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  if (!mu.SameOutcomes(nu)) {
    throw InputError("density ratio metric: outcome lists differ");
  }
  return RatioSpread(mu.weights(), nu.weights());
}

double DensityRatioMetricDominated(const FiniteMeasure& mu,
                                   const FiniteMeasure& nu,
                                   const std::vector<double>& tau) {
  if (!mu.SameOutcomes(nu)) {
    throw InputError("density ratio metric: outcome lists differ");
  }
  if (tau.size() != mu.size()) {
    throw InputError("density ratio metric: dominating weight count differs");
  }
  std::vector<double> f(mu.size()), g(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (IsZeroWeight(tau[i])) {
      if (!IsZeroWeight(mu.weight(i)) || !IsZeroWeight(nu.weight(i))) {
        throw InputError(
            "density ratio metric: dominating weight vanishes on the support");
      }
      f[i] = 0.0;
      g[i] = 0.0;
      continue;
    }
    f[i] = mu.weight(i) / tau[i];
    g[i] = nu.weight(i) / tau[i];
  }
  return RatioSpread(f, g);
}

double DensityRatioMetric(const ShiftedLaplace& f, const ShiftedLaplace& g) {
  if (!(f.scale > 0.0) || !(g.scale > 0.0)) {
    throw InputError("density ratio metric: Laplace scale must be positive");
  }
  if (f.scale != g.scale) return kInfinity;
  return 2.0 * std::abs(f.location - g.location) / f.scale;
}

bool DrnContains(const FiniteMeasure& center, double radius,
                 const FiniteMeasure& mu, double tol) {
  if (!(radius >= 0.0)) throw InputError("drn membership: negative radius");
  return DensityRatioMetric(center, mu) <= radius + tol;
}

FiniteMeasure Scale(const FiniteMeasure& mu, double c) {
  if (!(c >= 0.0) || std::isinf(c)) {
    throw InputError("scale: factor must be finite and nonnegative");
  }
  std::vector<double> w = mu.weights();
  for (double& x : w) x *= c;
  return FiniteMeasure(mu.outcomes_ptr(), std::move(w),
                       c == 1.0 && mu.normalized());
}

}  // namespace privbound
