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

#include "privbound/inference.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "privbound/errors.h"
#include "privbound/kernels.h"
#include "privbound/numeric.h"

namespace privbound {

double OutcomeDensity(const Mechanism& m, const Dataset& x, const Outcome& t) {
  try {
    if (t.discrete()) {
      const auto& dm = dynamic_cast<const DiscreteMechanism&>(m);
      return dm.Mass(x, t.index());
    }
    const auto& rm = dynamic_cast<const RealOutputMechanism&>(m);
    return rm.Density(x, t.value());
  } catch (const InputError&) {
    return 0.0;  // x is outside the mechanism's domain
  }
}

DataModel::DataModel(const DataUniverse* universe,
                     std::vector<std::string> thetas,
                     std::vector<FiniteMeasure> laws)
    : universe_(universe), thetas_(std::move(thetas)), laws_(std::move(laws)) {
  if (universe_ == nullptr) throw InputError("model: null universe");
  if (thetas_.empty()) throw InputError("model: no hypotheses");
  if (laws_.size() != thetas_.size()) {
    throw InputError("model: one law per hypothesis required");
  }
  for (std::size_t k = 0; k + 1 < thetas_.size(); ++k) {
    for (std::size_t l = k + 1; l < thetas_.size(); ++l) {
      if (thetas_[k] == thetas_[l]) {
        throw InputError("model: duplicate hypothesis label " + thetas_[k]);
      }
    }
  }
  const auto labels = universe_->labels();
  for (std::size_t k = 0; k < laws_.size(); ++k) {
    if (!laws_[k].normalized() ||
        std::abs(laws_[k].TotalMass() - 1.0) > 1e-9) {
      throw InputError("model: law for " + thetas_[k] + " is not normalized");
    }
    if (laws_[k].outcomes_ptr() != labels &&
        laws_[k].outcomes() != *labels) {
      throw InputError("model: law for " + thetas_[k] +
                       " is not indexed by the universe");
    }
  }
}

std::size_t DataModel::IndexOfTheta(const std::string& label) const {
  for (std::size_t k = 0; k < thetas_.size(); ++k) {
    if (thetas_[k] == label) return k;
  }
  throw InputError("model: unknown hypothesis " + label);
}

EventSet SupportGiven(const DataModel& model, std::size_t theta,
                      const Mechanism& m, const Outcome& t) {
  const DataUniverse& u = model.universe();
  const FiniteMeasure& law = model.law(theta);
  EventSet s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (IsZeroWeight(law.weight(i))) continue;
    if (IsZeroWeight(OutcomeDensity(m, u.dataset(i), t))) continue;
    s.push_back(i);
  }
  return s;
}

EventSet SupportGiven(const DataModel& model, const FiniteMeasure& prior,
                      const Mechanism& m, const Outcome& t) {
  if (prior.size() != model.n_thetas()) {
    throw InputError("support: prior is not over the model's hypotheses");
  }
  std::vector<char> in(model.universe().size(), 0);
  for (std::size_t k = 0; k < model.n_thetas(); ++k) {
    if (IsZeroWeight(prior.weight(k))) continue;
    for (const std::size_t i : SupportGiven(model, k, m, t)) in[i] = 1;
  }
  EventSet s;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) s.push_back(i);
  }
  return s;
}

bool ConnectednessCheck(const DataUniverse& u, const EventSet& s) {
  if (s.size() <= 1) return true;
  const auto ids = u.ComponentIds();
  for (const std::size_t i : s) {
    if (ids[i] != ids[s.front()]) return false;
  }
  return true;
}

std::vector<EventSet> SplitByComponent(const DataUniverse& u,
                                       const EventSet& s) {
  const auto ids = u.ComponentIds();
  std::vector<std::pair<std::size_t, std::size_t>> tagged;  // (component, i)
  tagged.reserve(s.size());
  for (const std::size_t i : s) tagged.emplace_back(ids[i], i);
  std::sort(tagged.begin(), tagged.end());
  std::vector<EventSet> parts;
  for (const auto& [c, i] : tagged) {
    if (parts.empty() || ids[parts.back().front()] != c) {
      parts.emplace_back();
    }
    parts.back().push_back(i);
  }
  return parts;
}

double MarginalLikelihood(const DataModel& model, std::size_t theta,
                          const Mechanism& m, const Outcome& t) {
  const DataUniverse& u = model.universe();
  const FiniteMeasure& law = model.law(theta);
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = law.weight(i);
    if (IsZeroWeight(w)) continue;
    total += w * OutcomeDensity(m, u.dataset(i), t);
  }
  return total;
}

double PriorPredictive(const DataModel& model, const FiniteMeasure& prior,
                       const Mechanism& m, const Outcome& t) {
  if (prior.size() != model.n_thetas()) {
    throw InputError("predictive: prior is not over the model's hypotheses");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < model.n_thetas(); ++k) {
    const double w = prior.weight(k);
    if (IsZeroWeight(w)) continue;
    total += w * MarginalLikelihood(model, k, m, t);
  }
  return total;
}

namespace {

void RequireUsableSupport(const DataUniverse& u, const EventSet& support,
                          const char* where) {
  if (support.empty()) {
    throw UndefinedBoundError(
        "empty-support", std::string(where) + ": no dataset can produce the "
                                              "outcome, bounds are undefined");
  }
  if (!ConnectednessCheck(u, support)) {
    throw UndefinedBoundError(
        "disconnected-support",
        std::string(where) +
            ": support spans several components; bound each component "
            "separately and combine");
  }
}

void CheckEpsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InputError("epsilon must be finite and >= 0");
  }
}

}  // namespace

BoundPair AnchorBounds(double anchor_density, double epsilon, double d_star) {
  const double e = LipschitzProduct(epsilon, d_star);
  BoundPair b;
  b.lower = anchor_density * std::exp(-e);
  b.upper = LipschitzProduct(std::exp(e), anchor_density);
  return b;
}

BoundPair MarginalBounds(const Mechanism& m, const DataUniverse& u,
                         const EventSet& support, std::size_t x_star,
                         double epsilon, const Outcome& t, BoundContext* ctx) {
  CheckEpsilon(epsilon);
  RequireUsableSupport(u, support, "marginal bounds");
  if (std::find(support.begin(), support.end(), x_star) == support.end()) {
    throw InputError("marginal bounds: anchor is not in the support");
  }
  double d_star = 0.0;
  for (const std::size_t j : support) {
    d_star = std::max(d_star, u.Distance(x_star, j));
  }
  if (ctx != nullptr) {
    ctx->epsilon = epsilon;
    ctx->d_star = d_star;
    ctx->d_double_star = d_star;
  }
  return AnchorBounds(OutcomeDensity(m, u.dataset(x_star), t), epsilon,
                      d_star);
}

BoundPair MarginalEnvelopeAt(const Mechanism& m, const DataUniverse& u,
                             const EventSet& support, double epsilon,
                             const Outcome& t) {
  CheckEpsilon(epsilon);
  RequireUsableSupport(u, support, "marginal envelope");
  const auto radii = AnchorRadii(u, support);
  BoundPair out;
  out.lower = 0.0;
  out.upper = kInfinity;
  for (std::size_t k = 0; k < support.size(); ++k) {
    const BoundPair b = AnchorBounds(
        OutcomeDensity(m, u.dataset(support[k]), t), epsilon, radii[k]);
    out.lower = std::max(out.lower, b.lower);
    out.upper = std::min(out.upper, b.upper);
  }
  return out;
}

Envelope MarginalEnvelopeGrid(const RealOutputMechanism& m,
                              const DataUniverse& u, const EventSet& support,
                              double epsilon,
                              const std::vector<double>& grid) {
  CheckEpsilon(epsilon);
  RequireUsableSupport(u, support, "marginal envelope");
  const std::size_t na = support.size();
  const std::size_t np = grid.size();
  std::vector<double> densities(na * np);
  for (std::size_t a = 0; a < na; ++a) {
    const Dataset& x = u.dataset(support[a]);
    for (std::size_t p = 0; p < np; ++p) {
      densities[a * np + p] = m.Density(x, grid[p]);
    }
  }
  const auto radii = AnchorRadii(u, support);
  const auto points =
      EnvelopeFromDensities(densities, na, np, radii, epsilon);
  Envelope env;
  env.lower.reserve(np);
  env.upper.reserve(np);
  for (const EnvelopePoint& pt : points) {
    env.lower.push_back(pt.lower);
    env.upper.push_back(pt.upper);
  }
  return env;
}

Envelope MarginalEnvelopeOutcomes(const DiscreteMechanism& m,
                                  const DataUniverse& u,
                                  const EventSet& support, double epsilon) {
  CheckEpsilon(epsilon);
  RequireUsableSupport(u, support, "marginal envelope");
  const std::size_t na = support.size();
  const std::size_t np = m.output_labels()->size();
  std::vector<double> densities(na * np);
  for (std::size_t a = 0; a < na; ++a) {
    const FiniteMeasure law = m.Distribution(u.dataset(support[a]));
    for (std::size_t p = 0; p < np; ++p) {
      densities[a * np + p] = law.weight(p);
    }
  }
  const auto radii = AnchorRadii(u, support);
  const auto points =
      EnvelopeFromDensities(densities, na, np, radii, epsilon);
  Envelope env;
  env.lower.reserve(np);
  env.upper.reserve(np);
  for (const EnvelopePoint& pt : points) {
    env.lower.push_back(pt.lower);
    env.upper.push_back(pt.upper);
  }
  return env;
}

Envelope CombineComponentEnvelopes(const std::vector<Envelope>& parts) {
  if (parts.empty()) throw InputError("combine: no component envelopes");
  Envelope out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].lower.size() != out.lower.size()) {
      throw InputError("combine: envelope grids differ");
    }
    for (std::size_t p = 0; p < out.lower.size(); ++p) {
      out.lower[p] = std::min(out.lower[p], parts[k].lower[p]);
      out.upper[p] = std::max(out.upper[p], parts[k].upper[p]);
    }
  }
  return out;
}

BoundPair RrMarginalBounds(double epsilon, int n) {
  CheckEpsilon(epsilon);
  if (n < 0) throw InputError("rr bounds: need n >= 0");
  // n = 0 is the empty product: both endpoints collapse to 1.
  const double denom = std::pow(std::exp(epsilon) + 1.0, n);
  BoundPair b;
  b.lower = 1.0 / denom;
  b.upper = std::exp(epsilon * n) / denom;
  return b;
}

namespace {

void CheckAlpha(double alpha) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw InputError("alpha must lie in [0, 1]");
  }
}

void CheckDistance(double d) {
  if (std::isnan(d) || d < 0.0) {
    throw InputError("distance must be >= 0 (possibly infinite)");
  }
}

}  // namespace

double PowerBound(double alpha, double epsilon, double d_double_star) {
  CheckAlpha(alpha);
  CheckEpsilon(epsilon);
  CheckDistance(d_double_star);
  const double factor = std::exp(LipschitzProduct(epsilon, d_double_star));
  return std::min(1.0, LipschitzProduct(alpha, factor));
}

BoundPair PowerBoundsTwoSided(double alpha, double epsilon,
                              double d_double_star) {
  CheckAlpha(alpha);
  CheckEpsilon(epsilon);
  CheckDistance(d_double_star);
  const double factor = std::exp(LipschitzProduct(epsilon, d_double_star));
  const double miss = 1.0 - alpha;
  BoundPair b;
  // alpha / factor and miss / factor are plain divisions: x / inf == 0 keeps
  // both envelopes sound. The products grow with factor, so an infinite
  // factor must dominate: LipschitzProduct keeps 0 * inf from collapsing the
  // upper envelope, while the lower envelope may drop to its floor.
  b.lower = std::max(alpha / factor, 1.0 - miss * factor);
  b.upper = std::min(LipschitzProduct(alpha, factor), 1.0 - miss / factor);
  b.lower = std::clamp(b.lower, 0.0, 1.0);
  b.upper = std::clamp(b.upper, 0.0, 1.0);
  if (std::isnan(b.lower)) b.lower = 0.0;  // miss * inf with miss == 0
  if (std::isnan(b.upper)) b.upper = 1.0;
  b.upper = std::max(b.upper, b.lower);
  return b;
}

BoundPair PosteriorBounds(double prior_value, double epsilon,
                          double d_double_star) {
  CheckEpsilon(epsilon);
  CheckDistance(d_double_star);
  if (!(prior_value >= 0.0) || !std::isfinite(prior_value)) {
    throw InputError("posterior bounds: prior value must be finite and >= 0");
  }
  const double e = LipschitzProduct(epsilon, d_double_star);
  BoundPair b;
  b.lower = prior_value * std::exp(-e);
  b.upper = LipschitzProduct(prior_value, std::exp(e));
  return b;
}

double PosteriorDiameter(const DataUniverse& u, const EventSet& support) {
  if (support.empty()) {
    throw UndefinedBoundError("empty-support",
                              "posterior distance: empty support");
  }
  return SetDiameter(u, support);
}

}  // namespace privbound
