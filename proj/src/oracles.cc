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

#include "privbound/oracles.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "privbound/errors.h"
#include "privbound/kernels.h"
#include "privbound/numeric.h"
#include "privbound/rng.h"

namespace privbound {

QuadratureGrid::QuadratureGrid(std::vector<double> points_in,
                               std::vector<double> weights_in)
    : points(std::move(points_in)), weights(std::move(weights_in)) {
  if (points.empty() || points.size() != weights.size()) {
    throw InputError("quadrature: need matching nonempty points and weights");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]) || !(weights[i] > 0.0)) {
      throw InputError("quadrature: finite points and positive weights");
    }
    if (i > 0 && !(points[i] > points[i - 1])) {
      throw InputError("quadrature: points must be strictly increasing");
    }
  }
}

QuadratureGrid QuadratureGrid::UniformOpenLow(double lo, double hi,
                                              double step) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw InputError("quadrature: need hi > lo and step > 0");
  }
  std::vector<double> pts;
  const auto count = static_cast<std::size_t>(
      std::floor((hi - lo) / step + 0.5));
  pts.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    pts.push_back(lo + static_cast<double>(k) * step);
  }
  return QuadratureGrid(std::move(pts),
                        std::vector<double>(count, step));
}

QuadratureGrid QuadratureGrid::Trapezoid(std::vector<double> points_in) {
  if (points_in.size() < 2) {
    throw InputError("quadrature: trapezoid needs at least two points");
  }
  std::vector<double> w(points_in.size(), 0.0);
  for (std::size_t i = 0; i + 1 < points_in.size(); ++i) {
    const double h = points_in[i + 1] - points_in[i];
    w[i] += h / 2.0;
    w[i + 1] += h / 2.0;
  }
  return QuadratureGrid(std::move(points_in), std::move(w));
}

double QuadratureGrid::Integrate(const std::vector<double>& values) const {
  if (values.size() != points.size()) {
    throw InputError("quadrature: value count mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += weights[i] * values[i];
  }
  return total;
}

TestResult ExactNpPower(const DiscreteMechanism& m, const DataModel& model,
                        std::size_t theta0, std::size_t theta1, double alpha) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw InputError("np power: alpha must lie in [0, 1]");
  }
  const std::size_t n = m.output_labels()->size();
  std::vector<double> p0(n), p1(n);
  for (std::size_t t = 0; t < n; ++t) {
    p0[t] = MarginalLikelihood(model, theta0, m, Outcome::Discrete(t));
    p1[t] = MarginalLikelihood(model, theta1, m, Outcome::Discrete(t));
  }

  // Likelihood-ratio order, most extreme first; zero-cost outcomes (null
  // probability zero) are always rejected.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto ratio = [&](std::size_t t) {
    if (IsZeroWeight(p0[t])) return IsZeroWeight(p1[t]) ? -1.0 : kInfinity;
    return p1[t] / p0[t];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return ratio(a) > ratio(b);
                   });

  TestResult r;
  r.description = "reject outcomes of largest p1/p0; randomized at the cutoff";
  double size = 0.0, power = 0.0;
  for (const std::size_t t : order) {
    const double lr = ratio(t);
    if (lr < 0.0) break;  // both hypotheses give this outcome probability 0
    if (size + p0[t] <= alpha + 1e-15) {
      size += p0[t];
      power += p1[t];
      continue;
    }
    const double remaining = alpha - size;
    const double gamma = IsZeroWeight(p0[t]) ? 0.0 : remaining / p0[t];
    r.threshold = lr;
    r.boundary_probability = gamma;
    size = alpha;
    power += gamma * p1[t];
    break;
  }
  r.size = std::min(size, alpha);
  r.power = std::min(power, 1.0);
  return r;
}

TestResult LaplaceNpPower(double scale, double separation, double alpha) {
  if (!(scale > 0.0)) throw InputError("np power: scale must be positive");
  if (!(separation >= 0.0)) {
    throw InputError("np power: separation must be >= 0");
  }
  if (!(alpha > 0.0) || !(alpha < 0.5)) {
    throw InputError("np power: need 0 < alpha < 1/2");
  }
  // Reject t > t0 where the null tail is alpha: t0 = -scale * ln(2 alpha),
  // at or above the null location because alpha < 1/2.
  const double t0 = -scale * std::log(2.0 * alpha);
  TestResult r;
  r.size = alpha;
  r.threshold = t0;
  r.description = "reject t > threshold";
  if (t0 >= separation) {
    r.power = alpha * std::exp(separation / scale);
  } else {
    r.power = 1.0 - std::exp(-separation / scale) / (4.0 * alpha);
  }
  return r;
}

FiniteMeasure ExactPosterior(const DataModel& model,
                             const FiniteMeasure& prior, const Mechanism& m,
                             const Outcome& t) {
  if (prior.size() != model.n_thetas()) {
    throw InputError("posterior: prior is not over the model's hypotheses");
  }
  std::vector<double> w(prior.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < prior.size(); ++k) {
    if (IsZeroWeight(prior.weight(k))) continue;
    w[k] = prior.weight(k) * MarginalLikelihood(model, k, m, t);
    total += w[k];
  }
  if (IsZeroWeight(total)) {
    throw WellDefinednessError(
        "posterior: the outcome has zero probability under every hypothesis "
        "in the prior's support");
  }
  for (double& v : w) v /= total;
  return FiniteMeasure(prior.outcomes_ptr(), std::move(w), /*normalized=*/true);
}

double GammaPdf(double x, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw InputError("gamma pdf: shape and rate must be positive");
  }
  if (!(x > 0.0)) return 0.0;
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) -
                  rate * x - std::lgamma(shape));
}

double PoissonPmf(long long k, double mean) {
  if (k < 0) return 0.0;
  if (!(mean >= 0.0)) throw InputError("poisson pmf: mean must be >= 0");
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-mean + static_cast<double>(k) * std::log(mean) -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

double LaplacePdf(double t, double location, double scale) {
  if (!(scale > 0.0)) throw InputError("laplace pdf: scale must be positive");
  return std::exp(-std::abs(t - location) / scale) / (2.0 * scale);
}

long long PoissonTailCutoff(double max_mean, double tail) {
  if (!(max_mean >= 0.0) || !(tail > 0.0)) {
    throw InputError("poisson cutoff: need mean >= 0 and tail > 0");
  }
  long long m = static_cast<long long>(std::ceil(max_mean)) + 1;
  while (true) {
    // Chernoff: P(X >= m) <= exp(-mean) * (e * mean / m)^m for m > mean.
    const double md = static_cast<double>(m);
    const double log_bound =
        -max_mean + md * (1.0 + std::log(max_mean > 0.0 ? max_mean : 1e-300) -
                          std::log(md));
    if (log_bound < std::log(tail)) break;
    ++m;
  }
  return 2 * m;
}

std::vector<double> GammaPoissonLaplacePosterior(double shape, double rate,
                                                 double eps, int a0, int a1,
                                                 double t,
                                                 const QuadratureGrid& grid) {
  if (a0 >= a1) throw InputError("posterior: need a0 < a1");
  if (!(eps > 0.0)) throw InputError("posterior: need eps > 0");
  const double scale = static_cast<double>(a1 - a0) / eps;
  const long long x_max = PoissonTailCutoff(grid.points.back());

  // Truncating the x sum at x_max drops at most the Poisson tail mass times
  // the peak noise density, uniformly over the grid.
  std::vector<double> noise_at(static_cast<std::size_t>(x_max) + 1);
  for (long long x = 0; x <= x_max; ++x) {
    const double q = std::clamp(static_cast<double>(x),
                                static_cast<double>(a0),
                                static_cast<double>(a1));
    noise_at[static_cast<std::size_t>(x)] = LaplacePdf(t, q, scale);
  }

  std::vector<double> values(grid.points.size());
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double theta = grid.points[i];
    double like = 0.0;
    for (long long x = 0; x <= x_max; ++x) {
      like += PoissonPmf(x, theta) * noise_at[static_cast<std::size_t>(x)];
    }
    values[i] = GammaPdf(theta, shape, rate) * like;
  }
  const double z = grid.Integrate(values);
  if (IsZeroWeight(z)) {
    throw WellDefinednessError("posterior: zero normalizer on the grid");
  }
  for (double& v : values) v /= z;
  return values;
}

double PriorPredictiveSample(double shape, double rate, double eps, int a0,
                             int a1, std::uint64_t seed, std::uint64_t index) {
  if (a0 >= a1) throw InputError("predictive: need a0 < a1");
  if (!(eps > 0.0) || !(rate > 0.0)) {
    throw InputError("predictive: need eps > 0 and rate > 0");
  }
  CounterRng rng(seed, /*stream=*/0, index);
  const double theta = rng.NextGamma(shape) / rate;
  const long long x = rng.NextPoisson(theta);
  const double q = std::clamp(static_cast<double>(x),
                              static_cast<double>(a0),
                              static_cast<double>(a1));
  return rng.NextLaplace(q, static_cast<double>(a1 - a0) / eps);
}

namespace {

McEstimate WilsonEstimate(std::uint64_t hits, std::uint64_t draws) {
  McEstimate e;
  e.hits = hits;
  e.draws = draws;
  const double n = static_cast<double>(draws);
  const double p = static_cast<double>(hits) / n;
  const double z = 2.5758293035489004;  // 99.5th normal percentile
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  e.estimate = p;
  // Radius around the raw frequency covering the whole Wilson interval.
  e.radius = std::max(p - (center - half), (center + half) - p);
  return e;
}

}  // namespace

McEstimate McProbability(const DiscreteMechanism& m, const Dataset& x,
                         const std::vector<char>& hit, std::uint64_t n_draws,
                         std::uint64_t seed) {
  if (n_draws < 1) throw InputError("mc: need at least one draw");
  if (hit.size() != m.output_labels()->size()) {
    throw InputError("mc: flag vector does not match the output space");
  }
  return WilsonEstimate(CountDiscreteHits(m, x, hit, n_draws, seed), n_draws);
}

McEstimate McProbabilityReal(const RealOutputMechanism& m, const Dataset& x,
                             double lo, double hi, std::uint64_t n_draws,
                             std::uint64_t seed) {
  if (n_draws < 1) throw InputError("mc: need at least one draw");
  return WilsonEstimate(CountRealHits(m, x, lo, hi, n_draws, seed), n_draws);
}

}  // namespace privbound
