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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "privbound/errors.h"
#include "privbound/inference.h"
#include "privbound/measures.h"
#include "privbound/mechanisms.h"
#include "privbound/rng.h"
#include "privbound/universe.h"

namespace privbound {
namespace {

const double kE = std::exp(1.0);
const double kInf = std::numeric_limits<double>::infinity();

EventSet All(const DataUniverse& u) {
  EventSet s(u.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

FiniteMeasure RandomPrior(const DataUniverse& u, const EventSet& support,
                          std::uint64_t seed) {
  std::vector<double> w(u.size(), 0.0);
  CounterRng rng(seed);
  double total = 0.0;
  for (const std::size_t i : support) {
    w[i] = rng.NextExponential() + 1e-3;
    total += w[i];
  }
  for (double& v : w) v /= total;
  return FiniteMeasure(u.labels(), std::move(w), true);
}

DataModel TwoPointModel(const DataUniverse& u, std::size_t x0, std::size_t x1) {
  std::vector<double> w0(u.size(), 0.0);
  std::vector<double> w1(u.size(), 0.0);
  w0[x0] = 1.0;
  w1[x1] = 1.0;
  std::vector<FiniteMeasure> laws;
  laws.emplace_back(u.labels(), std::move(w0), true);
  laws.emplace_back(u.labels(), std::move(w1), true);
  return DataModel(&u, {"h0", "h1"}, std::move(laws));
}

TEST_CASE("model construction validates labels and laws") {
  const DataUniverse u = DataUniverse::BinaryVectors(1);
  std::vector<FiniteMeasure> laws{
      FiniteMeasure(u.labels(), {0.5, 0.5}, true),
      FiniteMeasure(u.labels(), {0.2, 0.8}, true)};
  CHECK_NOTHROW(DataModel(&u, {"a", "b"}, laws));
  CHECK_THROWS_AS(DataModel(&u, {"a", "a"}, laws), InputError);
  CHECK_THROWS_AS(DataModel(&u, {"a"}, laws), InputError);
  std::vector<FiniteMeasure> bad{FiniteMeasure(u.labels(), {0.5, 0.4}),
                                 FiniteMeasure(u.labels(), {0.2, 0.8}, true)};
  CHECK_THROWS_AS(DataModel(&u, {"a", "b"}, bad), InputError);
  const DataModel m(&u, {"a", "b"}, laws);
  CHECK(m.IndexOfTheta("b") == 1);
  CHECK_THROWS_AS(m.IndexOfTheta("zzz"), InputError);
}

TEST_CASE("outcome density covers discrete, real, and out-of-domain inputs") {
  const DataUniverse u = DataUniverse::BinaryVectors(2);
  const RandomizedResponse rr(1.0, 2);
  const Dataset x = u.dataset(0);
  CHECK(OutcomeDensity(rr, x, Outcome::Discrete(3)) ==
        doctest::Approx(rr.Mass(x, 3)));
  // Datasets outside the mechanism's domain carry zero density rather than
  // erroring, so support intersections on mixed universes fall out naturally.
  const Dataset wrong = MakeDataset(DatasetMode::kVector, {0});
  CHECK(OutcomeDensity(rr, wrong, Outcome::Discrete(0)) == 0.0);
  const LaplaceMechanism lap(MakeSumQuery(u), 1.0, 0.5);
  CHECK(OutcomeDensity(lap, x, Outcome::Real(0.0)) ==
        doctest::Approx(lap.Density(x, 0.0)));
}

TEST_CASE("support given an outcome intersects prior and density supports") {
  const DataUniverse u = DataUniverse::BinaryVectors(2);
  const RandomizedResponse rr(1.0, 2);
  const FiniteMeasure law(u.labels(), {0.5, 0.5, 0.0, 0.0}, true);
  const DataModel model(&u, {"only"}, {law});
  const FiniteMeasure theta_prior({"only"}, {1.0}, true);
  const EventSet s = SupportGiven(model, theta_prior, rr, Outcome::Discrete(1));
  CHECK(s == EventSet{0, 1});
  CHECK(SupportGiven(model, 0, rr, Outcome::Discrete(1)) == EventSet{0, 1});

  // The verbatim-release mechanism pins the support to the outcome itself.
  const TableMechanism id = MakeIdentityMechanism(u);
  const EventSet one = SupportGiven(model, theta_prior, id,
                                    Outcome::Discrete(1));
  CHECK(one == EventSet{1});

  const FiniteMeasure bad(u.labels(), {0.5, 0.5, 0.0, 0.0}, true);
  CHECK_THROWS_AS(SupportGiven(model, bad, rr, Outcome::Discrete(1)),
                  InputError);
}

TEST_CASE("marginal likelihood is the law-weighted density sum") {
  const DataUniverse u = DataUniverse::BinaryVectors(1);
  const RandomizedResponse rr(1.0, 1);
  const double keep = kE / (kE + 1.0);
  const double flip = 1.0 / (kE + 1.0);

  const DataModel mix(&u, {"mix"},
                      {FiniteMeasure(u.labels(), {0.25, 0.75}, true)});
  CHECK(MarginalLikelihood(mix, 0, rr, Outcome::Discrete(0)) ==
        doctest::Approx(0.25 * keep + 0.75 * flip).epsilon(1e-12));

  // The predictive additionally mixes over hypotheses.
  const DataModel points = TwoPointModel(u, 0, 1);
  const FiniteMeasure theta_prior({"h0", "h1"}, {0.25, 0.75}, true);
  CHECK(PriorPredictive(points, theta_prior, rr, Outcome::Discrete(1)) ==
        doctest::Approx(0.25 * flip + 0.75 * keep).epsilon(1e-12));
}

TEST_CASE("anchor bounds scale the anchor density by the budget") {
  const BoundPair b = AnchorBounds(0.05, 0.1, 10.0);
  CHECK(b.lower == doctest::Approx(0.05 / kE).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(0.05 * kE).epsilon(1e-12));
  const BoundPair zero = AnchorBounds(0.05, 0.0, 3.0);
  CHECK(zero.lower == doctest::Approx(0.05));
  CHECK(zero.upper == doctest::Approx(0.05));
}

TEST_CASE("marginal bounds report the anchor eccentricity") {
  const DataUniverse u = DataUniverse::BinaryVectors(3);
  const RandomizedResponse rr(0.5, 3);
  BoundContext ctx;
  const BoundPair b = MarginalBounds(rr, u, All(u), u.IndexOf(u.dataset(0)),
                                     0.5, Outcome::Discrete(0), &ctx);
  CHECK(ctx.epsilon == 0.5);
  CHECK(ctx.d_star == 3.0);
  const double p = rr.Mass(u.dataset(0), 0);
  CHECK(b.lower == doctest::Approx(p * std::exp(-1.5)).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(p * std::exp(1.5)).epsilon(1e-12));
}

TEST_CASE("discrete envelope bounds every prior's exact marginal") {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    CounterRng rng(900, trial);
    const int n = 1 + static_cast<int>(rng.NextU64() % 3);
    const double eps = 0.3 + 1.5 * rng.NextUniform();
    const DataUniverse u = DataUniverse::BinaryVectors(n);
    const RandomizedResponse rr(eps, n);

    EventSet support;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (rng.NextUniform() < 0.6) support.push_back(i);
    }
    if (support.empty()) support.push_back(0);

    const Envelope env = MarginalEnvelopeOutcomes(rr, u, support, eps);
    const DataModel holder(&u, {"p"}, {RandomPrior(u, support, trial)});
    for (std::size_t t = 0; t < u.size(); ++t) {
      const double exact =
          MarginalLikelihood(holder, 0, rr, Outcome::Discrete(t));
      CHECK(exact >= env.lower[t] - 1e-12);
      CHECK(exact <= env.upper[t] + 1e-12);
    }
  }
}

TEST_CASE("response envelope equals its closed form on the full support") {
  for (const double eps : {0.5, 1.0}) {
    for (const int n : {1, 2, 3}) {
      const DataUniverse u = DataUniverse::BinaryVectors(n);
      const RandomizedResponse rr(eps, n);
      const Envelope env = MarginalEnvelopeOutcomes(rr, u, All(u), eps);
      const BoundPair closed = RrMarginalBounds(eps, n);
      for (std::size_t t = 0; t < u.size(); ++t) {
        CHECK(env.lower[t] == doctest::Approx(closed.lower).epsilon(1e-12));
        CHECK(env.upper[t] == doctest::Approx(closed.upper).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("real-line envelope bounds the exact mixture density on a grid") {
  const DataUniverse u = DataUniverse::BinaryVectors(3);
  const double eps = 0.4;
  const LaplaceMechanism lap(MakeSumQuery(u), 1.0, eps);
  std::vector<double> grid;
  for (double t = -4.0; t <= 7.0; t += 0.25) grid.push_back(t);
  const Envelope env = MarginalEnvelopeGrid(lap, u, All(u), eps, grid);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const DataModel holder(&u, {"p"}, {RandomPrior(u, All(u), 40 + trial)});
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double exact =
          MarginalLikelihood(holder, 0, lap, Outcome::Real(grid[j]));
      CHECK(exact >= env.lower[j] - 1e-12);
      CHECK(exact <= env.upper[j] + 1e-12);
    }
  }
}

TEST_CASE("a perfectly private mechanism collapses the envelope") {
  const DataUniverse u = DataUniverse::BinaryVectors(2);
  const FiniteMeasure noise({"x", "y"}, {0.3, 0.7}, true);
  const TableMechanism m = MakeConstantMechanism(u, noise);
  const Envelope env = MarginalEnvelopeOutcomes(m, u, All(u), 0.0);
  CHECK(env.lower[0] == doctest::Approx(0.3));
  CHECK(env.upper[0] == doctest::Approx(0.3));
  CHECK(env.lower[1] == doctest::Approx(0.7));
  CHECK(env.upper[1] == doctest::Approx(0.7));
}

TEST_CASE("empty and disconnected supports carry named diagnoses") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kVector, {"0", "1"}, {1, 2}, MetricKind::kHamming);
  const RandomizedResponse rr(1.0, 1);
  try {
    MarginalEnvelopeOutcomes(rr, u, {}, 1.0);
    FAIL("expected a diagnosis");
  } catch (const UndefinedBoundError& e) {
    CHECK(e.reason() == "empty-support");
  }
  try {
    MarginalEnvelopeOutcomes(rr, u, All(u), 1.0);
    FAIL("expected a diagnosis");
  } catch (const UndefinedBoundError& e) {
    CHECK(e.reason() == "disconnected-support");
  }
  CHECK(ConnectednessCheck(u, {0, 1}));
  CHECK_FALSE(ConnectednessCheck(u, All(u)));
}

TEST_CASE("split by component and recombine") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kVector, {"0", "1"}, {1, 2}, MetricKind::kHamming);
  const auto parts = SplitByComponent(u, All(u));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].size() == 2);
  CHECK(parts[1].size() == 4);

  Envelope a;
  a.lower = {0.1, 0.2};
  a.upper = {0.5, 0.6};
  Envelope b;
  b.lower = {0.3, 0.1};
  b.upper = {0.4, 0.9};
  const Envelope mix = CombineComponentEnvelopes({a, b});
  CHECK(mix.lower == std::vector<double>{0.1, 0.1});
  CHECK(mix.upper == std::vector<double>{0.5, 0.9});
}

TEST_CASE("power bound closed form and edge cases") {
  CHECK(PowerBound(0.05, 0.2, 5.0) ==
        doctest::Approx(0.05 * kE).epsilon(1e-12));
  CHECK(PowerBound(0.05, 0.2, 5.0) == doctest::Approx(0.135914091423));
  CHECK(PowerBound(0.5, 2.0, 3.0) == 1.0);  // capped at certainty
  CHECK(PowerBound(0.1, 0.0, 7.0) == doctest::Approx(0.1));
  // Disjoint supports at infinite separation: a size-zero test can still
  // reject always under the alternative.
  CHECK(PowerBound(0.0, 1.0, kInf) == 1.0);
  CHECK(PowerBound(0.0, 1.0, 2.0) == 0.0);
}

TEST_CASE("two-sided power envelope") {
  const BoundPair degenerate = PowerBoundsTwoSided(0.3, 0.0, 9.0);
  CHECK(degenerate.lower == doctest::Approx(0.3));
  CHECK(degenerate.upper == doctest::Approx(0.3));

  const BoundPair b = PowerBoundsTwoSided(0.05, 0.2, 5.0);
  const double phi = kE;
  CHECK(b.upper == doctest::Approx(0.05 * phi).epsilon(1e-12));
  CHECK(b.lower ==
        doctest::Approx(std::max(0.05 / phi, 1.0 - 0.95 * phi)).epsilon(1e-12));
  CHECK(b.lower <= b.upper);

  const BoundPair wide = PowerBoundsTwoSided(0.4, 3.0, 10.0);
  CHECK(wide.lower == doctest::Approx(0.4 * std::exp(-30.0)).epsilon(1e-12));
  CHECK(wide.upper ==
        doctest::Approx(1.0 - 0.6 * std::exp(-30.0)).epsilon(1e-12));

  const BoundPair inf = PowerBoundsTwoSided(0.05, 1.0, kInf);
  CHECK(inf.lower == 0.0);
  CHECK(inf.upper == 1.0);
}

TEST_CASE("posterior bounds are the prior scaled by the budget factor") {
  const double prior = 2.0 * std::exp(-2.0);
  const BoundPair b = PosteriorBounds(prior, 1.0, 1.0);
  CHECK(b.lower == doctest::Approx(0.0995741367357279).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(0.735758882342885).epsilon(1e-12));
  const BoundPair none = PosteriorBounds(prior, 0.0, 5.0);
  CHECK(none.lower == doctest::Approx(prior));
  CHECK(none.upper == doctest::Approx(prior));
}

TEST_CASE("posterior support diameter") {
  const DataUniverse u = DataUniverse::BinaryVectors(4);
  CHECK(PosteriorDiameter(u, All(u)) == 4.0);
  CHECK(PosteriorDiameter(u, {0, 1}) == 1.0);
  CHECK(PosteriorDiameter(u, {5}) == 0.0);
}

TEST_CASE("exact posterior odds respect the budget factor on two points") {
  // Point priors at adjacent datasets: posterior ratio of hypotheses is the
  // likelihood ratio, which a budget-1 mechanism keeps within e of the
  // prior ratio.
  const DataUniverse u = DataUniverse::BinaryVectors(2);
  const RandomizedResponse rr(1.0, 2);
  const DataModel model = TwoPointModel(u, 0, 1);
  for (std::size_t t = 0; t < u.size(); ++t) {
    const double m0 = MarginalLikelihood(model, 0, rr, Outcome::Discrete(t));
    const double m1 = MarginalLikelihood(model, 1, rr, Outcome::Discrete(t));
    const double half_posterior_0 = m0 / (m0 + m1);
    const BoundPair b = PosteriorBounds(0.5, 1.0, 1.0);
    CHECK(half_posterior_0 >= b.lower - 1e-12);
    CHECK(half_posterior_0 <= b.upper + 1e-12);
  }
}

}  // namespace
}  // namespace privbound
