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
#include <string>
#include <vector>

#include "privbound/errors.h"
#include "privbound/inference.h"
#include "privbound/measures.h"
#include "privbound/mechanisms.h"
#include "privbound/oracles.h"
#include "privbound/universe.h"

namespace privbound {
namespace {

const double kE = std::exp(1.0);

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

TEST_CASE("most powerful test against one response flip") {
  const DataUniverse u = DataUniverse::BinaryVectors(1);
  const RandomizedResponse rr(1.0, 1);
  const DataModel model = TwoPointModel(u, 0, 1);
  const double alpha = 1.0 / (kE + 1.0);
  const TestResult r = ExactNpPower(rr, model, 0, 1, alpha);
  // Level 1/(e+1) lets the test reject exactly on the matching response.
  CHECK(r.size == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(r.power == doctest::Approx(kE / (kE + 1.0)).epsilon(1e-12));
  CHECK(r.power == doctest::Approx(0.7310585786300049).epsilon(1e-12));
}

TEST_CASE("randomized boundary makes the size exact at every level") {
  const DataUniverse u = DataUniverse::BinaryVectors(2);
  const RandomizedResponse rr(0.8, 2);
  const DataModel model = TwoPointModel(u, 0, 3);
  double previous = 0.0;
  for (const double alpha : {0.01, 0.05, 0.2, 0.4, 0.7, 0.95}) {
    const TestResult r = ExactNpPower(rr, model, 0, 1, alpha);
    CHECK(r.size == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(r.power >= alpha - 1e-12);  // never worse than blind rejection
    CHECK(r.power >= previous - 1e-12);
    CHECK(r.power <= 1.0 + 1e-12);
    CHECK(r.boundary_probability >= 0.0);
    CHECK(r.boundary_probability <= 1.0);
    previous = r.power;
  }
  CHECK_THROWS_AS(ExactNpPower(rr, model, 0, 1, -0.1), InputError);
  CHECK_THROWS_AS(ExactNpPower(rr, model, 0, 1, 1.5), InputError);
}

TEST_CASE("exact power stays under the Lipschitz cap") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(trial % 3);
    const double eps = 0.4 + 0.1 * static_cast<double>(trial % 5);
    const DataUniverse u = DataUniverse::BinaryVectors(n);
    const RandomizedResponse rr(eps, n);
    const std::size_t far = u.size() - 1;  // all records flipped
    const DataModel model = TwoPointModel(u, 0, far);
    const double d = static_cast<double>(n);
    for (const double alpha : {0.02, 0.1, 0.3}) {
      const TestResult r = ExactNpPower(rr, model, 0, 1, alpha);
      CHECK(r.power <= std::min(1.0, alpha * std::exp(eps * d)) + 1e-9);
      const BoundPair band = PowerBoundsTwoSided(alpha, eps, d);
      CHECK(r.power >= band.lower - 1e-9);
      CHECK(r.power <= band.upper + 1e-9);
    }
  }
}

TEST_CASE("noise-addition test power in every threshold regime") {
  // Scale 5 and five flipped records: the cap is met with equality.
  const TestResult far = LaplaceNpPower(5.0, 5.0, 0.05);
  CHECK(far.power == doctest::Approx(0.05 * kE).epsilon(1e-12));
  CHECK(far.power == doctest::Approx(0.13591409142295226).epsilon(1e-12));
  CHECK(far.size == doctest::Approx(0.05).epsilon(1e-12));

  // Threshold between the two locations.
  const TestResult mid = LaplaceNpPower(1.0, 1.0, 0.4);
  CHECK(mid.power ==
        doctest::Approx(1.0 - std::exp(-1.0) / 1.6).epsilon(1e-12));

  // Small level keeps the threshold beyond the alternative location.
  const TestResult low = LaplaceNpPower(1.0, 1.0, 0.1);
  CHECK(low.power == doctest::Approx(0.1 * kE).epsilon(1e-12));

  CHECK_THROWS_AS(LaplaceNpPower(1.0, 1.0, 0.6), InputError);
  CHECK_THROWS_AS(LaplaceNpPower(0.0, 1.0, 0.1), InputError);
}

TEST_CASE("posterior over hypotheses follows Bayes exactly") {
  const DataUniverse u = DataUniverse::BinaryVectors(1);
  const RandomizedResponse rr(1.0, 1);
  const DataModel model = TwoPointModel(u, 0, 1);
  const FiniteMeasure prior({"h0", "h1"}, {0.3, 0.7}, true);
  const double keep = kE / (kE + 1.0);
  const double flip = 1.0 / (kE + 1.0);
  const FiniteMeasure post = ExactPosterior(model, prior, rr,
                                            Outcome::Discrete(0));
  const double m = 0.3 * keep + 0.7 * flip;
  CHECK(post.weight(0) == doctest::Approx(0.3 * keep / m).epsilon(1e-12));
  CHECK(post.weight(1) == doctest::Approx(0.7 * flip / m).epsilon(1e-12));

  // Posterior never leaves the prior-scaled band for a budget-1 mechanism.
  for (std::size_t t = 0; t < 2; ++t) {
    const FiniteMeasure p = ExactPosterior(model, prior, rr,
                                           Outcome::Discrete(t));
    for (std::size_t k = 0; k < 2; ++k) {
      const BoundPair band = PosteriorBounds(prior.weight(k), 1.0, 1.0);
      CHECK(p.weight(k) >= band.lower - 1e-12);
      CHECK(p.weight(k) <= band.upper + 1e-12);
    }
  }
}

TEST_CASE("quadrature grids integrate smooth functions") {
  const QuadratureGrid g = QuadratureGrid::UniformOpenLow(0.0, 1.0, 0.25);
  REQUIRE(g.points.size() == 4);
  CHECK(g.points.front() == doctest::Approx(0.25));
  CHECK(g.points.back() == doctest::Approx(1.0));
  for (const double w : g.weights) CHECK(w == doctest::Approx(0.25));

  auto integrate_sq = [](const QuadratureGrid& grid) {
    std::vector<double> v(grid.points.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = grid.points[i] * grid.points[i];
    }
    return grid.Integrate(v);
  };
  const double coarse = integrate_sq(QuadratureGrid::UniformOpenLow(0, 2, 1e-2));
  const double fine = integrate_sq(QuadratureGrid::UniformOpenLow(0, 2, 1e-3));
  CHECK(coarse == doctest::Approx(8.0 / 3.0).epsilon(1e-2));
  CHECK(fine == doctest::Approx(8.0 / 3.0).epsilon(1e-3));
  CHECK(std::abs(fine - 8.0 / 3.0) < std::abs(coarse - 8.0 / 3.0));

  const QuadratureGrid tz =
      QuadratureGrid::Trapezoid({0.0, 0.5, 1.0, 2.0});
  CHECK(tz.Integrate({0.0, 0.25, 1.0, 4.0}) ==
        doctest::Approx(0.0625 + 0.3125 + 2.5).epsilon(1e-12));
  CHECK_THROWS_AS(QuadratureGrid({0.0, 1.0}, {1.0}), InputError);
}

TEST_CASE("density helpers match closed forms") {
  CHECK(GammaPdf(2.0, 3.0, 1.0) ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(GammaPdf(1.5, 2.0, 3.0) ==
        doctest::Approx(9.0 * 1.5 * std::exp(-4.5)).epsilon(1e-12));
  CHECK(GammaPdf(-1.0, 3.0, 1.0) == 0.0);
  CHECK(PoissonPmf(3, 2.0) ==
        doctest::Approx(8.0 * std::exp(-2.0) / 6.0).epsilon(1e-12));
  CHECK(PoissonPmf(0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(PoissonPmf(-1, 2.0) == 0.0);
  CHECK(LaplacePdf(0.0, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(LaplacePdf(0.0, 2.0, 2.0) ==
        doctest::Approx(0.25 * std::exp(-1.0)).epsilon(1e-12));

  const long long cutoff = PoissonTailCutoff(20.0);
  CHECK(cutoff > 20);
  CHECK(std::exp(-20.0) * std::pow(kE * 20.0 / static_cast<double>(cutoff),
                                   static_cast<double>(cutoff)) < 1e-12);
}

TEST_CASE("count-hierarchy posterior stays in the prior band") {
  const QuadratureGrid grid = QuadratureGrid::UniformOpenLow(0.0, 12.0, 0.01);
  for (const double t : {-2.0, 1.3, 4.0, 7.5}) {
    const std::vector<double> post =
        GammaPoissonLaplacePosterior(3.0, 1.0, 1.0, 0, 6, t, grid);
    REQUIRE(post.size() == grid.points.size());
    CHECK(grid.Integrate(post) == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t i = 0; i < post.size(); ++i) {
      const double prior = GammaPdf(grid.points[i], 3.0, 1.0);
      CHECK(post[i] >= prior * std::exp(-1.0) - 1e-9);
      CHECK(post[i] <= prior * std::exp(1.0) + 1e-9);
    }
  }

  // Above the clamp ceiling the outcome carries no extra information, so
  // all saturated outcomes share one posterior.
  const std::vector<double> hi1 =
      GammaPoissonLaplacePosterior(3.0, 1.0, 1.0, 0, 6, 8.0, grid);
  const std::vector<double> hi2 =
      GammaPoissonLaplacePosterior(3.0, 1.0, 1.0, 0, 6, 50.0, grid);
  for (std::size_t i = 0; i < hi1.size(); ++i) {
    CHECK(hi1[i] == doctest::Approx(hi2[i]).epsilon(1e-9));
  }
}

TEST_CASE("hierarchy draws are reproducible and seed-sensitive") {
  const double a = PriorPredictiveSample(3.0, 1.0, 1.0, 0, 6, 1729, 0);
  const double b = PriorPredictiveSample(3.0, 1.0, 1.0, 0, 6, 1729, 0);
  CHECK(a == b);
  CHECK(std::isfinite(a));
  bool index_moves = false;
  bool seed_moves = false;
  for (std::uint64_t k = 1; k < 8; ++k) {
    index_moves = index_moves ||
                  PriorPredictiveSample(3.0, 1.0, 1.0, 0, 6, 1729, k) != a;
    seed_moves = seed_moves ||
                 PriorPredictiveSample(3.0, 1.0, 1.0, 0, 6, 1000 + k, 0) != a;
  }
  CHECK(index_moves);
  CHECK(seed_moves);
}

TEST_CASE("sampled frequencies wrap the exact probabilities") {
  const DataUniverse u = DataUniverse::BinaryVectors(2);
  const RandomizedResponse rr(1.0, 2);
  const Dataset x = u.dataset(1);
  std::vector<char> hit(4, 0);
  hit[1] = 1;
  hit[2] = 1;
  const double exact = rr.Mass(x, 1) + rr.Mass(x, 2);
  const McEstimate est = McProbability(rr, x, hit, 40000, 99);
  CHECK(est.draws == 40000);
  CHECK(est.hits <= est.draws);
  CHECK(std::abs(est.estimate - exact) <= 2.0 * est.radius);

  const McEstimate more = McProbability(rr, x, hit, 160000, 99);
  CHECK(more.radius < est.radius);

  const LaplaceMechanism lap(MakeSumQuery(u), 1.0, 0.5);
  const McEstimate real = McProbabilityReal(lap, x, 1.0, kInfinity, 40000, 7);
  // The query value is 1, so mass above the location is exactly one half.
  CHECK(std::abs(real.estimate - 0.5) <= 2.0 * real.radius);
}

}  // namespace
}  // namespace privbound
