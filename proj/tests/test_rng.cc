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
#include <set>
#include <vector>

#include "privbound/rng.h"
#include "privbound/universe.h"

namespace privbound {
namespace {

TEST_CASE("equal keys replay the identical sequence") {
  CounterRng a(7, 3, 11);
  CounterRng b(7, 3, 11);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
}

TEST_CASE("any key component changes the sequence") {
  CounterRng base(7, 3, 11);
  CounterRng seed(8, 3, 11);
  CounterRng stream(7, 4, 11);
  CounterRng index(7, 3, 12);
  const std::uint64_t x = base.NextU64();
  CHECK(x != seed.NextU64());
  CHECK(x != stream.NextU64());
  CHECK(x != index.NextU64());
}

TEST_CASE("sharded draws match a single stream draw for draw index") {
  // Drawing value k from stream (seed, s, k) must not depend on which worker
  // asks, so two different interleavings produce the same multiset.
  std::vector<std::uint64_t> by_index(32);
  for (std::size_t k = 0; k < by_index.size(); ++k) {
    by_index[k] = CounterRng(99, 0, k).NextU64();
  }
  std::vector<std::uint64_t> reversed(32);
  for (std::size_t k = by_index.size(); k-- > 0;) {
    reversed[k] = CounterRng(99, 0, k).NextU64();
  }
  CHECK(by_index == reversed);
}

TEST_CASE("uniforms live strictly inside the unit interval") {
  CounterRng rng(1);
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.NextUniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
}

TEST_CASE("moment sanity for the continuous families") {
  CounterRng rng(2);
  const int n = 200000;
  double exp_sum = 0.0;
  double norm_sum = 0.0;
  double norm_sq = 0.0;
  double lap_sum = 0.0;
  double lap_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    exp_sum += rng.NextExponential();
    const double z = rng.NextNormal();
    norm_sum += z;
    norm_sq += z * z;
    const double l = rng.NextLaplace(3.0, 2.0);
    lap_sum += l;
    lap_abs += std::abs(l - 3.0);
  }
  CHECK(exp_sum / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(norm_sum / n == doctest::Approx(0.0).epsilon(0.02));
  CHECK(norm_sq / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(lap_sum / n == doctest::Approx(3.0).epsilon(0.02));
  // Mean absolute deviation of a Laplace with scale b is b.
  CHECK(lap_abs / n == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("gamma moments across the shape<1 and shape>=1 branches") {
  for (const double shape : {0.5, 1.0, 3.0, 7.5}) {
    CounterRng rng(3, static_cast<std::uint64_t>(shape * 2));
    const int n = 150000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = rng.NextGamma(shape);
      CHECK(g >= 0.0);
      sum += g;
      sq += g * g;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(shape).epsilon(0.03));
    CHECK(var == doctest::Approx(shape).epsilon(0.06));
  }
}

TEST_CASE("poisson moments and determinism") {
  for (const double mean : {0.3, 2.0, 19.5}) {
    CounterRng rng(4, static_cast<std::uint64_t>(mean * 10));
    const int n = 120000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.NextPoisson(mean));
      sum += k;
      sq += k * k;
    }
    const double m = sum / n;
    const double var = sq / n - m * m;
    CHECK(m == doctest::Approx(mean).epsilon(0.03));
    CHECK(var == doctest::Approx(mean).epsilon(0.06));
  }
  CounterRng a(5);
  CounterRng b(5);
  for (int i = 0; i < 50; ++i) CHECK(a.NextPoisson(4.2) == b.NextPoisson(4.2));
}

TEST_CASE("dataset stream keys separate datasets, sizes, and modes") {
  const Dataset x = MakeDataset(DatasetMode::kVector, {0, 1, 1});
  const Dataset y = MakeDataset(DatasetMode::kVector, {1, 1, 0});
  const Dataset z = MakeDataset(DatasetMode::kVector, {0, 1});
  const Dataset m = MakeDataset(DatasetMode::kMultiset, {0, 1, 1});
  std::set<std::uint64_t> keys{DatasetStreamKey(x), DatasetStreamKey(y),
                               DatasetStreamKey(z), DatasetStreamKey(m)};
  CHECK(keys.size() == 4);
  CHECK(DatasetStreamKey(x) ==
        DatasetStreamKey(MakeDataset(DatasetMode::kVector, {0, 1, 1})));
}

TEST_CASE("mixer has no trivial fixed point at small inputs") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(Mix64(i));
  CHECK(seen.size() == 1000);
  CHECK(Mix64(0) != 0);
}

}  // namespace
}  // namespace privbound
