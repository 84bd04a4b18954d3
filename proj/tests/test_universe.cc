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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "privbound/errors.h"
#include "privbound/rng.h"
#include "privbound/universe.h"

namespace privbound {
namespace {

const double kInf = std::numeric_limits<double>::infinity();

Dataset Vec(std::vector<std::int32_t> records) {
  return MakeDataset(DatasetMode::kVector, std::move(records));
}

Dataset Bag(std::vector<std::int32_t> records) {
  return MakeDataset(DatasetMode::kMultiset, std::move(records));
}

TEST_CASE("record-flip distance on vectors") {
  CHECK(Hamming(Vec({0, 1, 1}), Vec({0, 1, 1})) == 0.0);
  CHECK(Hamming(Vec({0, 0, 0}), Vec({1, 1, 1})) == 3.0);
  CHECK(Hamming(Vec({0, 0}), Vec({0, 0, 0})) == kInf);
  CHECK_THROWS_AS(Hamming(Bag({0, 1}), Bag({0, 1})), InputError);
}

TEST_CASE("symmetric difference on multisets") {
  CHECK(SymmetricDifference(Bag({0, 0, 1}), Bag({0, 1})) == 1.0);
  CHECK(SymmetricDifference(Bag({0, 0, 1}), Bag({0, 0, 1})) == 0.0);
  CHECK(SymmetricDifference(Bag({0}), Bag({1})) == 2.0);
  CHECK(SymmetricDifference(Bag({}), Bag({1, 1})) == 2.0);
  CHECK_THROWS_AS(SymmetricDifference(Vec({0}), Vec({1})), InputError);
}

TEST_CASE("binary vector universe enumerates in odometer order") {
  const DataUniverse u = DataUniverse::BinaryVectors(3);
  CHECK(u.size() == 8);
  CHECK(u.label(0) == "0,0,0");
  CHECK(u.label(1) == "0,0,1");  // last coordinate moves fastest
  CHECK(u.label(6) == "1,1,0");
  CHECK(u.IndexOf(Vec({1, 0, 1})) == 5);
  CHECK(u.Contains(Vec({1, 1, 1})));
  CHECK_FALSE(u.Contains(Vec({1, 2, 1})));
  CHECK_FALSE(u.Contains(Vec({1, 1})));
}

TEST_CASE("search distance equals the closed form on vector universes") {
  const DataUniverse u = DataUniverse::BinaryVectors(3);
  CHECK(u.GraphDistance(u.IndexOf(Vec({0, 0, 0})), u.IndexOf(Vec({1, 1, 1}))) ==
        3.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      CHECK(u.GraphDistance(i, j) == u.Distance(i, j));
    }
  }
}

TEST_CASE("search distance equals the closed form on a multiset universe") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kMultiset, {"a", "b"}, {0, 1, 2},
      MetricKind::kSymmetricDifference);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      CHECK(u.GraphDistance(i, j) == u.Distance(i, j));
    }
  }
}

TEST_CASE("distance obeys the metric axioms on random triples") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kVector, {"0", "1", "2"}, {3}, MetricKind::kHamming);
  CounterRng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t a = rng.NextU64() % u.size();
    const std::size_t b = rng.NextU64() % u.size();
    const std::size_t c = rng.NextU64() % u.size();
    CHECK(u.Distance(a, b) == u.Distance(b, a));
    CHECK((u.Distance(a, b) == 0.0) == (a == b));
    CHECK(u.Distance(a, b) <= u.Distance(a, c) + u.Distance(c, b));
  }
}

TEST_CASE("mixed-length vector universe splits into length components") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kVector, {"0", "1"}, {1, 2, 3}, MetricKind::kHamming);
  CHECK(u.size() == 2 + 4 + 8);
  const auto components = u.ConnectedComponents();
  REQUIRE(components.size() == 3);
  CHECK(components[0].size() == 2);
  CHECK(components[1].size() == 4);
  CHECK(components[2].size() == 8);
  CHECK(u.Distance(Vec({0}), Vec({0, 0})) == kInf);
  const auto ids = u.ComponentIds();
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      CHECK((ids[i] == ids[j]) == std::isfinite(u.Distance(i, j)));
    }
  }
}

TEST_CASE("multiset universes require contiguous lengths") {
  CHECK_NOTHROW(DataUniverse::Product(DatasetMode::kMultiset, {"a"}, {1, 2, 3},
                                      MetricKind::kSymmetricDifference));
  CHECK_THROWS_AS(
      DataUniverse::Product(DatasetMode::kMultiset, {"a"}, {1, 3},
                            MetricKind::kSymmetricDifference),
      InputError);
}

TEST_CASE("explicit graph universe with a gap") {
  // Path 0 - 1 - 2 plus an isolated vertex 3.
  const DataUniverse u = DataUniverse::ExplicitGraph(
      {"0", "1", "2", "3"}, DatasetMode::kVector,
      {Vec({0}), Vec({1}), Vec({2}), Vec({3})}, {{0, 1}, {1, 2}});
  CHECK(u.Distance(0, 1) == 1.0);
  CHECK(u.Distance(0, 2) == 2.0);
  CHECK(u.Distance(0, 3) == kInf);
  CHECK(u.ConnectedComponents().size() == 2);
  CHECK_THROWS_AS(u.IndexOf(Vec({7})), InputError);
  CHECK_THROWS_AS(
      DataUniverse::ExplicitGraph({"0", "1"}, DatasetMode::kVector,
                                  {Vec({0}), Vec({1})}, {{0, 5}}),
      InputError);
}

TEST_CASE("neighbors flip one coordinate on vector universes") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kVector, {"0", "1", "2"}, {2}, MetricKind::kHamming);
  const auto neighbors = u.NeighborDatasets(Vec({0, 0}));
  CHECK(neighbors.size() == 4);  // two positions, two alternative values each
  for (const Dataset& y : neighbors) {
    CHECK(Hamming(Vec({0, 0}), y) == 1.0);
  }
  const auto idx = u.Neighbors(u.IndexOf(Vec({0, 0})));
  CHECK(idx.size() == 4);
}

TEST_CASE("neighbors add or remove one element on multiset universes") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kMultiset, {"a", "b"}, {0, 1, 2},
      MetricKind::kSymmetricDifference);
  const auto neighbors = u.NeighborDatasets(Bag({0}));
  // Remove the element, or add one of two values.
  CHECK(neighbors.size() == 3);
  for (const Dataset& y : neighbors) {
    CHECK(SymmetricDifference(Bag({0}), y) == 1.0);
  }
  // At the length cap, only removals and same-size swaps stay inside.
  for (const Dataset& y : u.NeighborDatasets(Bag({0, 1}))) {
    CHECK(u.Contains(y));
  }
}

TEST_CASE("explicit enumeration respects the size cap") {
  DataUniverse u = DataUniverse::Product(DatasetMode::kVector, {"0", "1"},
                                         {12}, MetricKind::kHamming);
  u.set_max_explicit(100);
  CHECK_THROWS_AS(u.size(), ResourceError);
  DataUniverse big = DataUniverse::Product(DatasetMode::kVector, {"0", "1"},
                                           {25}, MetricKind::kHamming);
  CHECK_THROWS_AS(big.size(), ResourceError);
  // Membership and closed-form distances never materialize.
  CHECK(big.Contains(Vec(std::vector<std::int32_t>(25, 1))));
  CHECK(big.Distance(Vec(std::vector<std::int32_t>(25, 0)),
                     Vec(std::vector<std::int32_t>(25, 1))) == 25.0);
}

TEST_CASE("count-record universe exposes numeric record values") {
  const DataUniverse u = DataUniverse::CountRecords(6);
  CHECK(u.size() == 7);
  CHECK(u.numeric_alphabet());
  CHECK(u.RecordValue(4) == 4.0);
  CHECK(u.Distance(0, 6) == 1.0);  // single record, any change is one flip
}

TEST_CASE("record-value events select matching datasets") {
  const DataUniverse u = DataUniverse::BinaryVectors(2);
  const EventSet ones = RecordValueEvent(u, 0, 1);
  REQUIRE(ones.size() == 2);
  CHECK(u.label(ones[0]) == "1,0");
  CHECK(u.label(ones[1]) == "1,1");
  CHECK_THROWS_AS(RecordValueEvent(u, 5, 1), InputError);
  CHECK_THROWS_AS(RecordValueEvent(u, 0, 9), InputError);
}

TEST_CASE("dataset labels join record labels with commas") {
  CHECK(DatasetLabel(Vec({1, 0, 2}), {"a", "b", "c"}) == "b,a,c");
  CHECK(DatasetLabel(Vec({}), {"a"}) == "");
}

TEST_CASE("distances from one source agree with pairwise distances") {
  const DataUniverse u = DataUniverse::Product(
      DatasetMode::kVector, {"0", "1"}, {1, 2, 3}, MetricKind::kHamming);
  for (const std::size_t i : {std::size_t{0}, std::size_t{3}, u.size() - 1}) {
    const std::vector<double> row = u.DistancesFrom(i);
    REQUIRE(row.size() == u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      CHECK(row[j] == u.Distance(i, j));
    }
  }
}

}  // namespace
}  // namespace privbound
