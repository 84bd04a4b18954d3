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

#ifndef PRIVBOUND_UNIVERSE_H_
#define PRIVBOUND_UNIVERSE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace privbound {

// A dataset is an ordered tuple of records (vector mode) or a multiset of
// records (multiset mode, records kept sorted). Records are indices into the
// universe's alphabet.
enum class DatasetMode { kVector, kMultiset };

enum class MetricKind { kHamming, kSymmetricDifference, kExplicitGraph };

struct Dataset {
  DatasetMode mode = DatasetMode::kVector;
  std::vector<std::int32_t> records;

  std::size_t size() const { return records.size(); }
  bool operator==(const Dataset& other) const = default;
};

// Sorts the records when the mode is multiset, so equal multisets compare
// equal.
Dataset MakeDataset(DatasetMode mode, std::vector<std::int32_t> records);

// Number of record positions where the tuples differ; +infinity across
// different lengths. Vector mode only.
double Hamming(const Dataset& x, const Dataset& y);

// |x \ y| + |y \ x| with multiset difference (per element a, the count
// max{0, x(a) - y(a)}). Multiset mode only.
double SymmetricDifference(const Dataset& x, const Dataset& y);

// Subset of a universe, stored as sorted dataset indices.
using EventSet = std::vector<std::size_t>;

// Space of datasets with a metric. Product universes hold every tuple (or
// multiset) over the alphabet whose length is in `lengths`; they are
// materialized lazily and only when an operation needs an explicit scan,
// subject to a cap (ResourceError beyond it). Explicit-graph universes list
// their datasets and unit edges directly.
//
// The metric is the shortest-path distance of the unit-edge graph: for
// Hamming the unit edges are the distance-1 flips (so the closed form and the
// graph agree within each length block), for symmetric difference the unit
// edges add or remove one record (the factory requires a contiguous length
// range so the closed form and the graph agree), and for explicit graphs the
// edge list is the definition.
class DataUniverse {
 public:
  static DataUniverse Product(DatasetMode mode,
                              std::vector<std::string> alphabet,
                              std::vector<int> lengths, MetricKind metric);
  static DataUniverse ExplicitGraph(
      std::vector<std::string> alphabet, DatasetMode mode,
      std::vector<Dataset> datasets,
      std::vector<std::pair<std::size_t, std::size_t>> edges);

  // Convenience: binary tuples {0,1}^n under Hamming.
  static DataUniverse BinaryVectors(int n);
  // Convenience: single-record datasets over the alphabet {"0",...,"max"}.
  static DataUniverse CountRecords(int max_count);

  DatasetMode mode() const { return mode_; }
  MetricKind metric() const { return metric_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<int>& lengths() const { return lengths_; }

  // Explicit-scan surface; materializes product universes on first use.
  std::size_t size() const;
  const std::vector<Dataset>& datasets() const;
  const Dataset& dataset(std::size_t i) const;
  const std::string& label(std::size_t i) const;
  std::shared_ptr<const std::vector<std::string>> labels() const;
  std::size_t IndexOf(const Dataset& x) const;  // InputError when absent

  // Membership without materialization for product universes.
  bool Contains(const Dataset& x) const;

  // Declared metric value. Closed form for Hamming / symmetric difference;
  // shortest path for explicit graphs. +infinity when disconnected.
  double Distance(const Dataset& x, const Dataset& y) const;
  double Distance(std::size_t i, std::size_t j) const;

  // Shortest-path distance in the unit-edge graph, by search. Agrees with
  // Distance on every universe this class constructs; kept separate so the
  // agreement is testable.
  double GraphDistance(std::size_t i, std::size_t j) const;
  // Search-based distance that never materializes the universe; the visited
  // set is capped by max_explicit.
  double GraphDistance(const Dataset& x, const Dataset& y) const;

  // Distances from one source to every dataset (single sweep).
  std::vector<double> DistancesFrom(std::size_t i) const;

  // Unit-edge neighbors.
  std::vector<std::size_t> Neighbors(std::size_t i) const;
  std::vector<Dataset> NeighborDatasets(const Dataset& x) const;

  // Partition into connected components (each sorted, ordered by smallest
  // member), plus the per-dataset component id.
  std::vector<std::vector<std::size_t>> ConnectedComponents() const;
  std::vector<std::size_t> ComponentIds() const;

  // Numeric value of a record's alphabet label; InputError when the label
  // does not parse as a number.
  double RecordValue(std::int32_t record) const;
  bool numeric_alphabet() const { return numeric_alphabet_; }

  void set_max_explicit(std::size_t cap) { max_explicit_ = cap; }
  std::size_t max_explicit() const { return max_explicit_; }

 private:
  DataUniverse() = default;
  void Materialize() const;
  void CanonicalizeInPlace(Dataset& x) const;

  DatasetMode mode_ = DatasetMode::kVector;
  MetricKind metric_ = MetricKind::kHamming;
  std::vector<std::string> alphabet_;
  std::vector<int> lengths_;
  std::vector<double> alphabet_values_;
  bool numeric_alphabet_ = false;
  std::size_t max_explicit_ = std::size_t{1} << 20;

  mutable std::optional<std::vector<Dataset>> datasets_;
  mutable std::shared_ptr<const std::vector<std::string>> labels_;
  mutable std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;  // explicit graph only
};

// Canonical printable form: record labels joined with ','.
std::string DatasetLabel(const Dataset& x,
                         const std::vector<std::string>& alphabet);

// Datasets whose record at `record_index` equals `value` (and which are long
// enough to have that record). Vector mode only.
EventSet RecordValueEvent(const DataUniverse& u, std::size_t record_index,
                          std::int32_t value);

}  // namespace privbound

#endif  // PRIVBOUND_UNIVERSE_H_
