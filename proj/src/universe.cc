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

#include "privbound/universe.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "privbound/errors.h"
#include "privbound/numeric.h"

namespace privbound {
namespace {

void ValidateAlphabet(const std::vector<std::string>& alphabet) {
  if (alphabet.empty()) throw InputError("universe: empty alphabet");
  std::unordered_set<std::string> seen;
  for (const auto& a : alphabet) {
    if (!seen.insert(a).second) {
      throw InputError("universe: duplicate alphabet label '" + a + "'");
    }
  }
}

std::vector<double> ParseAlphabetValues(
    const std::vector<std::string>& alphabet, bool* all_numeric) {
  std::vector<double> values(alphabet.size(),
                             std::numeric_limits<double>::quiet_NaN());
  *all_numeric = true;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(alphabet[i], &pos);
      if (pos == alphabet[i].size()) {
        values[i] = v;
      } else {
        *all_numeric = false;
      }
    } catch (const std::exception&) {
      *all_numeric = false;
    }
  }
  return values;
}

}  // namespace

Dataset MakeDataset(DatasetMode mode, std::vector<std::int32_t> records) {
  Dataset x{mode, std::move(records)};
  if (mode == DatasetMode::kMultiset) {
    std::sort(x.records.begin(), x.records.end());
  }
  return x;
}

double Hamming(const Dataset& x, const Dataset& y) {
  if (x.mode != DatasetMode::kVector || y.mode != DatasetMode::kVector) {
    throw InputError("hamming: defined for vector datasets only");
  }
  if (x.size() != y.size()) return kInfinity;
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.records[i] != y.records[i]) d += 1.0;
  }
  return d;
}

double SymmetricDifference(const Dataset& x, const Dataset& y) {
  if (x.mode != DatasetMode::kMultiset || y.mode != DatasetMode::kMultiset) {
    throw InputError(
        "symmetric difference: defined for multiset datasets only");
  }
  // Both sorted; count elements unmatched on each side.
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    if (x.records[i] == y.records[j]) {
      ++i;
      ++j;
    } else if (x.records[i] < y.records[j]) {
      ++i;
      d += 1.0;
    } else {
      ++j;
      d += 1.0;
    }
  }
  d += static_cast<double>((x.size() - i) + (y.size() - j));
  return d;
}

std::string DatasetLabel(const Dataset& x,
                         const std::vector<std::string>& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < x.records.size(); ++i) {
    const auto r = x.records[i];
    if (r < 0 || static_cast<std::size_t>(r) >= alphabet.size()) {
      throw InputError("dataset label: record outside the alphabet");
    }
    if (i > 0) out += ',';
    out += alphabet[r];
  }
  return out;
}

DataUniverse DataUniverse::Product(DatasetMode mode,
                                   std::vector<std::string> alphabet,
                                   std::vector<int> lengths,
                                   MetricKind metric) {
  ValidateAlphabet(alphabet);
  if (lengths.empty()) throw InputError("universe: no dataset lengths");
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  if (lengths.front() < 0) throw InputError("universe: negative length");

  if (metric == MetricKind::kExplicitGraph) {
    throw InputError("universe: explicit-graph metric needs an edge list");
  }
  if (metric == MetricKind::kHamming && mode != DatasetMode::kVector) {
    throw InputError("universe: hamming requires vector datasets");
  }
  if (metric == MetricKind::kSymmetricDifference) {
    if (mode != DatasetMode::kMultiset) {
      throw InputError(
          "universe: symmetric difference requires multiset datasets");
    }
    for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
      if (lengths[i + 1] != lengths[i] + 1) {
        throw InputError(
            "universe: symmetric-difference universes need a contiguous "
            "length range, otherwise the unit-edge graph disagrees with the "
            "metric");
      }
    }
  }

  DataUniverse u;
  u.mode_ = mode;
  u.metric_ = metric;
  u.alphabet_ = std::move(alphabet);
  u.lengths_ = std::move(lengths);
  u.alphabet_values_ = ParseAlphabetValues(u.alphabet_, &u.numeric_alphabet_);
  return u;
}

DataUniverse DataUniverse::ExplicitGraph(
    std::vector<std::string> alphabet, DatasetMode mode,
    std::vector<Dataset> datasets,
    std::vector<std::pair<std::size_t, std::size_t>> edges) {
  ValidateAlphabet(alphabet);
  if (datasets.empty()) throw InputError("universe: no datasets");

  DataUniverse u;
  u.mode_ = mode;
  u.metric_ = MetricKind::kExplicitGraph;
  u.alphabet_ = std::move(alphabet);
  u.alphabet_values_ = ParseAlphabetValues(u.alphabet_, &u.numeric_alphabet_);

  std::unordered_set<int> lengths_seen;
  for (auto& x : datasets) {
    x.mode = mode;
    u.CanonicalizeInPlace(x);
    for (const auto r : x.records) {
      if (r < 0 || static_cast<std::size_t>(r) >= u.alphabet_.size()) {
        throw InputError("universe: record outside the alphabet");
      }
    }
    lengths_seen.insert(static_cast<int>(x.size()));
  }
  u.lengths_.assign(lengths_seen.begin(), lengths_seen.end());
  std::sort(u.lengths_.begin(), u.lengths_.end());

  u.datasets_ = std::move(datasets);
  auto labels = std::make_shared<std::vector<std::string>>();
  labels->reserve(u.datasets_->size());
  for (const auto& x : *u.datasets_) {
    labels->push_back(DatasetLabel(x, u.alphabet_));
  }
  u.labels_ = labels;
  for (std::size_t i = 0; i < labels->size(); ++i) {
    if (!u.index_.emplace((*labels)[i], i).second) {
      throw InputError("universe: duplicate dataset '" + (*labels)[i] + "'");
    }
  }

  u.adjacency_.assign(u.datasets_->size(), {});
  for (const auto& [a, b] : edges) {
    if (a >= u.datasets_->size() || b >= u.datasets_->size() || a == b) {
      throw InputError("universe: bad edge");
    }
    u.adjacency_[a].push_back(b);
    u.adjacency_[b].push_back(a);
  }
  for (auto& adj : u.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return u;
}

DataUniverse DataUniverse::BinaryVectors(int n) {
  return Product(DatasetMode::kVector, {"0", "1"}, {n}, MetricKind::kHamming);
}

DataUniverse DataUniverse::CountRecords(int max_count) {
  if (max_count < 0) throw InputError("universe: negative count bound");
  std::vector<std::string> alphabet;
  alphabet.reserve(max_count + 1);
  for (int k = 0; k <= max_count; ++k) alphabet.push_back(std::to_string(k));
  return Product(DatasetMode::kVector, std::move(alphabet), {1},
                 MetricKind::kHamming);
}

void DataUniverse::CanonicalizeInPlace(Dataset& x) const {
  if (mode_ == DatasetMode::kMultiset) {
    std::sort(x.records.begin(), x.records.end());
  }
}

void DataUniverse::Materialize() const {
  if (datasets_.has_value()) return;

  const std::size_t r = alphabet_.size();
  // Count first so oversized universes fail before any allocation.
  std::size_t count = 0;
  for (int n : lengths_) {
    std::size_t block = 1;
    if (mode_ == DatasetMode::kVector) {
      for (int k = 0; k < n; ++k) {
        if (block > max_explicit_ / std::max<std::size_t>(r, 1)) {
          block = max_explicit_ + 1;
          break;
        }
        block *= r;
      }
    } else {
      // Multisets of size n over r symbols: C(n + r - 1, r - 1).
      for (std::size_t k = 1; k < r; ++k) {
        block = block * (n + k) / k;
        if (block > max_explicit_) break;
      }
    }
    count += block;
    if (count > max_explicit_) {
      throw ResourceError("universe: explicit scan over " +
                          std::to_string(count) +
                          "+ datasets exceeds the cap of " +
                          std::to_string(max_explicit_));
    }
  }

  std::vector<Dataset> all;
  all.reserve(count);
  for (int n : lengths_) {
    if (n == 0) {
      all.push_back(Dataset{mode_, {}});
      continue;
    }
    std::vector<std::int32_t> rec(n, 0);
    while (true) {
      if (mode_ == DatasetMode::kVector ||
          std::is_sorted(rec.begin(), rec.end())) {
        all.push_back(Dataset{mode_, rec});
      }
      int pos = n - 1;
      while (pos >= 0 && rec[pos] == static_cast<std::int32_t>(r) - 1) {
        rec[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++rec[pos];
    }
  }

  datasets_ = std::move(all);
  auto labels = std::make_shared<std::vector<std::string>>();
  labels->reserve(datasets_->size());
  for (const auto& x : *datasets_) {
    labels->push_back(DatasetLabel(x, alphabet_));
  }
  labels_ = labels;
  index_.reserve(labels->size());
  for (std::size_t i = 0; i < labels->size(); ++i) {
    index_.emplace((*labels)[i], i);
  }
}

std::size_t DataUniverse::size() const {
  Materialize();
  return datasets_->size();
}

const std::vector<Dataset>& DataUniverse::datasets() const {
  Materialize();
  return *datasets_;
}

const Dataset& DataUniverse::dataset(std::size_t i) const {
  Materialize();
  return (*datasets_)[i];
}

const std::string& DataUniverse::label(std::size_t i) const {
  Materialize();
  return (*labels_)[i];
}

std::shared_ptr<const std::vector<std::string>> DataUniverse::labels() const {
  Materialize();
  return labels_;
}

std::size_t DataUniverse::IndexOf(const Dataset& x) const {
  Materialize();
  Dataset key = x;
  key.mode = mode_;
  CanonicalizeInPlace(key);
  const auto it = index_.find(DatasetLabel(key, alphabet_));
  if (it == index_.end()) {
    throw InputError("universe: dataset '" + DatasetLabel(key, alphabet_) +
                     "' is not a member");
  }
  return it->second;
}

bool DataUniverse::Contains(const Dataset& x) const {
  if (x.mode != mode_) return false;
  for (const auto r : x.records) {
    if (r < 0 || static_cast<std::size_t>(r) >= alphabet_.size()) return false;
  }
  if (metric_ == MetricKind::kExplicitGraph) {
    Dataset key = x;
    CanonicalizeInPlace(key);
    return index_.find(DatasetLabel(key, alphabet_)) != index_.end();
  }
  const int n = static_cast<int>(x.size());
  return std::find(lengths_.begin(), lengths_.end(), n) != lengths_.end();
}

double DataUniverse::Distance(const Dataset& x, const Dataset& y) const {
  if (!Contains(x) || !Contains(y)) {
    throw InputError("distance: dataset outside the universe");
  }
  switch (metric_) {
    case MetricKind::kHamming:
      return Hamming(x, y);
    case MetricKind::kSymmetricDifference: {
      Dataset a = x, b = y;
      CanonicalizeInPlace(a);
      CanonicalizeInPlace(b);
      return SymmetricDifference(a, b);
    }
    case MetricKind::kExplicitGraph:
      return GraphDistance(IndexOf(x), IndexOf(y));
  }
  throw InputError("distance: unknown metric");
}

double DataUniverse::Distance(std::size_t i, std::size_t j) const {
  if (metric_ == MetricKind::kExplicitGraph) return GraphDistance(i, j);
  return Distance(dataset(i), dataset(j));
}

std::vector<std::size_t> DataUniverse::Neighbors(std::size_t i) const {
  Materialize();
  if (metric_ == MetricKind::kExplicitGraph) return adjacency_[i];
  std::vector<std::size_t> out;
  for (const auto& y : NeighborDatasets((*datasets_)[i])) {
    out.push_back(IndexOf(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Dataset> DataUniverse::NeighborDatasets(const Dataset& x) const {
  if (!Contains(x)) {
    throw InputError("neighbors: dataset outside the universe");
  }
  std::vector<Dataset> out;
  if (metric_ == MetricKind::kExplicitGraph) {
    const std::size_t i = IndexOf(x);
    for (const std::size_t j : adjacency_[i]) out.push_back((*datasets_)[j]);
    return out;
  }
  const auto r = static_cast<std::int32_t>(alphabet_.size());
  if (metric_ == MetricKind::kHamming) {
    for (std::size_t p = 0; p < x.size(); ++p) {
      for (std::int32_t v = 0; v < r; ++v) {
        if (v == x.records[p]) continue;
        Dataset y = x;
        y.records[p] = v;
        out.push_back(std::move(y));
      }
    }
    return out;
  }
  // Symmetric difference: add one record or remove one record, staying
  // within the allowed lengths.
  const int n = static_cast<int>(x.size());
  const bool can_grow =
      std::find(lengths_.begin(), lengths_.end(), n + 1) != lengths_.end();
  const bool can_shrink =
      std::find(lengths_.begin(), lengths_.end(), n - 1) != lengths_.end();
  if (can_grow) {
    for (std::int32_t v = 0; v < r; ++v) {
      Dataset y = x;
      y.records.push_back(v);
      CanonicalizeInPlace(y);
      out.push_back(std::move(y));
    }
  }
  if (can_shrink) {
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (p > 0 && x.records[p] == x.records[p - 1]) continue;  // same multiset
      Dataset y = x;
      y.records.erase(y.records.begin() + p);
      out.push_back(std::move(y));
    }
  }
  return out;
}

double DataUniverse::GraphDistance(std::size_t i, std::size_t j) const {
  Materialize();
  if (i >= datasets_->size() || j >= datasets_->size()) {
    throw InputError("graph distance: index outside the universe");
  }
  if (i == j) return 0.0;
  std::vector<std::int64_t> dist(datasets_->size(), -1);
  dist[i] = 0;
  std::deque<std::size_t> queue{i};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const std::size_t nb : Neighbors(cur)) {
      if (dist[nb] >= 0) continue;
      dist[nb] = dist[cur] + 1;
      if (nb == j) return static_cast<double>(dist[nb]);
      queue.push_back(nb);
    }
  }
  return kInfinity;
}

double DataUniverse::GraphDistance(const Dataset& x, const Dataset& y) const {
  if (!Contains(x) || !Contains(y)) {
    throw InputError("graph distance: dataset outside the universe");
  }
  Dataset a = x, b = y;
  CanonicalizeInPlace(a);
  CanonicalizeInPlace(b);
  if (a == b) return 0.0;
  const std::string target = DatasetLabel(b, alphabet_);
  std::unordered_map<std::string, std::size_t> dist;
  dist.emplace(DatasetLabel(a, alphabet_), 0);
  std::deque<Dataset> queue{a};
  while (!queue.empty()) {
    const Dataset cur = std::move(queue.front());
    queue.pop_front();
    const std::size_t d = dist.at(DatasetLabel(cur, alphabet_));
    for (auto& nb : NeighborDatasets(cur)) {
      const std::string key = DatasetLabel(nb, alphabet_);
      if (dist.count(key)) continue;
      if (key == target) return static_cast<double>(d + 1);
      dist.emplace(key, d + 1);
      if (dist.size() > max_explicit_) {
        throw ResourceError("graph distance: search exceeded the cap");
      }
      queue.push_back(std::move(nb));
    }
  }
  return kInfinity;
}

std::vector<double> DataUniverse::DistancesFrom(std::size_t i) const {
  Materialize();
  const std::size_t n = datasets_->size();
  if (i >= n) throw InputError("distances: index outside the universe");
  std::vector<double> out(n, kInfinity);
  if (metric_ != MetricKind::kExplicitGraph) {
    for (std::size_t j = 0; j < n; ++j) out[j] = Distance(i, j);
    return out;
  }
  out[i] = 0.0;
  std::deque<std::size_t> queue{i};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const std::size_t nb : adjacency_[cur]) {
      if (!std::isinf(out[nb])) continue;
      out[nb] = out[cur] + 1.0;
      queue.push_back(nb);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> DataUniverse::ConnectedComponents()
    const {
  const auto ids = ComponentIds();
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= components.size()) components.resize(ids[i] + 1);
    components[ids[i]].push_back(i);
  }
  return components;
}

std::vector<std::size_t> DataUniverse::ComponentIds() const {
  Materialize();
  const std::size_t n = datasets_->size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> ids(n, kUnset);
  std::size_t next = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (ids[start] != kUnset) continue;
    ids[start] = next;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (const std::size_t nb : Neighbors(cur)) {
        if (ids[nb] != kUnset) continue;
        ids[nb] = next;
        queue.push_back(nb);
      }
    }
    ++next;
  }
  return ids;
}

double DataUniverse::RecordValue(std::int32_t record) const {
  if (record < 0 || static_cast<std::size_t>(record) >= alphabet_.size()) {
    throw InputError("record value: record outside the alphabet");
  }
  if (!numeric_alphabet_) {
    throw InputError("record value: alphabet label '" + alphabet_[record] +
                     "' is not numeric");
  }
  return alphabet_values_[record];
}

EventSet RecordValueEvent(const DataUniverse& u, std::size_t record_index,
                          std::int32_t value) {
  if (u.mode() != DatasetMode::kVector) {
    throw InputError("record-value event: vector universes only");
  }
  if (value < 0 || static_cast<std::size_t>(value) >= u.alphabet().size()) {
    throw InputError("record-value event: value outside the alphabet");
  }
  bool reachable = false;
  for (const int len : u.lengths()) {
    reachable = reachable || record_index < static_cast<std::size_t>(len);
  }
  for (std::size_t i = 0; !reachable && i < u.size(); ++i) {
    reachable = record_index < u.dataset(i).size();
  }
  if (!reachable) {
    throw InputError("record-value event: no dataset has that record");
  }
  EventSet out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& x = u.dataset(i);
    if (record_index < x.size() && x.records[record_index] == value) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace privbound
