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

#include "privbound/io.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "privbound/errors.h"
#include "privbound/numeric.h"

namespace privbound {

namespace {

const Json& Need(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InputError(std::string("json: missing field \"") + key + "\"");
  }
  return *it;
}

double NeedNumber(const Json& j, const char* key) {
  const Json& v = Need(j, key);
  if (!v.is_number()) {
    throw InputError(std::string("json: field \"") + key +
                     "\" must be a number");
  }
  return v.get<double>();
}

std::vector<std::string> NeedStrings(const Json& j, const char* key) {
  const Json& v = Need(j, key);
  if (!v.is_array()) {
    throw InputError(std::string("json: field \"") + key +
                     "\" must be an array");
  }
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Json& e : v) {
    if (!e.is_string()) {
      throw InputError(std::string("json: field \"") + key +
                       "\" must hold strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

void CheckSchema(const Json& j) {
  if (!j.is_object()) throw InputError("json: expected an object");
  const auto it = j.find("schema");
  if (it != j.end() && (!it->is_number_integer() || it->get<int>() != 1)) {
    throw InputError("json: unsupported schema version");
  }
}

Json ToJson(const FiniteMeasure& mu) {
  Json j;
  j["schema"] = 1;
  j["outcomes"] = mu.outcomes();
  j["weights"] = mu.weights();
  j["normalized"] = mu.normalized();
  return j;
}

FiniteMeasure MeasureFromJson(const Json& j) {
  CheckSchema(j);
  std::vector<std::string> outcomes = NeedStrings(j, "outcomes");
  const Json& wj = Need(j, "weights");
  if (!wj.is_array()) throw InputError("json: \"weights\" must be an array");
  std::vector<double> weights;
  weights.reserve(wj.size());
  for (const Json& e : wj) {
    if (!e.is_number()) {
      throw InputError("json: \"weights\" must hold numbers");
    }
    weights.push_back(e.get<double>());
  }
  bool normalized = false;
  if (const auto it = j.find("normalized"); it != j.end()) {
    if (!it->is_boolean()) {
      throw InputError("json: \"normalized\" must be a boolean");
    }
    normalized = it->get<bool>();
  }
  return FiniteMeasure(std::move(outcomes), std::move(weights), normalized);
}

namespace {

const char* ModeName(DatasetMode m) {
  return m == DatasetMode::kVector ? "vector" : "multiset";
}

const char* MetricName(MetricKind m) {
  switch (m) {
    case MetricKind::kHamming:
      return "hamming";
    case MetricKind::kSymmetricDifference:
      return "symdiff";
    case MetricKind::kExplicitGraph:
      return "graph";
  }
  return "hamming";
}

DatasetMode ParseMode(const std::string& s) {
  if (s == "vector") return DatasetMode::kVector;
  if (s == "multiset") return DatasetMode::kMultiset;
  throw InputError("json: unknown mode \"" + s + "\"");
}

MetricKind ParseMetric(const std::string& s) {
  if (s == "hamming") return MetricKind::kHamming;
  if (s == "symdiff") return MetricKind::kSymmetricDifference;
  if (s == "graph") return MetricKind::kExplicitGraph;
  throw InputError("json: unknown metric \"" + s + "\"");
}

}  // namespace

Json ToJson(const DataUniverse& u) {
  Json j;
  j["schema"] = 1;
  j["mode"] = ModeName(u.mode());
  j["alphabet"] = u.alphabet();
  j["metric"] = MetricName(u.metric());
  if (u.metric() == MetricKind::kExplicitGraph) {
    Json datasets = Json::array();
    for (std::size_t i = 0; i < u.size(); ++i) {
      datasets.push_back(u.dataset(i).records);
    }
    j["datasets"] = std::move(datasets);
    Json edges = Json::array();
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (const std::size_t k : u.Neighbors(i)) {
        if (k > i) edges.push_back(Json::array({i, k}));
      }
    }
    j["edges"] = std::move(edges);
  } else {
    j["lengths"] = u.lengths();
  }
  return j;
}

DataUniverse UniverseFromJson(const Json& j) {
  CheckSchema(j);
  const DatasetMode mode = ParseMode(Need(j, "mode").get<std::string>());
  const MetricKind metric = ParseMetric(Need(j, "metric").get<std::string>());
  std::vector<std::string> alphabet = NeedStrings(j, "alphabet");
  if (metric == MetricKind::kExplicitGraph) {
    const Json& dj = Need(j, "datasets");
    std::vector<Dataset> datasets;
    datasets.reserve(dj.size());
    for (const Json& rec : dj) {
      datasets.push_back(
          MakeDataset(mode, rec.get<std::vector<std::int32_t>>()));
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const Json& e : Need(j, "edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw InputError("json: each edge must be a pair of indices");
      }
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return DataUniverse::ExplicitGraph(std::move(alphabet), mode,
                                       std::move(datasets), std::move(edges));
  }
  const Json& lj = Need(j, "lengths");
  return DataUniverse::Product(mode, std::move(alphabet),
                               lj.get<std::vector<int>>(), metric);
}

std::unique_ptr<Mechanism> MechanismFromJson(const Json& j,
                                             const DataUniverse& u) {
  CheckSchema(j);
  const std::string type = Need(j, "type").get<std::string>();
  if (type == "laplace") {
    return std::make_unique<LaplaceMechanism>(MakeSumQuery(u),
                                              NeedNumber(j, "sensitivity"),
                                              NeedNumber(j, "epsilon"));
  }
  if (type == "rr") {
    std::vector<std::string> alphabet = u.alphabet();
    if (j.contains("alphabet")) alphabet = NeedStrings(j, "alphabet");
    const double n = NeedNumber(j, "n");
    return std::make_unique<RandomizedResponse>(NeedNumber(j, "epsilon"),
                                                static_cast<int>(n),
                                                std::move(alphabet));
  }
  if (type == "clamped_count") {
    return std::make_unique<ClampedCountLaplace>(
        u, static_cast<int>(NeedNumber(j, "a0")),
        static_cast<int>(NeedNumber(j, "a1")), NeedNumber(j, "epsilon"));
  }
  throw InputError("json: unknown mechanism type \"" + type + "\"");
}

DataModel ModelFromJson(const Json& j, const DataUniverse& u) {
  CheckSchema(j);
  std::vector<std::string> thetas = NeedStrings(j, "thetas");
  const Json& pj = Need(j, "P");
  if (!pj.is_object()) throw InputError("json: \"P\" must be an object");
  const auto labels = u.labels();
  std::vector<FiniteMeasure> laws;
  laws.reserve(thetas.size());
  for (const std::string& theta : thetas) {
    const auto it = pj.find(theta);
    if (it == pj.end()) {
      throw InputError("json: \"P\" has no law for hypothesis " + theta);
    }
    if (!it->is_object()) {
      throw InputError("json: the law for " + theta + " must be an object");
    }
    std::vector<double> w(u.size(), 0.0);
    double total = 0.0;
    for (const auto& [key, value] : it->items()) {
      if (!value.is_number()) {
        throw InputError("json: weight of \"" + key + "\" must be a number");
      }
      std::size_t idx = u.size();
      for (std::size_t i = 0; i < u.size(); ++i) {
        if ((*labels)[i] == key) {
          idx = i;
          break;
        }
      }
      if (idx == u.size()) {
        throw InputError("json: unknown dataset \"" + key + "\" in the law "
                         "for " + theta);
      }
      w[idx] = value.get<double>();
      total += w[idx];
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InputError("json: the law for " + theta + " has mass " +
                       FormatSig12(total) + ", expected 1");
    }
    for (double& v : w) v /= total;
    laws.emplace_back(labels, std::move(w), /*normalized=*/true);
  }
  return DataModel(&u, std::move(thetas), std::move(laws));
}

EventSet EventFromJson(const Json& j, const DataUniverse& u) {
  if (j.is_array()) {
    EventSet s;
    s.reserve(j.size());
    for (const Json& e : j) {
      if (!e.is_number_integer() || e.get<long long>() < 0) {
        throw InputError("json: event indices must be nonnegative integers");
      }
      const auto i = e.get<std::size_t>();
      if (i >= u.size()) {
        throw InputError("json: event index " + std::to_string(i) +
                         " is outside the universe");
      }
      s.push_back(i);
    }
    return s;
  }
  if (j.is_object()) {
    const auto record = static_cast<std::size_t>(NeedNumber(j, "record"));
    const Json& vj = Need(j, "value");
    std::int32_t value = -1;
    if (vj.is_string()) {
      const std::string label = vj.get<std::string>();
      for (std::size_t r = 0; r < u.alphabet().size(); ++r) {
        if (u.alphabet()[r] == label) {
          value = static_cast<std::int32_t>(r);
          break;
        }
      }
      if (value < 0) {
        throw InputError("json: unknown record value \"" + label + "\"");
      }
    } else if (vj.is_number_integer()) {
      value = vj.get<std::int32_t>();
      if (value < 0 ||
          value >= static_cast<std::int32_t>(u.alphabet().size())) {
        throw InputError("json: record value index out of range");
      }
    } else {
      throw InputError("json: \"value\" must be a label or an index");
    }
    return RecordValueEvent(u, record, value);
  }
  throw InputError(
      "json: an event must be an index array or {\"record\":i,\"value\":r}");
}

PufferfishInstantiation InstantiationFromJson(const Json& j,
                                              const DataUniverse& u) {
  CheckSchema(j);
  PufferfishInstantiation in;
  in.universe = &u;
  in.epsilon = NeedNumber(j, "epsilon");
  const Json& aj = Need(j, "attackers");
  if (!aj.is_array()) {
    throw InputError("json: \"attackers\" must be an array");
  }
  for (const Json& a : aj) {
    in.attackers.push_back(MeasureFromJson(a));
    if (in.attackers.back().size() != u.size()) {
      throw InputError("json: attacker prior size does not match the "
                       "universe");
    }
  }
  const Json& pj = Need(j, "pairs");
  if (!pj.is_array()) throw InputError("json: \"pairs\" must be an array");
  for (const Json& p : pj) {
    if (!p.is_array() || p.size() != 2) {
      throw InputError("json: each pair must hold exactly two events");
    }
    ConjecturePair pair;
    pair.first = EventFromJson(p[0], u);
    pair.second = EventFromJson(p[1], u);
    in.pairs.push_back(std::move(pair));
  }
  return in;
}

Json ToJson(const BoundPair& b, const BoundContext& ctx) {
  Json j;
  j["schema"] = 1;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["context"] = {{"epsilon", ctx.epsilon},
                  {"d_star", ctx.d_star},
                  {"d_double_star", ctx.d_double_star}};
  return j;
}

Json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("write failed for " + path);
}

std::string CsvLine(const std::vector<std::string>& cells) {
  std::ostringstream line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line << ',';
    line << cells[i];
  }
  line << '\n';
  return line.str();
}

}  // namespace privbound
