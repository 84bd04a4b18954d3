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

#include "privbound/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "privbound/errors.h"
#include "privbound/kernels.h"
#include "privbound/numeric.h"
#include "privbound/rng.h"

namespace privbound {

double DiscreteMechanism::Mass(const Dataset& x, std::size_t outcome) const {
  return Distribution(x).weight(outcome);
}

std::size_t DiscreteMechanism::SampleIndex(const Dataset& x,
                                           std::uint64_t seed,
                                           std::uint64_t draw) const {
  const FiniteMeasure law = Distribution(x);
  CounterRng rng(seed, DatasetStreamKey(x), draw);
  const double u = rng.NextUniform();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < law.size(); ++i) {
    acc += law.weight(i);
    if (u < acc) return i;
  }
  return law.size() - 1;
}

double RealOutputMechanism::Density(const Dataset& x, double t) const {
  return std::exp(LogDensity(x, t));
}

Query MakeSumQuery(const DataUniverse& u) {
  if (!u.numeric_alphabet()) {
    throw InputError("sum query: alphabet is not numeric");
  }
  std::vector<double> values;
  values.reserve(u.alphabet().size());
  for (std::int32_t r = 0; r < static_cast<std::int32_t>(u.alphabet().size());
       ++r) {
    values.push_back(u.RecordValue(r));
  }
  Query q;
  q.name = "sum";
  q.fn = [values = std::move(values)](const Dataset& x) {
    double s = 0.0;
    for (const std::int32_t r : x.records) {
      s += values[static_cast<std::size_t>(r)];
    }
    return s;
  };
  return q;
}

Query MakeClampedValueQuery(const DataUniverse& u, double lo, double hi) {
  if (!u.numeric_alphabet()) {
    throw InputError("clamped value query: alphabet is not numeric");
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InputError("clamped value query: need finite lo < hi");
  }
  std::vector<double> values;
  values.reserve(u.alphabet().size());
  for (std::int32_t r = 0; r < static_cast<std::int32_t>(u.alphabet().size());
       ++r) {
    values.push_back(u.RecordValue(r));
  }
  Query q;
  q.name = "clamp(" + FormatSig12(lo) + "," + FormatSig12(hi) + ")";
  q.fn = [values = std::move(values), lo, hi](const Dataset& x) {
    if (x.records.size() != 1) {
      throw InputError("clamped value query: dataset must hold one record");
    }
    const double v = values[static_cast<std::size_t>(x.records[0])];
    return std::clamp(v, lo, hi);
  };
  return q;
}

LaplaceMechanism::LaplaceMechanism(Query query, double sensitivity,
                                   double epsilon)
    : query_(std::move(query)), sensitivity_(sensitivity), epsilon_(epsilon) {
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw InputError("laplace: sensitivity must be finite and positive");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InputError("laplace: epsilon must be finite and positive");
  }
  scale_ = sensitivity_ / epsilon_;
}

double LaplaceMechanism::LogDensity(const Dataset& x, double t) const {
  return OutputDensity(x).LogDensity(t);
}

double LaplaceMechanism::SampleReal(const Dataset& x, std::uint64_t seed,
                                    std::uint64_t draw) const {
  CounterRng rng(seed, DatasetStreamKey(x), draw);
  return rng.NextLaplace(query_(x), scale_);
}

ShiftedLaplace LaplaceMechanism::OutputDensity(const Dataset& x) const {
  return ShiftedLaplace{query_(x), scale_};
}

ClampedCountLaplace::ClampedCountLaplace(const DataUniverse& u, int a0, int a1,
                                         double epsilon)
    : LaplaceMechanism(MakeClampedValueQuery(u, a0, a1),
                       static_cast<double>(a1) - static_cast<double>(a0),
                       epsilon),
      a0_(a0),
      a1_(a1) {}

RandomizedResponse::RandomizedResponse(double epsilon, int n,
                                       std::vector<std::string> alphabet)
    : epsilon_(epsilon), n_(n), alphabet_(std::move(alphabet)) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InputError("randomized response: epsilon must be finite and >= 0");
  }
  if (n < 1) throw InputError("randomized response: need n >= 1");
  if (alphabet_.size() < 2) {
    throw InputError("randomized response: need at least two symbols");
  }
  const double a = static_cast<double>(alphabet_.size());
  flip_ = (a - 1.0) / (std::exp(epsilon_) + a - 1.0);

  std::size_t count = 1;
  for (int k = 0; k < n_; ++k) {
    if (count > (std::size_t{1} << 26) / alphabet_.size()) {
      throw ResourceError("randomized response: output space too large");
    }
    count *= alphabet_.size();
  }
  auto labels = std::make_shared<std::vector<std::string>>();
  labels->reserve(count);
  std::vector<std::int32_t> rec(n_, 0);
  Dataset x{DatasetMode::kVector, rec};
  for (std::size_t i = 0; i < count; ++i) {
    x.records = rec;
    labels->push_back(DatasetLabel(x, alphabet_));
    int pos = n_ - 1;
    while (pos >= 0 &&
           rec[pos] == static_cast<std::int32_t>(alphabet_.size()) - 1) {
      rec[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++rec[pos];
  }
  labels_ = labels;
}

std::string RandomizedResponse::name() const {
  return "rr(eps=" + FormatSig12(epsilon_) + ",n=" + std::to_string(n_) + ")";
}

std::size_t RandomizedResponse::TupleIndex(const Dataset& x) const {
  if (x.mode != DatasetMode::kVector ||
      x.records.size() != static_cast<std::size_t>(n_)) {
    throw InputError("randomized response: dataset must be a tuple of " +
                     std::to_string(n_) + " records");
  }
  std::size_t idx = 0;
  for (const std::int32_t r : x.records) {
    if (r < 0 || r >= static_cast<std::int32_t>(alphabet_.size())) {
      throw InputError("randomized response: record out of alphabet");
    }
    idx = idx * alphabet_.size() + static_cast<std::size_t>(r);
  }
  return idx;
}

FiniteMeasure RandomizedResponse::Distribution(const Dataset& x) const {
  TupleIndex(x);  // validates
  std::vector<double> w(labels_->size());
  for (std::size_t t = 0; t < w.size(); ++t) w[t] = Mass(x, t);
  return FiniteMeasure(labels_, std::move(w), /*normalized=*/true);
}

double RandomizedResponse::Mass(const Dataset& x, std::size_t outcome) const {
  TupleIndex(x);  // validates
  const double a = static_cast<double>(alphabet_.size());
  const double denom = std::exp(epsilon_) + a - 1.0;
  const double keep = std::exp(epsilon_) / denom;
  const double other = 1.0 / denom;
  std::size_t rest = outcome;
  double mass = 1.0;
  // Decode the outcome tuple from the low digit up; coordinates are
  // independent, so the order does not matter.
  for (int c = n_ - 1; c >= 0; --c) {
    const auto digit =
        static_cast<std::int32_t>(rest % alphabet_.size());
    rest /= alphabet_.size();
    mass *= (digit == x.records[static_cast<std::size_t>(c)]) ? keep : other;
  }
  return mass;
}

std::size_t RandomizedResponse::SampleIndex(const Dataset& x,
                                            std::uint64_t seed,
                                            std::uint64_t draw) const {
  TupleIndex(x);  // validates
  const double a = static_cast<double>(alphabet_.size());
  const double denom = std::exp(epsilon_) + a - 1.0;
  const double keep = std::exp(epsilon_) / denom;
  const double other = 1.0 / denom;
  CounterRng rng(seed, DatasetStreamKey(x), draw);
  std::size_t idx = 0;
  for (int c = 0; c < n_; ++c) {
    const std::int32_t xc = x.records[static_cast<std::size_t>(c)];
    const double u = rng.NextUniform();
    std::int32_t digit;
    if (u < keep) {
      digit = xc;
    } else {
      auto k = static_cast<std::size_t>((u - keep) / other);
      k = std::min(k, alphabet_.size() - 2);
      digit = static_cast<std::int32_t>(k) +
              (static_cast<std::int32_t>(k) >= xc ? 1 : 0);
    }
    idx = idx * alphabet_.size() + static_cast<std::size_t>(digit);
  }
  return idx;
}

TableMechanism::TableMechanism(
    std::string name, std::vector<std::string> alphabet,
    std::shared_ptr<const std::vector<std::string>> output_labels,
    std::vector<std::pair<Dataset, std::vector<double>>> rows)
    : name_(std::move(name)),
      alphabet_(std::move(alphabet)),
      labels_(std::move(output_labels)) {
  if (labels_ == nullptr || labels_->empty()) {
    throw InputError("table mechanism: empty output space");
  }
  rows_.reserve(rows.size());
  for (auto& [x, w] : rows) {
    if (w.size() != labels_->size()) {
      throw InputError("table mechanism: row width mismatch");
    }
    double sum = 0.0;
    for (const double v : w) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError("table mechanism: weights must be finite and >= 0");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InputError("table mechanism: row mass " + FormatSig12(sum) +
                       " is not 1");
    }
    for (double& v : w) v /= sum;
    const Dataset canon = MakeDataset(x.mode, x.records);
    const std::string key = DatasetLabel(canon, alphabet_);
    if (!row_of_.emplace(key, rows_.size()).second) {
      throw InputError("table mechanism: duplicate row for " + key);
    }
    rows_.push_back(std::move(w));
  }
}

const std::vector<double>& TableMechanism::Row(const Dataset& x) const {
  const Dataset canon = MakeDataset(x.mode, x.records);
  const auto it = row_of_.find(DatasetLabel(canon, alphabet_));
  if (it == row_of_.end()) {
    throw InputError("table mechanism: no row for dataset " +
                     DatasetLabel(canon, alphabet_));
  }
  return rows_[it->second];
}

FiniteMeasure TableMechanism::Distribution(const Dataset& x) const {
  return FiniteMeasure(labels_, Row(x), /*normalized=*/true);
}

double TableMechanism::Mass(const Dataset& x, std::size_t outcome) const {
  return Row(x)[outcome];
}

TableMechanism MakeIdentityMechanism(const DataUniverse& u) {
  std::vector<std::pair<Dataset, std::vector<double>>> rows;
  rows.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::vector<double> w(u.size(), 0.0);
    w[i] = 1.0;
    rows.emplace_back(u.dataset(i), std::move(w));
  }
  return TableMechanism("identity", u.alphabet(), u.labels(), std::move(rows));
}

TableMechanism MakeConstantMechanism(const DataUniverse& u,
                                     FiniteMeasure law) {
  std::vector<std::pair<Dataset, std::vector<double>>> rows;
  rows.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    rows.emplace_back(u.dataset(i), law.weights());
  }
  return TableMechanism("constant", u.alphabet(), law.outcomes_ptr(),
                        std::move(rows));
}

namespace {

// Realized worst-case unit-pair query gap; declared sensitivity below it is
// a hard input error (the declared noise scale would be too small).
std::pair<std::vector<double>, PairScan> AuditLaplace(
    const LaplaceMechanism& m, const DataUniverse& u) {
  std::vector<double> values(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    values[i] = m.QueryValue(u.dataset(i));
  }
  const PairScan gap = MaxUnitPairGap(u, values);
  if (gap.value > m.sensitivity() + kTolerance) {
    throw InputError("laplace: declared sensitivity " +
                     FormatSig12(m.sensitivity()) +
                     " is below the realized unit-pair gap " +
                     FormatSig12(gap.value) + " (pair " + u.label(gap.a) +
                     " / " + u.label(gap.b) + ")");
  }
  return {std::move(values), gap};
}

void CheckBudget(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InputError("budget epsilon must be finite and >= 0");
  }
}

}  // namespace

double MinEpsilon(const Mechanism& m, const DataUniverse& u) {
  if (const auto* dm = dynamic_cast<const DiscreteMechanism*>(&m)) {
    return MaxUnitPairLogRatio(u, DistributionRows(*dm, u)).value;
  }
  if (const auto* lm = dynamic_cast<const LaplaceMechanism*>(&m)) {
    return AuditLaplace(*lm, u).second.value / lm->scale();
  }
  throw UnsupportedError("MinEpsilon: unsupported mechanism type " + m.name());
}

DpVerdict VerifyEpsDp(const Mechanism& m, const DataUniverse& u,
                      double epsilon, double tol) {
  CheckBudget(epsilon);
  DpVerdict verdict;
  if (const auto* dm = dynamic_cast<const DiscreteMechanism*>(&m)) {
    const PairScan scan = MaxUnitPairLogRatio(u, DistributionRows(*dm, u));
    verdict.min_epsilon = scan.value;
    verdict.pass = scan.value <= epsilon + tol;
    if (!verdict.pass) {
      DpWitness w;
      w.a = scan.a;
      w.b = scan.b;
      w.a_label = u.label(scan.a);
      w.b_label = u.label(scan.b);
      w.outcome = (*dm->output_labels())[scan.outcome];
      w.log_ratio = scan.value;
      verdict.witness = w;
    }
    return verdict;
  }
  if (const auto* lm = dynamic_cast<const LaplaceMechanism*>(&m)) {
    const auto [values, gap] = AuditLaplace(*lm, u);
    verdict.min_epsilon = gap.value / lm->scale();
    verdict.pass = verdict.min_epsilon <= epsilon + tol;
    if (!verdict.pass) {
      DpWitness w;
      w.a = gap.a;
      w.b = gap.b;
      w.a_label = u.label(gap.a);
      w.b_label = u.label(gap.b);
      // The worst log ratio is attained by any output at or beyond the
      // smaller of the two query values.
      w.outcome = FormatSig12(std::min(values[gap.a], values[gap.b]));
      w.log_ratio = verdict.min_epsilon;
      verdict.witness = w;
    }
    return verdict;
  }
  throw UnsupportedError("VerifyEpsDp: unsupported mechanism type " +
                         m.name());
}

GroupVerdict GroupPrivacyCheck(const Mechanism& m, const DataUniverse& u,
                               double epsilon, double tol) {
  CheckBudget(epsilon);
  GroupScan scan;
  const auto* dm = dynamic_cast<const DiscreteMechanism*>(&m);
  const LaplaceMechanism* lm = nullptr;
  std::vector<double> values;
  if (dm != nullptr) {
    scan = GroupLipschitzScan(u, DistributionRows(*dm, u), epsilon, tol);
  } else if ((lm = dynamic_cast<const LaplaceMechanism*>(&m)) != nullptr) {
    values = AuditLaplace(*lm, u).first;
    scan = GroupLipschitzScanValues(u, values, 1.0 / lm->scale(), epsilon,
                                    tol);
  } else {
    throw UnsupportedError("GroupPrivacyCheck: unsupported mechanism type " +
                           m.name());
  }
  GroupVerdict verdict;
  verdict.pass = scan.pass;
  if (!scan.pass) {
    GroupWitness w;
    w.a = scan.a;
    w.b = scan.b;
    w.a_label = u.label(scan.a);
    w.b_label = u.label(scan.b);
    if (dm != nullptr) {
      w.outcome = (*dm->output_labels())[scan.outcome];
    } else {
      w.outcome = FormatSig12(std::min(values[scan.a], values[scan.b]));
    }
    w.distance = scan.distance;
    w.mult_distance = scan.mult_distance;
    verdict.witness = w;
  }
  return verdict;
}

std::string Sample(const Mechanism& m, const Dataset& x, std::uint64_t seed,
                   std::uint64_t draw) {
  if (const auto* dm = dynamic_cast<const DiscreteMechanism*>(&m)) {
    return (*dm->output_labels())[dm->SampleIndex(x, seed, draw)];
  }
  const auto& rm = dynamic_cast<const RealOutputMechanism&>(m);
  return FormatSig12(rm.SampleReal(x, seed, draw));
}

bool VerifyByUnitPairs(const Mechanism& m, const DataUniverse& u,
                       double epsilon, double tol) {
  return VerifyEpsDp(m, u, epsilon, tol).pass;
}

bool VerifyByIntervalContainment(const DiscreteMechanism& m,
                                 const DataUniverse& u, double epsilon,
                                 double tol) {
  CheckBudget(epsilon);
  const auto rows = DistributionRows(m, u);
  const auto labels = m.output_labels();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const FiniteMeasure pi(labels, rows[i]);
    const MeasureInterval ball = MultBall(pi, epsilon);
    for (const std::size_t j : u.Neighbors(i)) {
      if (j <= i) continue;
      if (!IntervalContains(ball, FiniteMeasure(labels, rows[j]), tol)) {
        return false;
      }
      // Containment in one direction bounds both ratios, but the reverse
      // check is what the definition states; run it too.
      if (!IntervalContains(MultBall(FiniteMeasure(labels, rows[j]), epsilon),
                            pi, tol)) {
        return false;
      }
    }
  }
  return true;
}

bool VerifyByPointwiseRatios(const DiscreteMechanism& m, const DataUniverse& u,
                             double epsilon, double tol) {
  CheckBudget(epsilon);
  const auto rows = DistributionRows(m, u);
  const double factor = std::exp(epsilon + tol);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (const std::size_t j : u.Neighbors(i)) {
      if (j <= i) continue;
      for (std::size_t t = 0; t < rows[i].size(); ++t) {
        const double p = rows[i][t];
        const double q = rows[j][t];
        const bool pz = IsZeroWeight(p);
        const bool qz = IsZeroWeight(q);
        if (pz != qz) return false;
        if (pz && qz) continue;
        if (p > q * factor || q > p * factor) return false;
      }
    }
  }
  return true;
}

std::vector<std::vector<double>> DistributionRows(const DiscreteMechanism& m,
                                                  const DataUniverse& u) {
  std::vector<std::vector<double>> rows;
  rows.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    rows.push_back(m.Distribution(u.dataset(i)).weights());
  }
  return rows;
}

}  // namespace privbound
