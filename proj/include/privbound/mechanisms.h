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

#ifndef PRIVBOUND_MECHANISMS_H_
#define PRIVBOUND_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "privbound/measures.h"
#include "privbound/universe.h"

namespace privbound {

// A randomization mechanism: a measurable family x -> P_x of probability
// distributions over a fixed output space. Two output flavors exist: finite
// discrete outcome lists and the real line with a closed-form density.
class Mechanism {
 public:
  virtual ~Mechanism() = default;
  virtual bool discrete() const = 0;
  virtual std::string name() const = 0;
};

class DiscreteMechanism : public Mechanism {
 public:
  bool discrete() const final { return true; }
  virtual const std::shared_ptr<const std::vector<std::string>>&
  output_labels() const = 0;
  // The full output distribution of dataset x (always normalized).
  virtual FiniteMeasure Distribution(const Dataset& x) const = 0;
  // Single-outcome probability; overridden where a direct formula beats
  // materializing the whole row.
  virtual double Mass(const Dataset& x, std::size_t outcome) const;
  // Draw `draw` of the stream keyed by (seed, dataset); reproducible under
  // any sharding of the draw indices.
  virtual std::size_t SampleIndex(const Dataset& x, std::uint64_t seed,
                                  std::uint64_t draw) const;
};

class RealOutputMechanism : public Mechanism {
 public:
  bool discrete() const final { return false; }
  virtual double Density(const Dataset& x, double t) const;
  virtual double LogDensity(const Dataset& x, double t) const = 0;
  virtual double SampleReal(const Dataset& x, std::uint64_t seed,
                            std::uint64_t draw) const = 0;
};

// Real-valued query with a printable name.
struct Query {
  std::string name;
  std::function<double(const Dataset&)> fn;
  double operator()(const Dataset& x) const { return fn(x); }
};

// Sum of the numeric record values.
Query MakeSumQuery(const DataUniverse& u);
// Value of the single record, clamped to [lo, hi].
Query MakeClampedValueQuery(const DataUniverse& u, double lo, double hi);

// Adds Laplace noise of scale sensitivity/epsilon to the query value. The
// sensitivity is declared by the caller; verification against a finite
// universe audits it and treats a declared value below the realized
// worst-case unit-pair gap as a hard input error.
class LaplaceMechanism : public RealOutputMechanism {
 public:
  LaplaceMechanism(Query query, double sensitivity, double epsilon);

  std::string name() const override { return "laplace(" + query_.name + ")"; }
  double LogDensity(const Dataset& x, double t) const override;
  double SampleReal(const Dataset& x, std::uint64_t seed,
                    std::uint64_t draw) const override;

  double QueryValue(const Dataset& x) const { return query_(x); }
  ShiftedLaplace OutputDensity(const Dataset& x) const;
  double scale() const { return scale_; }
  double sensitivity() const { return sensitivity_; }
  double epsilon() const { return epsilon_; }
  const Query& query() const { return query_; }

 private:
  Query query_;
  double sensitivity_;
  double epsilon_;
  double scale_;
};

// Laplace release of a single count record clamped to [a0, a1]; the declared
// sensitivity is the clamp width a1 - a0.
class ClampedCountLaplace : public LaplaceMechanism {
 public:
  ClampedCountLaplace(const DataUniverse& u, int a0, int a1, double epsilon);
  int a0() const { return a0_; }
  int a1() const { return a1_; }

 private:
  int a0_;
  int a1_;
};

// Flips each record of a binary tuple independently with probability
// 1 / (exp(epsilon) + 1) and releases the result.
class RandomizedResponse : public DiscreteMechanism {
 public:
  RandomizedResponse(double epsilon, int n,
                     std::vector<std::string> alphabet = {"0", "1"});

  std::string name() const override;
  const std::shared_ptr<const std::vector<std::string>>& output_labels()
      const override {
    return labels_;
  }
  FiniteMeasure Distribution(const Dataset& x) const override;
  double Mass(const Dataset& x, std::size_t outcome) const override;
  std::size_t SampleIndex(const Dataset& x, std::uint64_t seed,
                          std::uint64_t draw) const override;

  double epsilon() const { return epsilon_; }
  int n() const { return n_; }
  double flip_probability() const { return flip_; }

 private:
  std::size_t TupleIndex(const Dataset& x) const;

  double epsilon_;
  int n_;
  double flip_;
  std::vector<std::string> alphabet_;
  std::shared_ptr<const std::vector<std::string>> labels_;
};

// Explicit row-stochastic table: one output distribution per dataset.
class TableMechanism : public DiscreteMechanism {
 public:
  TableMechanism(std::string name, std::vector<std::string> alphabet,
                 std::shared_ptr<const std::vector<std::string>> output_labels,
                 std::vector<std::pair<Dataset, std::vector<double>>> rows);

  std::string name() const override { return name_; }
  const std::shared_ptr<const std::vector<std::string>>& output_labels()
      const override {
    return labels_;
  }
  FiniteMeasure Distribution(const Dataset& x) const override;
  double Mass(const Dataset& x, std::size_t outcome) const override;

 private:
  const std::vector<double>& Row(const Dataset& x) const;

  std::string name_;
  std::vector<std::string> alphabet_;
  std::shared_ptr<const std::vector<std::string>> labels_;
  std::vector<std::vector<double>> rows_;
  std::unordered_map<std::string, std::size_t> row_of_;
};

// Releases the dataset verbatim (no privacy at all).
TableMechanism MakeIdentityMechanism(const DataUniverse& u);
// Ignores the dataset entirely (perfect privacy).
TableMechanism MakeConstantMechanism(const DataUniverse& u, FiniteMeasure law);

struct DpWitness {
  std::size_t a = 0;
  std::size_t b = 0;
  std::string a_label;
  std::string b_label;
  std::string outcome;
  double log_ratio = 0.0;
};

struct DpVerdict {
  bool pass = false;
  double min_epsilon = 0.0;
  std::optional<DpWitness> witness;  // set when pass is false
};

struct GroupWitness {
  std::size_t a = 0;
  std::size_t b = 0;
  std::string a_label;
  std::string b_label;
  std::string outcome;
  double distance = 0.0;
  double mult_distance = 0.0;
};

struct GroupVerdict {
  bool pass = false;
  std::optional<GroupWitness> witness;
};

// Worst-case log ratio over unit pairs: the smallest budget the mechanism
// satisfies. Discrete mechanisms are scanned outcome by outcome; Laplace
// mechanisms use the closed form (worst unit-pair query gap over the noise
// scale). Audits declared Laplace sensitivities as a side effect.
double MinEpsilon(const Mechanism& m, const DataUniverse& u);

// MinEpsilon <= epsilon + tolerance, with a witness on failure.
DpVerdict VerifyEpsDp(const Mechanism& m, const DataUniverse& u,
                      double epsilon, double tol = kTolerance);

// Checks the Lipschitz condition at every finite distance, not just unit
// pairs: worst-case log ratio of P_x, P_x' at most epsilon * d(x, x').
GroupVerdict GroupPrivacyCheck(const Mechanism& m, const DataUniverse& u,
                               double epsilon, double tol = kTolerance);

// Draws one output and formats it with the mechanism's output labels
// (discrete) or as a decimal (real line).
std::string Sample(const Mechanism& m, const Dataset& x, std::uint64_t seed,
                   std::uint64_t draw = 0);

// Equivalent characterizations of the same budget check, used to cross-test
// the verifier. All three agree on every finite instance.
bool VerifyByUnitPairs(const Mechanism& m, const DataUniverse& u,
                       double epsilon, double tol = kTolerance);
bool VerifyByIntervalContainment(const DiscreteMechanism& m,
                                 const DataUniverse& u, double epsilon,
                                 double tol = kTolerance);
bool VerifyByPointwiseRatios(const DiscreteMechanism& m, const DataUniverse& u,
                             double epsilon, double tol = kTolerance);

// Output rows for every dataset of the universe (dataset-major).
std::vector<std::vector<double>> DistributionRows(const DiscreteMechanism& m,
                                                  const DataUniverse& u);

}  // namespace privbound

#endif  // PRIVBOUND_MECHANISMS_H_
