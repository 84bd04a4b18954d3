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
//
// Command-line frontend. Subcommands:
//
//   verify-dp         check a mechanism against a privacy budget
//   marginal-bounds   envelope for the privatised-data density over a grid
//   rr-bounds         closed-form randomized-response envelope per length
//   posterior-bounds  prior-factor posterior envelope plus quadrature
//                     posteriors for seeded predictive draws
//   power-bounds      hypothesis-test power envelopes, optional exact table
//   pufferfish-check  check an instantiation, optionally with sampled
//                     product attackers
//
// Exit codes: 0 pass/success, 1 verified-false, 2 usage or config error.
// Identical config and seed produce byte-identical output documents. The
// document goes to --out when given, else to $PRIVBOUND_OUT_DIR/<command>.<fmt>
// when that variable is set, else to stdout. Human-readable one-line
// summaries go to stderr.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "privbound/errors.h"
#include "privbound/inference.h"
#include "privbound/io.h"
#include "privbound/kernels.h"
#include "privbound/measures.h"
#include "privbound/mechanisms.h"
#include "privbound/numeric.h"
#include "privbound/oracles.h"
#include "privbound/pufferfish.h"
#include "privbound/universe.h"

namespace privbound {
namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

struct RunConfig {
  std::string command;
  Json config;  // null when no --config was given
  std::optional<double> epsilon;
  std::uint64_t seed = kDefaultSeed;
  std::string defaults;
  std::string out;
  std::string format = "csv";
  int threads = 0;
};

const Json& Field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InputError(std::string("config: missing field \"") + key + "\"");
  }
  return *it;
}

double NumField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number()) {
    throw InputError(std::string("config: field \"") + key +
                     "\" must be a number");
  }
  return v.get<double>();
}

double NumFieldOr(const Json& j, const char* key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return NumField(j, key);
}

// Config fields holding sub-documents may inline the JSON or name a file.
Json SubDoc(const Json& j) {
  if (j.is_string()) return LoadJsonFile(j.get<std::string>());
  return j;
}

std::vector<double> NumListFieldOr(const Json& j, const char* key,
                                   std::vector<double> fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = Field(j, key);
  if (!v.is_array()) {
    throw InputError(std::string("config: field \"") + key +
                     "\" must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& e : v) {
    if (!e.is_number()) {
      throw InputError(std::string("config: field \"") + key +
                       "\" must be an array of numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> LinearGrid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw InputError("config: grid step must be positive");
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    grid[i] = lo + static_cast<double>(i) * step;
  }
  return grid;
}

EventSet FullSupport(const DataUniverse& u) {
  EventSet s(u.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

EventSet SupportOf(const FiniteMeasure& law) {
  EventSet s;
  for (std::size_t i = 0; i < law.size(); ++i) {
    if (!IsZeroWeight(law.weight(i))) s.push_back(i);
  }
  return s;
}

// Infinities are not representable as JSON numbers; fall back to a string.
Json FiniteOr(double v) {
  if (std::isfinite(v)) return Json(v);
  return Json(FormatSig12(v));
}

std::string OutPathFor(const RunConfig& rc) {
  if (!rc.out.empty()) return rc.out;
  const char* dir = std::getenv("PRIVBOUND_OUT_DIR");
  if (dir != nullptr && *dir != '\0') {
    return std::string(dir) + "/" + rc.command + "." + rc.format;
  }
  return {};
}

void Emit(const RunConfig& rc, const std::string& content) {
  const std::string path = OutPathFor(rc);
  if (path.empty()) {
    std::cout << content;
  } else {
    WriteTextFile(path, content);
    std::cerr << rc.command << ": wrote " << path << "\n";
  }
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string TableCsv(const Table& t) {
  std::string out = CsvLine(t.columns);
  for (const std::vector<double>& row : t.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const double v : row) cells.push_back(FormatSig12(v));
    out += CsvLine(cells);
  }
  return out;
}

std::string TableJson(const RunConfig& rc, const Table& t) {
  Json j;
  j["schema"] = 1;
  j["command"] = rc.command;
  j["columns"] = t.columns;
  Json rows = Json::array();
  for (const std::vector<double>& row : t.rows) {
    Json r = Json::array();
    for (const double v : row) r.push_back(FiniteOr(v));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void EmitTable(const RunConfig& rc, const Table& t) {
  Emit(rc, rc.format == "json" ? TableJson(rc, t) : TableCsv(t));
}

void RequireConfig(const RunConfig& rc) {
  if (rc.config.is_null()) {
    throw InputError(rc.command + " requires --config");
  }
  CheckSchema(rc.config);
}

void RejectForeignDefaults(const RunConfig& rc,
                           const std::vector<std::string>& accepted) {
  if (rc.defaults.empty()) return;
  for (const std::string& name : accepted) {
    if (rc.defaults == name) return;
  }
  throw InputError("--defaults " + rc.defaults + " is not a preset of " +
                   rc.command);
}

double EpsilonFor(const RunConfig& rc, double fallback) {
  if (rc.epsilon) return *rc.epsilon;
  return NumFieldOr(rc.config, "epsilon", fallback);
}

// ---------------------------------------------------------------------------
// verify-dp

int CmdVerifyDp(const RunConfig& rc) {
  RejectForeignDefaults(rc, {});
  RequireConfig(rc);
  const DataUniverse u = UniverseFromJson(SubDoc(Field(rc.config, "universe")));
  const std::unique_ptr<Mechanism> m =
      MechanismFromJson(SubDoc(Field(rc.config, "mechanism")), u);
  const double eps =
      rc.epsilon ? *rc.epsilon : NumField(rc.config, "epsilon");

  const DpVerdict v = VerifyEpsDp(*m, u, eps);

  if (rc.format == "json") {
    Json j;
    j["schema"] = 1;
    j["command"] = rc.command;
    j["pass"] = v.pass;
    j["epsilon"] = eps;
    j["min_epsilon"] = FiniteOr(v.min_epsilon);
    if (v.witness) {
      j["witness"] = {{"a", v.witness->a},
                      {"b", v.witness->b},
                      {"a_label", v.witness->a_label},
                      {"b_label", v.witness->b_label},
                      {"outcome", v.witness->outcome},
                      {"log_ratio", FiniteOr(v.witness->log_ratio)}};
    }
    Emit(rc, j.dump(2) + "\n");
  } else {
    std::string out = CsvLine({"pass", "epsilon", "min_epsilon", "witness_a",
                               "witness_b", "witness_outcome", "log_ratio"});
    std::vector<std::string> row{v.pass ? "1" : "0", FormatSig12(eps),
                                 FormatSig12(v.min_epsilon), "", "", "", ""};
    if (v.witness) {
      row[3] = v.witness->a_label;
      row[4] = v.witness->b_label;
      row[5] = v.witness->outcome;
      row[6] = FormatSig12(v.witness->log_ratio);
    }
    out += CsvLine(row);
    Emit(rc, out);
  }

  std::cerr << "verify-dp: " << (v.pass ? "PASS" : "FAIL")
            << " (min_epsilon = " << FormatSig12(v.min_epsilon) << ")\n";
  if (v.witness) {
    std::cerr << "verify-dp: witness " << v.witness->a_label << " vs "
              << v.witness->b_label << " at outcome " << v.witness->outcome
              << ", log ratio " << FormatSig12(v.witness->log_ratio) << "\n";
  }
  return v.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// marginal-bounds

int CmdMarginalBounds(const RunConfig& rc) {
  RejectForeignDefaults(rc, {"fig2a", "fig2b"});

  std::optional<DataUniverse> u;
  std::unique_ptr<Mechanism> m;
  double eps = 0.0;
  std::vector<double> grid;
  EventSet support;

  if (rc.config.is_null()) {
    // Preset: sum over ten binary records with Laplace noise of scale 1/eps.
    eps = rc.defaults == "fig2b" ? 0.25 : 0.1;
    if (rc.epsilon) eps = *rc.epsilon;
    u = DataUniverse::BinaryVectors(10);
    m = std::make_unique<LaplaceMechanism>(MakeSumQuery(*u), 1.0, eps);
    grid = LinearGrid(-10.0, 20.0, 0.1);
    support = FullSupport(*u);
  } else {
    CheckSchema(rc.config);
    u = UniverseFromJson(SubDoc(Field(rc.config, "universe")));
    eps = rc.epsilon ? *rc.epsilon : NumField(rc.config, "epsilon");
    m = MechanismFromJson(SubDoc(Field(rc.config, "mechanism")), *u);
    if (rc.config.contains("grid")) {
      const Json& g = Field(rc.config, "grid");
      grid = LinearGrid(NumField(g, "lo"), NumField(g, "hi"),
                        NumField(g, "step"));
    } else {
      grid = LinearGrid(-10.0, 20.0, 0.1);
    }
    support = rc.config.contains("support")
                  ? EventFromJson(rc.config["support"], *u)
                  : FullSupport(*u);
  }

  // Envelope rows are meaningless for a mechanism that busts the budget, so
  // check first; a failed check is a verified-false outcome.
  const DpVerdict v = VerifyEpsDp(*m, *u, eps);
  if (!v.pass) {
    std::cerr << "marginal-bounds: the mechanism is not " << FormatSig12(eps)
              << "-DP (min_epsilon = " << FormatSig12(v.min_epsilon) << ")\n";
    return 1;
  }

  Table t;
  if (m->discrete()) {
    const auto& dm = dynamic_cast<const DiscreteMechanism&>(*m);
    const Envelope env = MarginalEnvelopeOutcomes(dm, *u, support, eps);
    t.columns = {"t", "lower", "upper"};
    for (std::size_t i = 0; i < env.lower.size(); ++i) {
      t.rows.push_back({static_cast<double>(i), env.lower[i], env.upper[i]});
    }
  } else {
    const auto& rm = dynamic_cast<const RealOutputMechanism&>(*m);
    const Envelope env = MarginalEnvelopeGrid(rm, *u, support, eps, grid);
    t.columns = {"t", "lower", "upper"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      t.rows.push_back({grid[i], env.lower[i], env.upper[i]});
    }
  }
  EmitTable(rc, t);
  return 0;
}

// ---------------------------------------------------------------------------
// rr-bounds

int CmdRrBounds(const RunConfig& rc) {
  RejectForeignDefaults(rc, {"fig3"});
  if (!rc.config.is_null()) CheckSchema(rc.config);
  const double eps = EpsilonFor(rc, 1.0);
  const int n_max =
      static_cast<int>(NumFieldOr(rc.config, "n_max", 10.0));
  if (n_max < 0) throw InputError("config: n_max must be nonnegative");

  Table t;
  t.columns = {"abs_t", "lower", "upper"};
  for (int n = 0; n <= n_max; ++n) {
    const BoundPair b = RrMarginalBounds(eps, n);
    t.rows.push_back({static_cast<double>(n), b.lower, b.upper});
  }
  EmitTable(rc, t);
  return 0;
}

// ---------------------------------------------------------------------------
// posterior-bounds

int CmdPosteriorBounds(const RunConfig& rc) {
  RejectForeignDefaults(rc, {"fig4"});
  if (!rc.config.is_null()) CheckSchema(rc.config);
  const double shape = NumFieldOr(rc.config, "shape", 3.0);
  const double rate = NumFieldOr(rc.config, "rate", 1.0);
  const double eps = EpsilonFor(rc, 1.0);
  const int a0 = static_cast<int>(NumFieldOr(rc.config, "a0", 0.0));
  const int a1 = static_cast<int>(NumFieldOr(rc.config, "a1", 6.0));
  const int draws = static_cast<int>(NumFieldOr(rc.config, "draws", 10.0));
  if (draws < 0) throw InputError("config: draws must be nonnegative");
  double grid_lo = 0.0;
  double grid_hi = 12.0;
  double grid_step = 0.01;
  if (rc.config.is_object() && rc.config.contains("grid")) {
    const Json& g = Field(rc.config, "grid");
    grid_lo = NumField(g, "lo");
    grid_hi = NumField(g, "hi");
    grid_step = NumField(g, "step");
  }
  const QuadratureGrid grid =
      QuadratureGrid::UniformOpenLow(grid_lo, grid_hi, grid_step);

  // Any two single-record count datasets are one record change apart, so the
  // posterior factor uses distance 1.
  const double d_double_star = 1.0;

  std::vector<double> ts(static_cast<std::size_t>(draws));
  std::vector<std::vector<double>> posteriors(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ts[k] = PriorPredictiveSample(shape, rate, eps, a0, a1, rc.seed, k);
    posteriors[k] =
        GammaPoissonLaplacePosterior(shape, rate, eps, a0, a1, ts[k], grid);
  }

  Table t;
  t.columns = {"theta", "prior", "lower", "upper"};
  for (std::size_t k = 0; k < ts.size(); ++k) {
    t.columns.push_back("posterior_" + std::to_string(k + 1));
  }
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double theta = grid.points[i];
    const double prior = GammaPdf(theta, shape, rate);
    const BoundPair b = PosteriorBounds(prior, eps, d_double_star);
    std::vector<double> row{theta, prior, b.lower, b.upper};
    for (const std::vector<double>& post : posteriors) row.push_back(post[i]);
    t.rows.push_back(std::move(row));
  }
  EmitTable(rc, t);
  return 0;
}

// ---------------------------------------------------------------------------
// power-bounds

int CmdPowerBounds(const RunConfig& rc) {
  RejectForeignDefaults(rc, {});
  const Json& cfg = rc.config;
  if (!cfg.is_null()) CheckSchema(cfg);

  std::vector<double> alphas =
      NumListFieldOr(cfg, "alphas", {0.01, 0.05, 0.1, 0.2});

  const bool exact = cfg.is_object() && cfg.contains("mechanism");
  Table t;
  if (!exact) {
    std::vector<double> epsilons =
        NumListFieldOr(cfg, "epsilons", {0.0, 0.2, 0.5, 1.0, 2.0});
    if (rc.epsilon) epsilons = {*rc.epsilon};
    const std::vector<double> distances =
        NumListFieldOr(cfg, "distances", {1.0, 2.0, 5.0});
    t.columns = {"alpha", "epsilon", "d", "lower", "upper"};
    for (const double alpha : alphas) {
      for (const double eps : epsilons) {
        for (const double d : distances) {
          const BoundPair b = PowerBoundsTwoSided(alpha, eps, d);
          t.rows.push_back({alpha, eps, d, b.lower, b.upper});
        }
      }
    }
    EmitTable(rc, t);
    return 0;
  }

  // Exact table: most-powerful-test power between two hypotheses of a finite
  // model, next to the envelope at the support cross-distance.
  const DataUniverse u = UniverseFromJson(SubDoc(Field(cfg, "universe")));
  const std::unique_ptr<Mechanism> m =
      MechanismFromJson(SubDoc(Field(cfg, "mechanism")), u);
  const auto* dm = dynamic_cast<const DiscreteMechanism*>(m.get());
  if (dm == nullptr) {
    throw InputError("config: the exact power table needs a mechanism with "
                     "finitely many outputs");
  }
  const DataModel model = ModelFromJson(SubDoc(Field(cfg, "model")), u);
  const auto ThetaIndex = [&model, &cfg](const char* key) {
    const Json& v = Field(cfg, key);
    if (v.is_string()) return model.IndexOfTheta(v.get<std::string>());
    if (v.is_number_unsigned()) {
      const auto k = v.get<std::size_t>();
      if (k >= model.n_thetas()) {
        throw InputError(std::string("config: \"") + key +
                         "\" is outside the hypothesis list");
      }
      return k;
    }
    throw InputError(std::string("config: \"") + key +
                     "\" must be a label or an index");
  };
  const std::size_t theta0 = ThetaIndex("theta0");
  const std::size_t theta1 = ThetaIndex("theta1");
  const double eps = rc.epsilon ? *rc.epsilon : NumField(cfg, "epsilon");
  const double d =
      CrossDistance(u, SupportOf(model.law(theta0)), SupportOf(model.law(theta1)));

  t.columns = {"alpha", "epsilon", "d", "lower", "upper", "exact"};
  for (const double alpha : alphas) {
    const BoundPair b = PowerBoundsTwoSided(alpha, eps, d);
    const TestResult r = ExactNpPower(*dm, model, theta0, theta1, alpha);
    t.rows.push_back({alpha, eps, d, b.lower, b.upper, r.power});
  }
  EmitTable(rc, t);
  return 0;
}

// ---------------------------------------------------------------------------
// pufferfish-check

Json VerdictJson(const PufferfishVerdict& v) {
  Json j;
  j["pass"] = v.pass;
  j["pairs_checked"] = v.pairs_checked;
  j["pairs_skipped"] = v.pairs_skipped;
  if (v.witness) {
    j["witness"] = {{"attacker", v.witness->attacker},
                    {"pair", v.witness->pair},
                    {"outcome", v.witness->outcome},
                    {"outcome_label", v.witness->outcome_label},
                    {"log_ratio", FiniteOr(v.witness->log_ratio)}};
  }
  return j;
}

std::string VerdictCsvRow(const std::string& battery,
                          const PufferfishVerdict& v, double eps) {
  std::vector<std::string> row{battery,
                               v.pass ? "1" : "0",
                               FormatSig12(eps),
                               std::to_string(v.pairs_checked),
                               std::to_string(v.pairs_skipped),
                               "",
                               "",
                               "",
                               ""};
  if (v.witness) {
    row[5] = std::to_string(v.witness->attacker);
    row[6] = std::to_string(v.witness->pair);
    row[7] = v.witness->outcome_label;
    row[8] = FormatSig12(v.witness->log_ratio);
  }
  return CsvLine(row);
}

int CmdPufferfishCheck(const RunConfig& rc) {
  RejectForeignDefaults(rc, {});
  RequireConfig(rc);
  const DataUniverse u = UniverseFromJson(SubDoc(Field(rc.config, "universe")));
  const std::unique_ptr<Mechanism> m =
      MechanismFromJson(SubDoc(Field(rc.config, "mechanism")), u);
  const auto* dm = dynamic_cast<const DiscreteMechanism*>(m.get());
  if (dm == nullptr) {
    throw InputError("config: pufferfish-check needs a mechanism with "
                     "finitely many outputs");
  }
  const double eps = EpsilonFor(rc, 1.0);
  const int samples =
      static_cast<int>(NumFieldOr(rc.config, "attacker_samples", 0.0));

  // With an explicit instantiation, its attacker list is the configured
  // battery and sampling is an optional extra. Without one, the unit-record
  // conjecture pairs are checked against sampled product attackers only,
  // since that attacker class has no finite list.
  std::optional<PufferfishVerdict> configured;
  std::optional<PufferfishVerdict> sampled;
  double used_eps = eps;
  if (rc.config.contains("instantiation")) {
    PufferfishInstantiation in =
        InstantiationFromJson(SubDoc(Field(rc.config, "instantiation")), u);
    if (rc.epsilon) in.epsilon = *rc.epsilon;
    used_eps = in.epsilon;
    configured = PufferfishSatisfied(in, *dm);
    if (samples > 0) {
      in.attackers = SampleProductAttackers(
          u, static_cast<std::size_t>(samples), rc.seed);
      sampled = PufferfishSatisfied(in, *dm);
    }
  } else {
    PufferfishInstantiation in = DpCorrespondenceInstantiation(u, eps);
    in.attackers = SampleProductAttackers(
        u, samples > 0 ? static_cast<std::size_t>(samples) : 200, rc.seed);
    sampled = PufferfishSatisfied(in, *dm);
  }

  const bool pass =
      (!configured || configured->pass) && (!sampled || sampled->pass);

  if (rc.format == "json") {
    Json j;
    j["schema"] = 1;
    j["command"] = rc.command;
    j["pass"] = pass;
    j["epsilon"] = used_eps;
    if (configured) j["configured"] = VerdictJson(*configured);
    if (sampled) j["sampled"] = VerdictJson(*sampled);
    Emit(rc, j.dump(2) + "\n");
  } else {
    std::string out =
        CsvLine({"battery", "pass", "epsilon", "pairs_checked",
                 "pairs_skipped", "witness_attacker", "witness_pair",
                 "witness_outcome", "log_ratio"});
    if (configured) out += VerdictCsvRow("configured", *configured, used_eps);
    if (sampled) out += VerdictCsvRow("sampled", *sampled, used_eps);
    Emit(rc, out);
  }

  const PufferfishVerdict& lead = configured ? *configured : *sampled;
  std::cerr << "pufferfish-check: " << (pass ? "PASS" : "FAIL") << " ("
            << lead.pairs_checked << " pairs checked, " << lead.pairs_skipped
            << " skipped)\n";
  const PufferfishVerdict* failed =
      (configured && !configured->pass)
          ? &*configured
          : (sampled && !sampled->pass ? &*sampled : nullptr);
  if (failed != nullptr && failed->witness) {
    std::cerr << "pufferfish-check: witness attacker " << failed->witness->attacker
              << ", pair " << failed->witness->pair << ", outcome "
              << failed->witness->outcome_label << ", log ratio "
              << FormatSig12(failed->witness->log_ratio) << "\n";
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

int RunMain(int argc, char** argv) {
  CLI::App app{"Universal bounds on inference from privatised data"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string config_path;

  const auto AddCommon = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--defaults", rc.defaults,
                    "named preset: fig2a, fig2b, fig3, fig4")
        ->check(CLI::IsMember({"fig2a", "fig2b", "fig3", "fig4"}));
    cmd->add_option("--epsilon", rc.epsilon, "privacy budget override");
    cmd->add_option("--seed", rc.seed, "RNG seed");
    cmd->add_option("--out", rc.out, "output file path");
    cmd->add_option("--format", rc.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", rc.threads, "worker thread hint");
  };

  AddCommon(app.add_subcommand("verify-dp",
                               "Check a mechanism against a privacy budget"));
  AddCommon(app.add_subcommand(
      "marginal-bounds", "Privatised-data density envelope over a grid"));
  AddCommon(app.add_subcommand(
      "rr-bounds", "Randomized-response envelope per tuple length"));
  AddCommon(app.add_subcommand(
      "posterior-bounds",
      "Posterior envelope plus quadrature posteriors for seeded draws"));
  AddCommon(app.add_subcommand("power-bounds",
                               "Hypothesis-test power envelopes"));
  AddCommon(app.add_subcommand("pufferfish-check",
                               "Check a pufferfish instantiation"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) rc.config = LoadJsonFile(config_path);
    if (rc.threads > 0) SetThreadCount(rc.threads);
    rc.command = app.get_subcommands().front()->get_name();

    if (rc.command == "verify-dp") return CmdVerifyDp(rc);
    if (rc.command == "marginal-bounds") return CmdMarginalBounds(rc);
    if (rc.command == "rr-bounds") return CmdRrBounds(rc);
    if (rc.command == "posterior-bounds") return CmdPosteriorBounds(rc);
    if (rc.command == "power-bounds") return CmdPowerBounds(rc);
    if (rc.command == "pufferfish-check") return CmdPufferfishCheck(rc);
    throw InputError("unknown command " + rc.command);
  } catch (const Error& e) {
    std::cerr << "privbound: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "privbound: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace
}  // namespace privbound

int main(int argc, char** argv) { return privbound::RunMain(argc, argv); }
