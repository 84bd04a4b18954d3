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
// Times the OpenMP kernels against their serial references and verifies the
// two produce identical results, witnesses included. Usage:
//
//   privbound_bench [--smoke] [--threads N]
//
// --smoke shrinks the problem sizes for use as a build check. Exits nonzero
// when any parallel result differs from its serial reference.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "privbound/kernels.h"
#include "privbound/mechanisms.h"
#include "privbound/rng.h"
#include "privbound/universe.h"

namespace privbound {
namespace {

struct BenchRow {
  std::string name;
  double serial_ms = 0.0;
  double parallel_ms = 0.0;
  bool match = false;
};

template <typename Fn>
double TimeMs(const Fn& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool SameScan(const PairScan& x, const PairScan& y) {
  return x.value == y.value && x.a == y.a && x.b == y.b &&
         x.outcome == y.outcome;
}

bool SameScan(const GroupScan& x, const GroupScan& y) {
  return x.pass == y.pass && x.a == y.a && x.b == y.b &&
         x.outcome == y.outcome && x.distance == y.distance &&
         x.mult_distance == y.mult_distance;
}

// Random strictly positive rows, normalized, one per dataset.
std::vector<std::vector<double>> SyntheticRows(std::size_t n_datasets,
                                               std::size_t n_outcomes,
                                               std::uint64_t seed) {
  std::vector<std::vector<double>> rows(n_datasets);
  for (std::size_t i = 0; i < n_datasets; ++i) {
    CounterRng rng(seed, i);
    rows[i].resize(n_outcomes);
    double total = 0.0;
    for (double& w : rows[i]) {
      w = rng.NextExponential() + 1e-3;
      total += w;
    }
    for (double& w : rows[i]) w /= total;
  }
  return rows;
}

BenchRow BenchUnitPairScan(int n, std::size_t n_outcomes) {
  const DataUniverse u = DataUniverse::BinaryVectors(n);
  const auto rows = SyntheticRows(u.size(), n_outcomes, 7);
  BenchRow r;
  r.name = "unit-pair log-ratio scan (n=" + std::to_string(n) + ")";
  PairScan serial;
  PairScan parallel;
  r.serial_ms = TimeMs([&] { serial = MaxUnitPairLogRatioSerial(u, rows); });
  r.parallel_ms = TimeMs([&] { parallel = MaxUnitPairLogRatio(u, rows); });
  r.match = SameScan(serial, parallel);
  return r;
}

BenchRow BenchGroupScan(int n, double eps) {
  const DataUniverse u = DataUniverse::BinaryVectors(n);
  std::vector<double> values(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double sum = 0.0;
    for (const std::int32_t rec : u.dataset(i).records) sum += rec;
    values[i] = sum;
  }
  BenchRow r;
  r.name = "group Lipschitz scan (n=" + std::to_string(n) + ")";
  GroupScan serial;
  GroupScan parallel;
  r.serial_ms = TimeMs([&] {
    serial = GroupLipschitzScanValuesSerial(u, values, eps, eps, 1e-12);
  });
  r.parallel_ms = TimeMs([&] {
    parallel = GroupLipschitzScanValues(u, values, eps, eps, 1e-12);
  });
  r.match = SameScan(serial, parallel);
  return r;
}

BenchRow BenchEnvelope(int n, std::size_t n_points) {
  const DataUniverse u = DataUniverse::BinaryVectors(n);
  std::vector<std::size_t> support(u.size());
  for (std::size_t i = 0; i < support.size(); ++i) support[i] = i;

  const LaplaceMechanism m(MakeSumQuery(u), 1.0, 0.1);
  std::vector<double> densities(u.size() * n_points);
  for (std::size_t a = 0; a < u.size(); ++a) {
    for (std::size_t j = 0; j < n_points; ++j) {
      const double t = -10.0 + 30.0 * static_cast<double>(j) /
                                   static_cast<double>(n_points - 1);
      densities[a * n_points + j] = m.Density(u.dataset(a), t);
    }
  }

  BenchRow r;
  r.name = "anchor radii + envelope (n=" + std::to_string(n) +
           ", points=" + std::to_string(n_points) + ")";
  std::vector<double> radii_serial;
  std::vector<double> radii_parallel;
  std::vector<EnvelopePoint> env_serial;
  std::vector<EnvelopePoint> env_parallel;
  r.serial_ms = TimeMs([&] {
    radii_serial = AnchorRadiiSerial(u, support);
    env_serial = EnvelopeFromDensitiesSerial(densities, u.size(), n_points,
                                             radii_serial, 0.1);
  });
  r.parallel_ms = TimeMs([&] {
    radii_parallel = AnchorRadii(u, support);
    env_parallel =
        EnvelopeFromDensities(densities, u.size(), n_points, radii_parallel, 0.1);
  });
  r.match = radii_serial == radii_parallel &&
            env_serial.size() == env_parallel.size();
  if (r.match) {
    for (std::size_t j = 0; j < env_serial.size(); ++j) {
      if (env_serial[j].lower != env_parallel[j].lower ||
          env_serial[j].upper != env_parallel[j].upper) {
        r.match = false;
        break;
      }
    }
  }
  return r;
}

BenchRow BenchMonteCarlo(int n, std::uint64_t draws) {
  const RandomizedResponse m(1.0, n);
  const Dataset x = MakeDataset(DatasetMode::kVector,
                                std::vector<std::int32_t>(n, 1));
  std::vector<char> hit(m.output_labels()->size(), 0);
  for (std::size_t i = 0; i < hit.size(); i += 2) hit[i] = 1;

  BenchRow r;
  r.name = "Monte Carlo hit count (n=" + std::to_string(n) +
           ", draws=" + std::to_string(draws) + ")";
  std::uint64_t serial = 0;
  std::uint64_t parallel = 0;
  r.serial_ms = TimeMs([&] {
    serial = CountDiscreteHitsSerial(m, x, hit, draws, 11);
  });
  r.parallel_ms = TimeMs([&] {
    parallel = CountDiscreteHits(m, x, hit, draws, 11);
  });
  r.match = serial == parallel;
  return r;
}

int Run(bool smoke) {
  std::printf("threads: %d\n", MaxThreadCount());
  std::vector<BenchRow> rows;
  if (smoke) {
    rows.push_back(BenchUnitPairScan(6, 32));
    rows.push_back(BenchGroupScan(6, 0.5));
    rows.push_back(BenchEnvelope(6, 61));
    rows.push_back(BenchMonteCarlo(4, 20000));
  } else {
    rows.push_back(BenchUnitPairScan(12, 64));
    rows.push_back(BenchGroupScan(10, 0.5));
    rows.push_back(BenchEnvelope(10, 301));
    rows.push_back(BenchMonteCarlo(8, 400000));
  }

  std::printf("%-48s %12s %12s %9s %s\n", "kernel", "serial ms", "parallel ms",
              "speedup", "match");
  bool all_match = true;
  for (const BenchRow& r : rows) {
    const double speedup =
        r.parallel_ms > 0.0 ? r.serial_ms / r.parallel_ms : 0.0;
    std::printf("%-48s %12.3f %12.3f %8.2fx %s\n", r.name.c_str(),
                r.serial_ms, r.parallel_ms, speedup,
                r.match ? "yes" : "NO");
    all_match = all_match && r.match;
  }
  if (!all_match) {
    std::printf("FAIL: a parallel kernel diverged from its serial "
                "reference\n");
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace privbound

int main(int argc, char** argv) {
  bool smoke = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      privbound::SetThreadCount(std::atoi(argv[i + 1]));
      ++i;
    }
  }
  return privbound::Run(smoke);
}
