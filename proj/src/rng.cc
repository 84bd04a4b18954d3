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

#include "privbound/rng.h"

#include <cmath>

#include "privbound/errors.h"

namespace privbound {

std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t index)
    : base_(Mix64(Mix64(Mix64(seed) ^ stream) ^ index)) {}

std::uint64_t CounterRng::NextU64() { return Mix64(base_ ^ counter_++); }

double CounterRng::NextUniform() {
  // 53 mantissa bits, centered on half-steps: values in (0, 1) exclusive.
  const std::uint64_t r = NextU64() >> 11;
  return (static_cast<double>(r) + 0.5) * 0x1.0p-53;
}

double CounterRng::NextExponential() { return -std::log(NextUniform()); }

double CounterRng::NextNormal() {
  const double u1 = NextUniform();
  const double u2 = NextUniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

double CounterRng::NextLaplace(double location, double scale) {
  if (!(scale > 0.0)) throw InputError("laplace sample: scale must be > 0");
  const double u = NextUniform() - 0.5;
  const double mag = std::log(1.0 - 2.0 * std::abs(u));
  return location + (u < 0.0 ? scale * mag : -scale * mag);
}

double CounterRng::NextGamma(double shape) {
  if (!(shape > 0.0)) throw InputError("gamma sample: shape must be > 0");
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a + 1) * U^{1/a}.
    const double u = NextUniform();
    return NextGamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = NextNormal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = NextUniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

long long CounterRng::NextPoisson(double mean) {
  if (!(mean >= 0.0)) throw InputError("poisson sample: mean must be >= 0");
  if (mean == 0.0) return 0;
  // Split large means so the inversion product never underflows.
  if (mean > 30.0) {
    const long long a = NextPoisson(mean / 2.0);
    const long long b = NextPoisson(mean - mean / 2.0);
    return a + b;
  }
  const double limit = std::exp(-mean);
  long long k = 0;
  double prod = NextUniform();
  while (prod > limit) {
    ++k;
    prod *= NextUniform();
  }
  return k;
}

std::uint64_t DatasetStreamKey(const Dataset& x) {
  std::uint64_t h = Mix64(x.mode == DatasetMode::kVector ? 0x76ull : 0x6Dull);
  h = Mix64(h ^ static_cast<std::uint64_t>(x.records.size()));
  for (const auto r : x.records) {
    h = Mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(r)));
  }
  return h;
}

}  // namespace privbound
