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

#ifndef PRIVBOUND_RNG_H_
#define PRIVBOUND_RNG_H_

#include <cstdint>

#include "privbound/universe.h"

namespace privbound {

// Counter-based generator: every output is a stateless hash of
// (seed, stream, index, counter) through the splitmix64 finalizer, so draw
// `index` of stream `stream` produces identical bits no matter how the draws
// are sharded across threads or processes. Rejection samplers are free to
// consume a variable number of uniforms; they only advance the counter within
// their own (stream, index) cell.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0,
                      std::uint64_t index = 0);

  std::uint64_t NextU64();
  // Uniform on the open interval (0, 1); never returns an endpoint.
  double NextUniform();
  double NextExponential();  // mean 1
  double NextNormal();       // standard
  double NextLaplace(double location, double scale);
  double NextGamma(double shape);  // rate 1
  long long NextPoisson(double mean);

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Stream key for per-dataset sampling streams.
std::uint64_t DatasetStreamKey(const Dataset& x);

// Stable 64-bit mix used for key derivation.
std::uint64_t Mix64(std::uint64_t z);

}  // namespace privbound

#endif  // PRIVBOUND_RNG_H_
