// Copyright 2026 The tcz Authors
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

#include "tcz/rng.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

#include "tcz/errors.hpp"

namespace tcz {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("CounterRng::below(0)");
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

int CounterRng::binomial(int shots, double p) {
  int hits = 0;
  for (int i = 0; i < shots; ++i) {
    if (uniform() < p) ++hits;
  }
  return hits;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw RangeError("normal quantile needs p in (0, 1)");
  return std::sqrt(2.0) * boost::math::erf_inv(2.0 * p - 1.0);
}

}  // namespace tcz
