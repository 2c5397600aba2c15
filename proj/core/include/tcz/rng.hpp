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

#pragma once

#include <cstdint>
#include <vector>

namespace tcz {

std::uint64_t splitmix64(std::uint64_t x);

/// Stateless hash of (seed, stream, index); the basis of every random draw.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Counter-based generator: the k-th output depends only on (seed, stream, k).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next() { return counter_hash(seed_, stream_, counter_++); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);
  /// Binomial(shots, p) by direct counting.
  int binomial(int shots, double p);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

}  // namespace tcz
