// Copyright 2026 The MGCT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mgct::numkit {

std::uint64_t splitmix64(std::uint64_t x);

// Stateless generator: the value at `counter` depends only on (key, counter).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  static CounterRng keyed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

  std::uint64_t bits(std::uint64_t counter) const;
  // Uniform in [0, 1).
  double uniform(std::uint64_t counter) const;

 private:
  std::uint64_t key_;
};

/// Sequential generator with distribution code defined here rather than by
/// the standard library, so streams are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);
  double normal();
  double exponential(double rate);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mgct::numkit
