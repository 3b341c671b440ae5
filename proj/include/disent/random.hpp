// Copyright 2026 The disent authors
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

#ifndef DISENT_RANDOM_HPP_
#define DISENT_RANDOM_HPP_

#include <cmath>
#include <cstdint>

// Seeded deterministic randomness. The standard library's distributions are
// implementation-defined, so property suites built on them would not reproduce
// across platforms; this generator is fully specified instead.
//
// Algorithm: xorshift64* (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D),
// seeded through one round of splitmix64 so that small consecutive seeds do
// not yield correlated streams. Gaussians come from the Box-Muller transform.

namespace disent {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull;  // xorshift state must be nonzero
  }

  std::uint64_t next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  // Uniform in [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal deviate via Box-Muller; the paired deviate is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Independent substream for sample #index. Forking instead of sharing one
  // stream keeps parallel sample evaluation schedule-independent.
  Rng fork(std::uint64_t index) const {
    return Rng(splitmix64(state_ ^ (0x9e3779b97f4a7c15ull * (index + 1))));
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace disent

#endif  // DISENT_RANDOM_HPP_
