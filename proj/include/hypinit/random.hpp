// Copyright 2026 The hypinit Authors.
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
#include <initializer_list>
#include <random>

namespace hypinit {

/// 64-bit PRNG with deterministic stream derivation.
///
/// A generator is identified by its seed. `derive(labels...)` builds a child
/// whose seed is a hash of (this seed, labels); it does not depend on how many
/// numbers the parent has drawn, so rollout j of iteration i can be given
/// `master.derive({i, j})` and reproduce the same draws regardless of the
/// order in which rollouts execute.
class Prng {
public:
  explicit Prng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  Prng derive(std::initializer_list<std::uint64_t> labels) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (both outputs of a pair are used).
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; returns log of the draw so that
  /// tiny shapes do not underflow.
  double log_gamma_draw(double shape);

  /// Beta(a, b) from two gamma draws.
  double beta(double a, double b);

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// splitmix64 finalizer; used to hash stream labels into seeds.
std::uint64_t mix64(std::uint64_t x);

} // namespace hypinit
