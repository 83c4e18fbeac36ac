/*
 * Copyright (c) 2026, The scd-axes Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace scdaxes {

/// SplitMix64 step. Used to expand seeds and to derive sub-seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// Derives an independent stream seed from a master seed and a key (e.g. a
/// lemma). Depends only on its arguments, never on call order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);

/// xoshiro256** 1.0 (Blackman & Vigna), seeded through SplitMix64.
///
/// All draws are defined bit-for-bit in terms of next(), so fixtures built
/// from this generator are identical on every platform. Nothing here uses the
/// standard library distributions, whose output is implementation-defined.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_open0();
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via the Box-Muller transform. Both variates of each
  /// transform are used, the second one is cached.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  /// Exp(1).
  double exponential();
  /// Gamma(shape, 1) for integer shape >= 1, as a sum of exponentials.
  double gamma_int(int shape);

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace scdaxes
