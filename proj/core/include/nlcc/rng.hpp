// Copyright 2026 The nlcc Authors
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

#ifndef NLCC_RNG_HPP_
#define NLCC_RNG_HPP_

#include <cstdint>

namespace nlcc {

/// Counter-based deterministic generator (splitmix64 finalizer over a strided
/// counter). The u64 stream for a given seed is bit-identical on every
/// platform. Substreams for parties/trials are derived by hashing, so parallel
/// runs never share mutable state.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53 bits of randomness.
  double next_double();

  int next_bit();

  /// Uniform in [0, n), rejection-sampled (no modulo bias). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal via Box-Muller.
  double next_gaussian();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  /// Independent stream keyed by (a, b); used for per-party and per-trial
  /// substreams.
  SeededRng derive(std::uint64_t a, std::uint64_t b = 0) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// splitmix64 finalizer; exposed because a few modules hash ids with it.
std::uint64_t mix64(std::uint64_t z);

}  // namespace nlcc

#endif  // NLCC_RNG_HPP_
