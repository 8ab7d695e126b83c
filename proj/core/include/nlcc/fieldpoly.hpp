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

#ifndef NLCC_FIELDPOLY_HPP_
#define NLCC_FIELDPOLY_HPP_

#include <cstdint>

#include "nlcc/bits.hpp"

namespace nlcc {

bool is_prime(std::uint64_t n);
std::uint64_t smallest_prime_at_least(std::uint64_t n);

/// Field modulus used by the polynomial equality fingerprints: the smallest
/// prime >= 3n.
std::uint64_t fingerprint_modulus(int n);

/// p_x(t) = sum_i x_i t^{i-1} mod p, with x's first bit as the constant
/// coefficient.
std::uint64_t poly_eval_bits(const Bits& x, std::uint64_t t, std::uint64_t p);

/// |{a in F_p : p_x(a) = p_y(a)}|.
int poly_agreement_count(const Bits& x, const Bits& y, std::uint64_t p);

}  // namespace nlcc

#endif  // NLCC_FIELDPOLY_HPP_
