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

#include "nlcc/fieldpoly.hpp"

#include <stdexcept>

namespace nlcc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t smallest_prime_at_least(std::uint64_t n) {
  std::uint64_t p = n < 2 ? 2 : n;
  while (!is_prime(p)) ++p;
  return p;
}

std::uint64_t fingerprint_modulus(int n) {
  if (n < 1) throw std::invalid_argument("fingerprint_modulus: n must be >= 1");
  return smallest_prime_at_least(3 * static_cast<std::uint64_t>(n));
}

std::uint64_t poly_eval_bits(const Bits& x, std::uint64_t t, std::uint64_t p) {
  // Horner from the top coefficient x_n down to the constant x_1.
  std::uint64_t acc = 0;
  for (std::size_t i = x.size(); i-- > 0;) {
    acc = (acc * t + x[i]) % p;
  }
  return acc;
}

int poly_agreement_count(const Bits& x, const Bits& y, std::uint64_t p) {
  if (x.size() != y.size()) throw std::invalid_argument("poly_agreement_count: length mismatch");
  int count = 0;
  for (std::uint64_t a = 0; a < p; ++a) {
    if (poly_eval_bits(x, a, p) == poly_eval_bits(y, a, p)) ++count;
  }
  return count;
}

}  // namespace nlcc
