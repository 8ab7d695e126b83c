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

#ifndef NLCC_BITS_HPP_
#define NLCC_BITS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nlcc/rng.hpp"

namespace nlcc {

/// Input strings are plain bit vectors; element i is the paper-style bit
/// x_{i+1} (values 0 or 1).
using Bits = std::vector<std::uint8_t>;

Bits bits_from_string(const std::string& s);
std::string bits_to_string(const Bits& b);
Bits bits_from_index(std::uint64_t value, int width);  // MSB first
std::uint64_t bits_to_index(const Bits& b);
int hamming_distance(const Bits& a, const Bits& b);
int inner_product_mod2(const Bits& a, const Bits& b);
Bits random_bits(int n, SeededRng& rng);
bool is_power_of_two(std::uint64_t n);
int log2_exact(std::uint64_t n);  // n must be a power of two

}  // namespace nlcc

#endif  // NLCC_BITS_HPP_
