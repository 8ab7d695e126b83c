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

#include "nlcc/bits.hpp"

#include <stdexcept>

namespace nlcc {

Bits bits_from_string(const std::string& s) {
  Bits out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bits_from_string: expected only '0'/'1', got '" +
                                  std::string(1, c) + "'");
    }
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string bits_to_string(const Bits& b) {
  std::string s;
  s.reserve(b.size());
  for (auto v : b) s.push_back(v ? '1' : '0');
  return s;
}

Bits bits_from_index(std::uint64_t value, int width) {
  Bits out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) {
    out[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
  }
  return out;
}

std::uint64_t bits_to_index(const Bits& b) {
  std::uint64_t v = 0;
  for (auto bit : b) v = (v << 1) | bit;
  return v;
}

int hamming_distance(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

int inner_product_mod2(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product_mod2: length mismatch");
  int acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= (a[i] & b[i]);
  return acc;
}

Bits random_bits(int n, SeededRng& rng) {
  Bits out(static_cast<std::size_t>(n));
  for (auto& v : out) v = static_cast<std::uint8_t>(rng.next_bit());
  return out;
}

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::uint64_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("log2_exact: not a power of two");
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

}  // namespace nlcc
