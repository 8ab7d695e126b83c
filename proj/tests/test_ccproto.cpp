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

#include "nlcc/ccproto.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "nlcc/fieldpoly.hpp"

using namespace nlcc;
using namespace nlcc::ccproto;

namespace {

// Test-local polynomial evaluation, independent of fieldpoly.
std::uint64_t poly_oracle(const Bits& x, std::uint64_t a, std::uint64_t p) {
  std::uint64_t value = 0;
  std::uint64_t power = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    value = (value + x[i] * power) % p;
    power = (power * a) % p;
  }
  return value;
}

void check_transcript_matches_ledger(const ProtocolResult& r) {
  EXPECT_EQ(r.transcript.total_bits(), r.ledger.classical_bits);
  EXPECT_EQ(r.transcript.total_qubits(), r.ledger.qubits);
}

}  // namespace

// ---- equality ----

TEST(EqDeterministic, KnownPairsAndCost) {
  const auto yes = eq_deterministic(bits_from_string("0101"), bits_from_string("0101"));
  EXPECT_TRUE(yes.output.at("equal").get<bool>());
  EXPECT_EQ(yes.ledger.classical_bits, 5u);
  EXPECT_EQ(yes.ledger.rounds, 2u);
  check_transcript_matches_ledger(yes);

  const auto no = eq_deterministic(bits_from_string("0000"), bits_from_string("0001"));
  EXPECT_FALSE(no.output.at("equal").get<bool>());
  EXPECT_EQ(no.ledger.classical_bits, 5u);
}

TEST(EqDeterministic, AgreesWithDirectComparisonOnRandomPairs) {
  SeededRng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const Bits x = random_bits(12, rng);
    // Half the cases force equality.
    const Bits y = (t % 2 == 0) ? x : random_bits(12, rng);
    const auto r = eq_deterministic(x, y);
    EXPECT_EQ(r.output.at("equal").get<bool>(), x == y);
  }
}

TEST(EqDeterministic, RejectsMismatchedLengths) {
  EXPECT_THROW(eq_deterministic(bits_from_string("01"), bits_from_string("011")),
               std::invalid_argument);
}

TEST(EqPublicCoin, NeverErrsOnEqualStrings) {
  SeededRng rng(2);
  const Bits x = bits_from_string("110010");
  for (int t = 0; t < 200; ++t) {
    const auto r = eq_public_coin(x, x, 5, rng);
    EXPECT_TRUE(r.output.at("equal").get<bool>());
  }
}

TEST(EqPublicCoin, SingleRoundFalseAcceptIsExactlyHalf) {
  // Enumerate all 2^n coins: any unequal pair matches on exactly half of
  // them, since x·r = y·r iff (x^y)·r = 0.
  const int n = 6;
  const Bits x = bits_from_string("101100");
  const Bits y = bits_from_string("100101");
  int accepts = 0;
  for (std::uint64_t rv = 0; rv < (1u << n); ++rv) {
    accepts += eq_public_coin_round(x, y, bits_from_index(rv, n)) ? 1 : 0;
  }
  EXPECT_EQ(accepts, 1 << (n - 1));
}

TEST(EqPublicCoin, ZeroRoundsAcceptVacuouslyAndLedger) {
  SeededRng rng(3);
  const auto r = eq_public_coin(bits_from_string("01"), bits_from_string("10"), 0, rng);
  EXPECT_TRUE(r.output.at("equal").get<bool>());
  EXPECT_EQ(r.ledger.classical_bits, 0u);

  const auto r2 = eq_public_coin(bits_from_string("0101"), bits_from_string("0101"), 3, rng);
  EXPECT_EQ(r2.ledger.classical_bits, 3u);
  EXPECT_EQ(r2.ledger.public_coin_bits, 12u);
}

TEST(EqPolynomial, NeverErrsOnEqualStrings) {
  const Bits x = bits_from_string("1011");
  const std::uint64_t p = fingerprint_modulus(4);
  EXPECT_EQ(p, 13u);
  for (std::uint64_t a = 0; a < p; ++a) {
    const auto r = eq_private_coin_poly_at(x, x, a);
    EXPECT_TRUE(r.output.at("equal").get<bool>());
  }
}

TEST(EqPolynomial, FalseAcceptRateByFieldEnumeration) {
  // n = 4, p = 13: the exact false-accept rate is the number of field points
  // where the two polynomials agree, at most (n-1)/p = 3/13.
  const Bits x = bits_from_string("1011");
  const Bits y = bits_from_string("0111");
  const std::uint64_t p = 13;
  int agree_oracle = 0;
  int accepts = 0;
  for (std::uint64_t a = 0; a < p; ++a) {
    agree_oracle += (poly_oracle(x, a, p) == poly_oracle(y, a, p));
    accepts += eq_private_coin_poly_at(x, y, a).output.at("equal").get<bool>() ? 1 : 0;
  }
  EXPECT_EQ(accepts, agree_oracle);
  EXPECT_LE(agree_oracle, 3);
}

TEST(EqPolynomial, ConstantDifferenceNeverAccepts) {
  // x = 0^n against y with only the first bit set: the difference polynomial
  // is the nonzero constant 1, so no field point accepts.
  const Bits x = bits_from_string("0000");
  const Bits y = bits_from_string("1000");
  for (std::uint64_t a = 0; a < 13; ++a) {
    EXPECT_FALSE(eq_private_coin_poly_at(x, y, a).output.at("equal").get<bool>());
  }
}

TEST(EqPolynomial, LedgerCountsTwoFieldElements) {
  SeededRng rng(4);
  const auto r = eq_private_coin_poly(bits_from_string("1011"), bits_from_string("1011"), rng);
  EXPECT_EQ(r.ledger.classical_bits, 8u);  // 2 * ceil(log2 13)
  check_transcript_matches_ledger(r);
}

// ---- distributed Deutsch-Jozsa ----

TEST(DjQuantum, EqualInputsAlwaysAccept) {
  const Bits x = bits_from_string("0110");
  const auto r = dj_quantum(x, x);
  EXPECT_TRUE(r.output.at("equal").get<bool>());
  EXPECT_NEAR(r.output.at("p_all_zero").get<double>(), 1.0, kContractTol);
  EXPECT_EQ(r.ledger.qubits, 2u);
  check_transcript_matches_ledger(r);
}

TEST(DjQuantum, HalfDistanceInputsAlwaysReject) {
  const auto r = dj_quantum(bits_from_string("0000"), bits_from_string("0011"));
  EXPECT_FALSE(r.output.at("equal").get<bool>());
  EXPECT_NEAR(r.output.at("p_all_zero").get<double>(), 0.0, kAlgebraTol);
}

TEST(DjQuantum, SmallestCaseByDirectAmplitude) {
  // n = 2, x = 01, y = 11 differ in exactly one position: the |0..0>
  // amplitude is (1 - 1)/2 = 0, so the protocol outputs 0.
  const auto r = dj_quantum(bits_from_string("01"), bits_from_string("11"));
  EXPECT_FALSE(r.output.at("equal").get<bool>());
  EXPECT_NEAR(r.output.at("p_all_zero").get<double>(), 0.0, kAlgebraTol);
}

TEST(DjQuantum, PromiseViolationsAreRejected) {
  // Distance 2 of n = 2 violates the promise.
  EXPECT_THROW(dj_quantum(bits_from_string("01"), bits_from_string("10")), std::invalid_argument);
  // n not a power of two.
  EXPECT_THROW(dj_quantum(bits_from_string("010"), bits_from_string("010")),
               std::invalid_argument);
}

TEST(DjQuantum, ExhaustivelyCorrectAtSmallSizes) {
  for (int n : {2, 4, 8}) {
    for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << n); ++xv) {
      const Bits x = bits_from_index(xv, n);
      // Equal case.
      EXPECT_TRUE(dj_quantum(x, x).correct.value());
      // All promise partners at distance n/2: flip each n/2-subset.
      std::vector<int> mask(static_cast<std::size_t>(n), 0);
      std::fill(mask.begin(), mask.begin() + n / 2, 1);
      std::sort(mask.begin(), mask.end());
      do {
        Bits y = x;
        for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] ^= mask[static_cast<std::size_t>(i)];
        EXPECT_TRUE(dj_quantum(x, y).correct.value());
      } while (std::next_permutation(mask.begin(), mask.end()));
      if (n == 8 && xv > 16) break;  // sampled slice is enough here; acceptance sweeps all
    }
  }
}

TEST(DjNonlocal, EqualInputsAlwaysAgree) {
  SeededRng rng(5);
  const Bits x = bits_from_string("0110");
  const auto r = dj_nonlocal(x, x, rng);
  EXPECT_NEAR(r.p_equal(), 1.0, kContractTol);
  // log2(n) ebits and zero communication.
  EXPECT_EQ(r.ledger.ebits, 2u);
  EXPECT_EQ(r.ledger.classical_bits, 0u);
  EXPECT_EQ(r.ledger.qubits, 0u);
  // Each a has P(both get a) = 1/n.
  for (int a = 0; a < 4; ++a) EXPECT_NEAR(r.p_at(a, a), 0.25, kContractTol);
}

TEST(DjNonlocal, FarInputsNeverAgree) {
  SeededRng rng(6);
  const auto r = dj_nonlocal(bits_from_string("0000"), bits_from_string("0011"), rng);
  EXPECT_NEAR(r.p_equal(), 0.0, kAlgebraTol);
}

TEST(DjNonlocal, SupportRespectsThePromiseContract) {
  SeededRng rng(7);
  for (int n : {4, 8}) {
    const Bits x = random_bits(n, rng);
    Bits y = x;
    for (int i = 0; i < n / 2; ++i) y[static_cast<std::size_t>(i)] ^= 1;
    const auto far = dj_nonlocal(x, y, rng);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) {
          EXPECT_LT(far.p_at(a, b), kAlgebraTol);
        }
      }
    const auto same = dj_nonlocal(x, x, rng);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a != b) {
          EXPECT_LT(same.p_at(a, b), kAlgebraTol);
        }
      }
  }
}

// ---- Grover intersection ----

TEST(IntersectionGrover, EmptyIntersectionNeverReportsAnIndex) {
  const Bits x = bits_from_string("1010101010101010");
  const Bits y = bits_from_string("0101010101010101");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SeededRng rng(seed);
    const auto r = intersection_grover(x, y, rng);
    EXPECT_FALSE(r.output.at("found").get<bool>());
    EXPECT_TRUE(r.correct.value());
  }
}

TEST(IntersectionGrover, FindsPlantedUniqueIntersection) {
  // Unique solution at index 7 (0-based); a classical scan confirms it.
  const int n = 16;
  Bits x(n, 0), y(n, 0);
  x[7] = y[7] = 1;
  for (int i = 0; i < n; i += 3) {
    if (i != 7) x[static_cast<std::size_t>(i)] = 1;
  }
  int scan_count = 0;
  for (int i = 0; i < n; ++i) scan_count += (x[static_cast<std::size_t>(i)] & y[static_cast<std::size_t>(i)]);
  ASSERT_EQ(scan_count, 1);

  int successes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng rng(seed);
    const auto r = intersection_grover(x, y, rng);
    if (r.output.at("found").get<bool>()) {
      EXPECT_EQ(r.output.at("index").get<int>(), 7);
      ++successes;
    }
    check_transcript_matches_ledger(r);
  }
  EXPECT_GE(successes, 67);
}

TEST(IntersectionGrover, AllOnesAlwaysSucceeds) {
  const Bits x = bits_from_string("1111");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed);
    const auto r = intersection_grover(x, x, rng);
    EXPECT_TRUE(r.output.at("found").get<bool>());
  }
}

TEST(IntersectionGrover, RequiresPowerOfTwoLength) {
  SeededRng rng(8);
  EXPECT_THROW(intersection_grover(bits_from_string("010"), bits_from_string("010"), rng),
               std::invalid_argument);
}

TEST(IntersectionGrover, OracleCallCostPerIteration) {
  // Each oracle call ships two (log n + 1)-qubit messages.
  const Bits x = bits_from_string("00010000");
  const Bits y = bits_from_string("00010000");
  SeededRng rng(9);
  const auto r = intersection_grover(x, y, rng);
  EXPECT_EQ(r.ledger.qubits % (2 * (3 + 1)), 0u);
  EXPECT_GT(r.ledger.qubits, 0u);
}

// ---- hidden matching ----

TEST(Matching, ValidationRejectsBadInputs) {
  MatchingSpec bad;
  bad.n = 4;
  bad.pairs = {{1, 2}, {2, 3}};  // index 2 covered twice
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  MatchingSpec short_m;
  short_m.n = 4;
  short_m.pairs = {{1, 2}};
  EXPECT_THROW(short_m.validate(), std::invalid_argument);
  EXPECT_NO_THROW(MatchingSpec::adjacent(8).validate());
  SeededRng rng(10);
  EXPECT_NO_THROW(MatchingSpec::random(16, rng).validate());
}

TEST(HmQuantum, SmallestCaseIsDeterministic) {
  // n = 2, matching {(1,2)}, x = 10: the projected state is proportional to
  // |1> - |2>, orthogonal to the plus vector, so the parity reads 1.
  SeededRng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto r = hm_quantum(bits_from_string("10"), MatchingSpec::adjacent(2), rng);
    EXPECT_EQ(r.output.at("i").get<int>(), 1);
    EXPECT_EQ(r.output.at("j").get<int>(), 2);
    EXPECT_EQ(r.output.at("parity").get<int>(), 1);
  }
}

TEST(HmQuantum, ParityAlwaysCorrectAcrossSizesAndMatchings) {
  SeededRng rng(12);
  for (int n : {2, 4, 8, 16}) {
    for (int rep = 0; rep < 8; ++rep) {
      const Bits x = random_bits(n, rng);
      const auto m = rep % 2 == 0 ? MatchingSpec::adjacent(n) : MatchingSpec::random(n, rng);
      EXPECT_NEAR(hm_quantum_correct_probability(x, m), 1.0, kContractTol);
      const auto r = hm_quantum(x, m, rng);
      EXPECT_TRUE(r.correct.value());
      EXPECT_EQ(r.ledger.qubits, static_cast<std::uint64_t>(log2_exact(static_cast<std::uint64_t>(n))));
    }
  }
}

TEST(HmQuantum, AllZeroStringAlwaysReadsParityZero) {
  SeededRng rng(13);
  const Bits x(8, 0);
  for (int t = 0; t < 20; ++t) {
    const auto r = hm_quantum(x, MatchingSpec::adjacent(8), rng);
    EXPECT_EQ(r.output.at("parity").get<int>(), 0);
  }
}

TEST(HmQuantum, PairChoiceIsUniformOverTheMatching) {
  SeededRng rng(14);
  const Bits x = random_bits(8, rng);
  const auto m = MatchingSpec::adjacent(8);
  std::vector<int> counts(4, 0);
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    const auto r = hm_quantum(x, m, rng);
    const int i = r.output.at("i").get<int>();
    counts[static_cast<std::size_t>((i - 1) / 2)]++;
  }
  const double expect = trials / 4.0;
  const double sigma = std::sqrt(trials * 0.25 * 0.75);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(counts[static_cast<std::size_t>(k)], expect, 4.0 * sigma);
}

TEST(HmNonlocal, SupportSatisfiesTheParityConstraint) {
  SeededRng rng(15);
  for (int n : {4, 8}) {
    const Bits x = random_bits(n, rng);
    const auto m = MatchingSpec::random(n, rng);
    const auto res = hm_nonlocal(x, m, rng);
    EXPECT_EQ(res.ledger.ebits, static_cast<std::uint64_t>(log2_exact(static_cast<std::uint64_t>(n))));
    EXPECT_EQ(res.ledger.classical_bits, 0u);
    EXPECT_EQ(res.ledger.qubits, 0u);
    double total = 0.0;
    for (std::size_t pk = 0; pk < m.pairs.size(); ++pk) {
      const int i = m.pairs[pk].first - 1;
      const int j = m.pairs[pk].second - 1;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double p = res.joint[pk][(static_cast<std::size_t>(k) << res.m) | l];
          total += p;
          const int kl = k ^ l;
          const int lhs = (std::popcount(static_cast<unsigned>(i & kl)) +
                           std::popcount(static_cast<unsigned>(j & kl))) &
                          1;
          const int rhs = x[static_cast<std::size_t>(i)] ^ x[static_cast<std::size_t>(j)];
          if (lhs != rhs) {
            EXPECT_LT(p, kAlgebraTol);
          }
        }
    }
    EXPECT_NEAR(total, 1.0, kContractTol);
  }
}

TEST(HmNonlocal, AliceMarginalIsUniform) {
  SeededRng rng(16);
  for (int n : {4, 8}) {
    const Bits x = random_bits(n, rng);
    const auto res = hm_nonlocal(x, MatchingSpec::adjacent(n), rng);
    for (int k = 0; k < n; ++k) {
      double pk_total = 0.0;
      for (std::size_t pk = 0; pk < res.joint.size(); ++pk) {
        for (int l = 0; l < n; ++l) {
          pk_total += res.joint[pk][(static_cast<std::size_t>(k) << res.m) | l];
        }
      }
      EXPECT_NEAR(pk_total, 1.0 / n, kContractTol);
    }
  }
}

TEST(HmClassical, FullSampleAlwaysSucceedsSingletonNeverDoes) {
  SeededRng rng(17);
  const Bits x = random_bits(8, rng);
  const auto m = MatchingSpec::adjacent(8);
  for (int t = 0; t < 10; ++t) {
    EXPECT_TRUE(hm_classical_oneway(x, m, 8, rng).output.at("success").get<bool>());
    EXPECT_FALSE(hm_classical_oneway(x, m, 1, rng).output.at("success").get<bool>());
  }
}

TEST(HmClassical, EmpiricalRateMatchesExhaustiveSubsetOracle) {
  // n = 16, sample 8 distinct indices: enumerate all C(16,8) subsets to get
  // the exact probability that some matched pair is fully covered.
  const int n = 16, s = 8;
  SeededRng rng(18);
  const Bits x = random_bits(n, rng);
  const auto m = MatchingSpec::adjacent(n);

  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  std::fill(mask.begin(), mask.begin() + s, 1);
  std::sort(mask.begin(), mask.end());
  std::uint64_t hits = 0, total = 0;
  do {
    ++total;
    bool ok = false;
    for (const auto& [i, j] : m.pairs) {
      if (mask[static_cast<std::size_t>(i - 1)] && mask[static_cast<std::size_t>(j - 1)]) {
        ok = true;
        break;
      }
    }
    hits += ok;
  } while (std::next_permutation(mask.begin(), mask.end()));
  const double exact = static_cast<double>(hits) / static_cast<double>(total);

  const int trials = 10000;
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    successes += hm_classical_oneway(x, m, s, rng).output.at("success").get<bool>() ? 1 : 0;
  }
  const double freq = static_cast<double>(successes) / trials;
  const double sigma = std::sqrt(exact * (1.0 - exact) / trials);
  EXPECT_NEAR(freq, exact, 4.0 * sigma);
}

TEST(HmClassical, LedgerCountsIndexValuePairs) {
  SeededRng rng(19);
  const auto r = hm_classical_oneway(random_bits(16, rng), MatchingSpec::adjacent(16), 6, rng);
  EXPECT_EQ(r.ledger.classical_bits, 6u * (4 + 1));
  check_transcript_matches_ledger(r);
}

// ---- Raz's problem ----

TEST(Raz, PerfectAlignmentIsDeterministic) {
  RazInstance inst;
  inst.m = 4;
  inst.v = {1.0, 0.0, 0.0, 0.0};
  inst.coord_subspace = {0, 0, 1, 1};
  inst.u = Operator::identity(4);
  inst.true_label = 0;
  inst.exact_overlap = 1.0;
  inst.validate();
  SeededRng rng(20);
  for (int t = 0; t < 20; ++t) {
    const auto r = raz_quantum(inst, rng);
    EXPECT_EQ(r.output.at("label").get<int>(), 0);
    EXPECT_EQ(r.ledger.qubits, 4u);
    EXPECT_EQ(r.ledger.rounds, 2u);
  }
}

TEST(Raz, GeneratorHitsTheRequestedOverlap) {
  SeededRng rng(21);
  for (double target : {2.0 / 3.0, 0.8, 1.0}) {
    const auto inst = raz_instance_gen(8, target, rng);
    // Independent recomputation of ||P_true U v||^2.
    double overlap = 0.0;
    for (int r = 0; r < inst.m; ++r) {
      if (inst.coord_subspace[static_cast<std::size_t>(r)] != inst.true_label) continue;
      double acc = 0.0;
      for (int c = 0; c < inst.m; ++c) {
        acc += inst.u.at(r, c).real() * inst.v[static_cast<std::size_t>(c)];
      }
      overlap += acc * acc;
    }
    EXPECT_NEAR(overlap, target, kContractTol);
    EXPECT_TRUE(inst.u.is_unitary());
  }
}

TEST(Raz, EmpiricalRateMatchesOverlap) {
  SeededRng gen(22);
  const auto inst = raz_instance_gen(8, 0.9, gen);
  SeededRng rng(23);
  const int trials = 10000;
  int correct = 0;
  for (int t = 0; t < trials; ++t) correct += raz_quantum(inst, rng).correct.value();
  const double freq = static_cast<double>(correct) / trials;
  const double sigma = std::sqrt(0.9 * 0.1 / trials);
  EXPECT_NEAR(freq, 0.9, 4.0 * sigma);
}

TEST(Raz, RandomInstancesKeepThePromise) {
  SeededRng rng(24);
  for (int t = 0; t < 10; ++t) {
    const double target = 2.0 / 3.0 + (1.0 / 3.0) * rng.next_double();
    const auto inst = raz_instance_gen(8, target, rng);
    SeededRng run_rng(100 + static_cast<std::uint64_t>(t));
    const auto r = raz_quantum(inst, run_rng);
    EXPECT_GE(r.output.at("p_true").get<double>(), 2.0 / 3.0 - kContractTol);
  }
}

TEST(Raz, GeneratorRejectsBadParameters) {
  SeededRng rng(25);
  EXPECT_THROW(raz_instance_gen(6, 0.9, rng), std::invalid_argument);   // not a power of two
  EXPECT_THROW(raz_instance_gen(8, 0.5, rng), std::invalid_argument);   // under 2/3
  EXPECT_THROW(raz_instance_gen(8, 1.01, rng), std::invalid_argument);  // over 1
}

// ---- inner-product transfer ----

TEST(IpTransfer, RecoversKnownStrings) {
  EXPECT_EQ(ip_transfer_demo(bits_from_string("101"), bits_from_string("000")),
            bits_from_string("101"));
  // All-zero x: the phase map is the identity and Hadamards undo the
  // superposition.
  EXPECT_EQ(ip_transfer_demo(bits_from_string("0000"), bits_from_string("0000")),
            bits_from_string("0000"));
}

TEST(IpTransfer, ExhaustiveOverAllInputsAtN4) {
  const Bits y0 = bits_from_string("0110");
  for (std::uint64_t v = 0; v < 16; ++v) {
    const Bits x = bits_from_index(v, 4);
    EXPECT_EQ(ip_transfer_demo(x, y0), x);
  }
}

TEST(IpTransfer, RejectsOversizedInputs) {
  EXPECT_THROW(ip_transfer_demo(Bits(11, 0), Bits(11, 0)), std::invalid_argument);
}
