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

#include <benchmark/benchmark.h>

#include "nlcc/bell.hpp"
#include "nlcc/bits.hpp"
#include "nlcc/ccproto.hpp"
#include "nlcc/detect.hpp"
#include "nlcc/games.hpp"
#include "nlcc/lbtools.hpp"
#include "nlcc/nlbox.hpp"
#include "nlcc/smp.hpp"

using namespace nlcc;

namespace {

void BM_ChshEvalExact(benchmark::State& state) {
  const auto game = games::chsh_game();
  const auto strategy = games::chsh_quantum();
  for (auto _ : state) {
    benchmark::DoNotOptimize(games::eval_exact(game, strategy).win_probability);
  }
}
BENCHMARK(BM_ChshEvalExact);

void BM_BestClassicalMagicSquare(benchmark::State& state) {
  const auto game = games::magic_square_game();
  for (auto _ : state) {
    benchmark::DoNotOptimize(games::best_classical(game).first);
  }
}
BENCHMARK(BM_BestClassicalMagicSquare);

void BM_QmSeesawChsh(benchmark::State& state) {
  const auto game = bell::XorGame::chsh();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell::qm_value_xor(game, 2, 1000, 1e-12, 1).value);
  }
}
BENCHMARK(BM_QmSeesawChsh);

void BM_DjQuantum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(1);
  const Bits x = random_bits(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccproto::dj_quantum(x, x).ledger.qubits);
  }
}
BENCHMARK(BM_DjQuantum)->Arg(8)->Arg(16);

void BM_GroverIntersection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Bits x(static_cast<std::size_t>(n), 0), y(static_cast<std::size_t>(n), 0);
  x[static_cast<std::size_t>(n / 2)] = 1;
  y[static_cast<std::size_t>(n / 2)] = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SeededRng rng(seed++);
    benchmark::DoNotOptimize(ccproto::intersection_grover(x, y, rng).ledger.qubits);
  }
}
BENCHMARK(BM_GroverIntersection)->Arg(16)->Arg(32);

void BM_SwapTestFingerprints(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(2);
  const auto fx = smp::quantum_fingerprint(random_bits(n, rng));
  const auto fy = smp::quantum_fingerprint(random_bits(n, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(smp::swap_test_one_probability(fx.state, fy.state));
  }
}
BENCHMARK(BM_SwapTestFingerprints)->Arg(4)->Arg(8);

void BM_VandamRandomCircuit(benchmark::State& state) {
  SeededRng gen(3);
  const auto c = nlbox::BooleanCircuit::random(4, 8, gen);
  const Bits x = random_bits(4, gen);
  const Bits y = random_bits(4, gen);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SeededRng rng(seed++);
    benchmark::DoNotOptimize(nlbox::vandam_eval(c, x, y, 1.0, rng).ledger.nl_boxes);
  }
}
BENCHMARK(BM_VandamRandomCircuit);

void BM_LhvFeasibilityChsh(benchmark::State& state) {
  const auto table = bell::correlation_from_quantum(games::chsh_quantum(), games::chsh_game());
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect::lhv_feasibility(table, 0.8, 0.8).feasible);
  }
}
BENCHMARK(BM_LhvFeasibilityChsh);

void BM_RankExactEq(benchmark::State& state) {
  const auto m = lbtools::comm_matrix(lbtools::eq_predicate, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lbtools::rank_exact(m));
  }
}
BENCHMARK(BM_RankExactEq)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
