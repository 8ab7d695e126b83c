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

#include "nlcc/runner.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nlcc/bell.hpp"
#include "nlcc/bits.hpp"
#include "nlcc/ccproto.hpp"
#include "nlcc/detect.hpp"
#include "nlcc/fieldpoly.hpp"
#include "nlcc/games.hpp"
#include "nlcc/lbtools.hpp"
#include "nlcc/nlbox.hpp"
#include "nlcc/qstate.hpp"
#include "nlcc/smp.hpp"
#include "nlcc/version.hpp"

namespace nlcc::runner {

namespace {

constexpr double kCos2Pi8 = 0.85355339059327376220;  // cos^2(pi/8)
constexpr double kInvSqrt2 = 0.70710678118654752440;

struct RunContext {
  ExperimentConfig cfg;  // params resolved with defaults
  SeededRng master{0};
  Json exact = Json::object();
  Json stats = Json::object();   // sampled aggregates {mean, sigma}
  Json rows = Json::array();     // per-trial rows
  Json extra = Json::object();  // tables, witnesses, ledgers
  bool has_pass = false;
  bool pass = true;
};

using Handler = std::function<void(RunContext&)>;

struct TargetEntry {
  TargetInfo info;
  Handler handler;
};

// ---- param helpers ----

int param_int(const RunContext& ctx, const std::string& name) {
  return ctx.cfg.params.at(name).get<int>();
}

double param_real(const RunContext& ctx, const std::string& name) {
  return ctx.cfg.params.at(name).get<double>();
}

std::string param_string(const RunContext& ctx, const std::string& name) {
  return ctx.cfg.params.at(name).get<std::string>();
}

bool param_bool(const RunContext& ctx, const std::string& name) {
  return ctx.cfg.params.at(name).get<bool>();
}

Bits param_bits_or_random(RunContext& ctx, const std::string& name, int n, SeededRng& rng) {
  const std::string s = param_string(ctx, name);
  if (s.empty()) return random_bits(n, rng);
  Bits b = bits_from_string(s);
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("parameter '" + name + "': expected " + std::to_string(n) +
                                " bits");
  }
  return b;
}

// ---- trial pool ----

std::vector<Json> run_trials(const RunContext& ctx,
                             const std::function<Json(int, SeededRng&)>& body) {
  const int trials = ctx.cfg.trials;
  std::vector<Json> rows(static_cast<std::size_t>(trials));
  int threads = ctx.cfg.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::min<unsigned>(4, std::thread::hardware_concurrency()));
  }
  threads = std::max(1, std::min(threads, trials));

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const int idx = next.fetch_add(1);
      if (idx >= trials) break;
      SeededRng rng = ctx.master.derive(0x741a15, static_cast<std::uint64_t>(idx));
      try {
        rows[static_cast<std::size_t>(idx)] = body(idx, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(trials);  // stop remaining workers
        break;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

void add_stat(RunContext& ctx, const std::vector<Json>& rows, const std::string& key) {
  double sum = 0.0, sum2 = 0.0;
  int count = 0;
  for (const auto& row : rows) {
    if (!row.contains(key)) continue;
    const double v = row.at(key).is_boolean() ? (row.at(key).get<bool>() ? 1.0 : 0.0)
                                              : row.at(key).get<double>();
    sum += v;
    sum2 += v * v;
    ++count;
  }
  if (count == 0) return;
  const double mean = sum / count;
  const double var = std::max(0.0, sum2 / count - mean * mean);
  Json stat;
  stat["mean"] = mean;
  stat["sigma"] = std::sqrt(var / count);
  ctx.stats[key] = stat;
}

void attach_rows(RunContext& ctx, std::vector<Json> rows) {
  for (auto& r : rows) ctx.rows.push_back(std::move(r));
}

Json ledger_json(const ccproto::CostLedger& ledger) { return Json(ledger.to_json()); }

// ---- shared pieces ----

games::GameSpec game_by_name(const std::string& name) {
  if (name == "ghz") return games::ghz_game();
  if (name == "chsh") return games::chsh_game();
  return games::magic_square_game();
}

games::QuantumStrategy strategy_by_name(const std::string& name) {
  if (name == "ghz") return games::ghz_quantum();
  if (name == "chsh") return games::chsh_quantum();
  return games::magic_square_quantum();
}

void game_handler(RunContext& ctx, const std::string& name) {
  const games::GameSpec game = game_by_name(name);
  const games::QuantumStrategy quantum = strategy_by_name(name);
  const games::GameReport q = games::eval_exact(game, quantum);
  auto [classical, argmax] = games::best_classical(game);

  ctx.exact["quantum_value"] = q.win_probability;
  ctx.exact["classical_value"] = to_double(classical);
  ctx.exact["classical_value_rational"] = rational_to_string(classical);
  if (name == "chsh") ctx.exact["reference_quantum"] = kCos2Pi8;
  if (name == "ghz" || name == "magic-square") ctx.exact["reference_quantum"] = 1.0;
  Json per_input = Json::array();
  for (const auto& pi : q.per_input) {
    Json e;
    e["inputs"] = pi.inputs;
    e["win_probability"] = pi.win_probability;
    per_input.push_back(e);
  }
  ctx.exact["per_input"] = per_input;

  if (ctx.cfg.trials > 0) {
    auto rows = run_trials(ctx, [&](int, SeededRng& rng) {
      const games::SampledRun run = games::sample_run(game, quantum, rng);
      Json row;
      row["inputs"] = run.inputs;
      row["outputs"] = run.outputs;
      row["win"] = run.win;
      return row;
    });
    add_stat(ctx, rows, "win");
    attach_rows(ctx, std::move(rows));
  }
}

nlbox::BooleanCircuit circuit_from_params(RunContext& ctx, SeededRng& rng) {
  const auto& spec = ctx.cfg.params.at("circuit");
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "single-and") return nlbox::BooleanCircuit::single_and();
    if (s == "random") {
      return nlbox::BooleanCircuit::random(param_int(ctx, "n"), param_int(ctx, "max_and"), rng);
    }
    throw std::invalid_argument("parameter 'circuit': expected 'single-and', 'random' or a JSON object");
  }
  return nlbox::BooleanCircuit::from_json(spec);
}

// ---- catalog ----

std::vector<TargetEntry> build_catalog() {
  std::vector<TargetEntry> entries;
  auto add = [&entries](TargetInfo info, Handler h) {
    entries.push_back({std::move(info), std::move(h)});
  };
  const auto p_int = [](const std::string& n, int def, const std::string& d) {
    return ParamSpec{n, "int", false, Json(def), d};
  };
  const auto p_real = [](const std::string& n, double def, const std::string& d) {
    return ParamSpec{n, "real", false, Json(def), d};
  };
  const auto p_str = [](const std::string& n, const std::string& def, const std::string& d) {
    return ParamSpec{n, "string", false, Json(def), d};
  };
  const auto p_bool = [](const std::string& n, bool def, const std::string& d) {
    return ParamSpec{n, "bool", false, Json(def), d};
  };

  for (const std::string name : {"ghz", "chsh", "magic-square"}) {
    add({name, "exact and sampled values of the " + name + " game", {}, false, true},
        [name](RunContext& ctx) { game_handler(ctx, name); });
  }

  add({"tsirelson",
       "random ±1-observable quadruples against the 1/sqrt(2) eigenvalue bound",
       {p_int("dim", 2, "observable dimension"), p_int("samples", 200, "random quadruples")},
       true, false},
      [](RunContext& ctx) {
        const int dim = param_int(ctx, "dim");
        const int samples = param_int(ctx, "samples");
        SeededRng rng = ctx.master.derive(0x7517e1);
        double worst = -1.0;
        bool all_ok = true;
        for (int s = 0; s < samples; ++s) {
          const double v = games::tsirelson_check(
              games::random_pm1_observable(dim, rng), games::random_pm1_observable(dim, rng),
              games::random_pm1_observable(dim, rng), games::random_pm1_observable(dim, rng));
          worst = std::max(worst, v);
          all_ok = all_ok && v <= kInvSqrt2 + kContractTol;
        }
        // The rotation strategy's observables saturate the bound.
        const Operator z = gates::pauli_z();
        const Operator x = gates::pauli_x();
        const Operator b0 = (z + x).scaled(kInvSqrt2);
        const Operator b1 = (z - x).scaled(kInvSqrt2);
        const double saturated = games::tsirelson_check(z, x, b0, b1);
        ctx.exact["bound"] = kInvSqrt2;
        ctx.exact["max_random_value"] = worst;
        ctx.exact["saturating_value"] = saturated;
        ctx.has_pass = true;
        ctx.pass = all_ok && std::abs(saturated - kInvSqrt2) <= kContractTol;
      });

  add({"xor-values",
       "LHV / quantum-seesaw / no-signalling values of an XOR game",
       {p_str("game", "chsh", "game name (chsh) or use 'matrix'"),
        ParamSpec{"matrix", "json", false, Json(), "signed weight matrix m_xy"},
        p_int("dim", 0, "seesaw vector dimension (0 = min(nx+ny, 8))"),
        p_int("max_iters", 1000, "seesaw sweep cap"),
        p_real("tol", 1e-12, "seesaw improvement cutoff")},
       false, false},
      [](RunContext& ctx) {
        bell::XorGame game;
        if (!ctx.cfg.params.at("matrix").is_null()) {
          const auto& m = ctx.cfg.params.at("matrix");
          game.nx = static_cast<int>(m.size());
          game.ny = static_cast<int>(m.at(0).size());
          for (const auto& row : m)
            for (const auto& v : row) game.m.push_back(v.get<double>());
        } else if (param_string(ctx, "game") == "chsh") {
          game = bell::XorGame::chsh();
        } else {
          throw std::invalid_argument("parameter 'game': unknown XOR game");
        }
        int dim = param_int(ctx, "dim");
        if (dim <= 0) dim = std::min(game.nx + game.ny, 8);
        const auto seesaw = bell::qm_value_xor(game, dim, param_int(ctx, "max_iters"),
                                               param_real(ctx, "tol"), ctx.cfg.seed);
        ctx.exact["lhv_value"] = bell::lhv_value_xor(game);
        ctx.exact["ns_value"] = bell::ns_value_xor(game);
        ctx.exact["qm_lower_bound"] = seesaw.value;
        ctx.exact["qm_iterations"] = seesaw.iterations;
        ctx.exact["qm_converged"] = seesaw.converged;
      });

  add({"dj",
       "distributed Deutsch-Jozsa, exact evaluation",
       {p_int("n", 8, "input length (power of two)"), p_str("x", "", "Alice's bits"),
        p_str("y", "", "Bob's bits"),
        p_str("variant", "far", "promise case when x/y omitted: equal | far")},
       false, false},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0xd7);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        Bits y;
        if (param_string(ctx, "y").empty()) {
          y = x;
          if (param_string(ctx, "variant") == "far") {
            std::vector<int> idx(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
            for (int i = n - 1; i > 0; --i) {
              const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
              std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
            }
            for (int i = 0; i < n / 2; ++i) y[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] ^= 1;
          }
        } else {
          y = param_bits_or_random(ctx, "y", n, rng);
        }
        const auto res = ccproto::dj_quantum(x, y);
        ctx.exact["equal"] = res.output.at("equal").get<bool>();
        ctx.exact["p_all_zero"] = res.output.at("p_all_zero").get<double>();
        ctx.exact["correct"] = res.correct.value();
        ctx.extra["ledger"] = ledger_json(res.ledger);
        ctx.extra["x"] = bits_to_string(x);
        ctx.extra["y"] = bits_to_string(y);
      });

  add({"dj-nonlocal",
       "non-local Deutsch-Jozsa joint output distribution",
       {p_int("n", 8, "input length (power of two)"), p_str("x", "", "Alice's bits"),
        p_str("y", "", "Bob's bits"),
        p_str("variant", "far", "promise case when x/y omitted: equal | far")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0xd7a);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        Bits y;
        if (param_string(ctx, "y").empty()) {
          y = x;
          if (param_string(ctx, "variant") == "far") {
            for (int i = 0; i < n / 2; ++i) y[static_cast<std::size_t>(i)] ^= 1;
          }
        } else {
          y = param_bits_or_random(ctx, "y", n, rng);
        }
        SeededRng sample_rng = ctx.master.derive(0xd7b);
        const auto res = ccproto::dj_nonlocal(x, y, sample_rng);
        const bool equal = (x == y);
        double violation = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            const bool same = (a == b);
            if (same != equal) violation = std::max(violation, res.p_at(a, b));
          }
        ctx.exact["p_equal_outputs"] = res.p_equal();
        ctx.exact["support_violation"] = violation;
        ctx.extra["ledger"] = ledger_json(res.ledger);
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::dj_nonlocal(x, y, trial_rng);
            Json row;
            row["a"] = r.sampled_a;
            row["b"] = r.sampled_b;
            row["same_output"] = r.sampled_a == r.sampled_b;
            return row;
          });
          add_stat(ctx, rows, "same_output");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"hm",
       "hidden matching, one-way quantum protocol",
       {p_int("n", 8, "string length (power of two)"), p_str("x", "", "Alice's bits"),
        p_str("matching", "adjacent", "adjacent | random")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0x4a);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const auto matching = param_string(ctx, "matching") == "random"
                                  ? ccproto::MatchingSpec::random(n, rng)
                                  : ccproto::MatchingSpec::adjacent(n);
        ctx.exact["correct_probability"] = ccproto::hm_quantum_correct_probability(x, matching);
        ctx.exact["qubit_cost"] = log2_exact(static_cast<std::uint64_t>(n));
        {
          SeededRng probe = ctx.master.derive(0x4b);
          ctx.extra["ledger"] = ledger_json(ccproto::hm_quantum(x, matching, probe).ledger);
        }
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::hm_quantum(x, matching, trial_rng);
            Json row;
            row["i"] = r.output.at("i").get<int>();
            row["j"] = r.output.at("j").get<int>();
            row["parity"] = r.output.at("parity").get<int>();
            row["correct"] = r.correct.value();
            return row;
          });
          add_stat(ctx, rows, "correct");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"hm-nonlocal",
       "non-local hidden matching joint distribution",
       {p_int("n", 8, "string length (power of two)"), p_str("x", "", "Alice's bits"),
        p_str("matching", "adjacent", "adjacent | random")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0x4a17);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const auto matching = param_string(ctx, "matching") == "random"
                                  ? ccproto::MatchingSpec::random(n, rng)
                                  : ccproto::MatchingSpec::adjacent(n);
        SeededRng srng = ctx.master.derive(0x4a18);
        const auto res = ccproto::hm_nonlocal(x, matching, srng);
        double violation = 0.0;
        for (std::size_t pk = 0; pk < matching.pairs.size(); ++pk) {
          const int i = matching.pairs[pk].first - 1;
          const int j = matching.pairs[pk].second - 1;
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const int kl = k ^ l;
              const int lhs = (std::popcount(static_cast<unsigned>(i & kl)) +
                               std::popcount(static_cast<unsigned>(j & kl))) &
                              1;
              const int rhs = (x[static_cast<std::size_t>(i)] ^ x[static_cast<std::size_t>(j)]) & 1;
              if (lhs != rhs) {
                violation = std::max(
                    violation, res.joint[pk][(static_cast<std::size_t>(k) << res.m) | l]);
              }
            }
        }
        ctx.exact["constraint_violation"] = violation;
        ctx.extra["ledger"] = ledger_json(res.ledger);
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::hm_nonlocal(x, matching, trial_rng);
            const int i = matching.pairs[static_cast<std::size_t>(r.sampled_pair)].first - 1;
            const int j = matching.pairs[static_cast<std::size_t>(r.sampled_pair)].second - 1;
            const int kl = r.sampled_k ^ r.sampled_l;
            const int lhs = (std::popcount(static_cast<unsigned>(i & kl)) +
                             std::popcount(static_cast<unsigned>(j & kl))) &
                            1;
            const int rhs = (x[static_cast<std::size_t>(i)] ^ x[static_cast<std::size_t>(j)]) & 1;
            Json row;
            row["pair"] = r.sampled_pair;
            row["k"] = r.sampled_k;
            row["l"] = r.sampled_l;
            row["constraint_ok"] = lhs == rhs;
            return row;
          });
          add_stat(ctx, rows, "constraint_ok");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"hm-classical",
       "hidden matching, classical birthday protocol",
       {p_int("n", 16, "string length"), p_str("x", "", "Alice's bits"),
        p_str("matching", "adjacent", "adjacent | random"),
        p_int("sample_size", 0, "indices sent (0 = ceil(2 sqrt n))")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0x4ac1);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const auto matching = param_string(ctx, "matching") == "random"
                                  ? ccproto::MatchingSpec::random(n, rng)
                                  : ccproto::MatchingSpec::adjacent(n);
        int sample_size = param_int(ctx, "sample_size");
        if (sample_size <= 0) {
          sample_size = static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n))));
        }
        sample_size = std::min(sample_size, n);
        ctx.exact["sample_size"] = sample_size;
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::hm_classical_oneway(x, matching, sample_size, trial_rng);
            Json row;
            row["success"] = r.output.at("success").get<bool>();
            return row;
          });
          add_stat(ctx, rows, "success");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"intersection",
       "distributed Grover search for a common 1-index",
       {p_int("n", 16, "string length (power of two)"), p_str("x", "", "Alice's bits"),
        p_str("y", "", "Bob's bits"),
        p_bool("plant_unique", true, "generate a planted unique intersection when x/y omitted")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0x9c0);
        Bits x, y;
        int planted = -1;
        if (param_string(ctx, "x").empty() && param_string(ctx, "y").empty() &&
            param_bool(ctx, "plant_unique")) {
          x.assign(static_cast<std::size_t>(n), 0);
          y.assign(static_cast<std::size_t>(n), 0);
          planted = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
          x[static_cast<std::size_t>(planted)] = 1;
          y[static_cast<std::size_t>(planted)] = 1;
          for (int i = 0; i < n; ++i) {
            if (i == planted) continue;
            switch (rng.next_below(3)) {
              case 0: x[static_cast<std::size_t>(i)] = 1; break;
              case 1: y[static_cast<std::size_t>(i)] = 1; break;
              default: break;
            }
          }
        } else {
          x = param_bits_or_random(ctx, "x", n, rng);
          y = param_bits_or_random(ctx, "y", n, rng);
        }
        bool any = false;
        for (int i = 0; i < n; ++i) any = any || (x[static_cast<std::size_t>(i)] && y[static_cast<std::size_t>(i)]);
        ctx.exact["has_intersection"] = any;
        if (planted >= 0) ctx.exact["planted_index"] = planted;
        ctx.extra["x"] = bits_to_string(x);
        ctx.extra["y"] = bits_to_string(y);
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::intersection_grover(x, y, trial_rng);
            const bool found = r.output.at("found").get<bool>();
            Json row;
            row["found"] = found;
            row["correct"] = r.correct.value();
            bool false_positive = false;
            if (found) {
              const int idx = r.output.at("index").get<int>();
              row["index"] = idx;
              false_positive = !(x[static_cast<std::size_t>(idx)] && y[static_cast<std::size_t>(idx)]);
            }
            row["false_positive"] = false_positive;
            row["qubits"] = static_cast<double>(r.ledger.qubits);
            return row;
          });
          add_stat(ctx, rows, "found");
          add_stat(ctx, rows, "correct");
          add_stat(ctx, rows, "false_positive");
          add_stat(ctx, rows, "qubits");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"raz",
       "Raz's subspace-label problem on a generated instance",
       {p_int("m", 8, "vector dimension (power of two)"),
        p_real("overlap", 0.8, "target ||P_true U v||^2 in [2/3, 1]")},
       false, true},
      [](RunContext& ctx) {
        SeededRng gen = ctx.master.derive(0x9a2);
        const auto inst =
            ccproto::raz_instance_gen(param_int(ctx, "m"), param_real(ctx, "overlap"), gen);
        ctx.exact["overlap"] = inst.exact_overlap;
        ctx.exact["qubit_cost"] = 2 * log2_exact(static_cast<std::uint64_t>(inst.m));
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::raz_quantum(inst, trial_rng);
            Json row;
            row["label"] = r.output.at("label").get<int>();
            row["correct"] = r.correct.value();
            return row;
          });
          add_stat(ctx, rows, "correct");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"eq-det",
       "deterministic equality (Bob ships his input)",
       {p_int("n", 8, "string length"), p_str("x", "", "Alice's bits"), p_str("y", "", "Bob's bits")},
       false, false},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0xe0d);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const Bits y = param_bits_or_random(ctx, "y", n, rng);
        const auto res = ccproto::eq_deterministic(x, y);
        ctx.exact["equal"] = res.output.at("equal").get<bool>();
        ctx.extra["ledger"] = ledger_json(res.ledger);
      });

  add({"eq-public",
       "public-coin randomized equality",
       {p_int("n", 8, "string length"), p_str("x", "", "Alice's bits"), p_str("y", "", "Bob's bits"),
        p_int("reps", 8, "rounds")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        const int reps = param_int(ctx, "reps");
        SeededRng rng = ctx.master.derive(0xe0b);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const Bits y = param_bits_or_random(ctx, "y", n, rng);
        ctx.exact["false_accept_bound"] = std::pow(0.5, reps);
        ctx.exact["strings_equal"] = (x == y);
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::eq_public_coin(x, y, reps, trial_rng);
            Json row;
            row["accept"] = r.output.at("equal").get<bool>();
            return row;
          });
          add_stat(ctx, rows, "accept");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"eq-poly",
       "private-coin polynomial fingerprint equality",
       {p_int("n", 8, "string length"), p_str("x", "", "Alice's bits"), p_str("y", "", "Bob's bits")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0xe0f);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const Bits y = param_bits_or_random(ctx, "y", n, rng);
        const std::uint64_t p = fingerprint_modulus(n);
        const int agree = poly_agreement_count(x, y, p);
        ctx.exact["modulus"] = p;
        ctx.exact["exact_accept_probability"] = static_cast<double>(agree) / static_cast<double>(p);
        ctx.exact["strings_equal"] = (x == y);
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto r = ccproto::eq_private_coin_poly(x, y, trial_rng);
            Json row;
            row["accept"] = r.output.at("equal").get<bool>();
            return row;
          });
          add_stat(ctx, rows, "accept");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"smp-classical",
       "SMP classical fingerprint equality",
       {p_int("n", 16, "string length"), p_str("x", "", "Alice's bits"), p_str("y", "", "Bob's bits"),
        p_int("k", 0, "points per party (0 = ceil(2 sqrt n))")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0x53c);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const Bits y = param_bits_or_random(ctx, "y", n, rng);
        int k = param_int(ctx, "k");
        if (k <= 0) k = static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n))));
        ctx.exact["k"] = k;
        ctx.exact["strings_equal"] = (x == y);
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto d = smp::smp_classical_eq(x, y, k, trial_rng);
            Json row;
            row["output_equal"] = d.output_equal;
            row["had_common_point"] = d.had_common_point;
            return row;
          });
          add_stat(ctx, rows, "output_equal");
          add_stat(ctx, rows, "had_common_point");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"smp-quantum",
       "SMP quantum fingerprint equality with repeated SWAP tests",
       {p_int("n", 8, "string length"), p_str("x", "", "Alice's bits"), p_str("y", "", "Bob's bits"),
        p_int("reps", 10, "SWAP-test repetitions")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        const int reps = param_int(ctx, "reps");
        SeededRng rng = ctx.master.derive(0x53e);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const Bits y = param_bits_or_random(ctx, "y", n, rng);
        const auto proto = smp::prepare_smp_quantum(x, y);
        ctx.exact["p_one_exact"] = proto.p_one_exact;
        ctx.exact["p_declare_unequal"] = 1.0 - std::pow(1.0 - proto.p_one_exact, reps);
        ctx.exact["error_bound_unequal"] = std::pow(5.0 / 9.0, reps);
        ctx.exact["strings_equal"] = (x == y);
        ctx.exact["qubits_per_rep"] = proto.qubits_per_rep;
        if (ctx.cfg.trials > 0) {
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            const auto d = proto.run(reps, trial_rng);
            Json row;
            row["declared_equal"] = d.equal;
            return row;
          });
          add_stat(ctx, rows, "declared_equal");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"swap-test",
       "SWAP test on two quantum fingerprints",
       {p_int("n", 4, "string length"), p_str("x", "", "first string"), p_str("y", "", "second string")},
       false, true},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0x537);
        const Bits x = param_bits_or_random(ctx, "x", n, rng);
        const Bits y = param_bits_or_random(ctx, "y", n, rng);
        const auto fx = smp::quantum_fingerprint(x);
        const auto fy = smp::quantum_fingerprint(y);
        const double p1 = smp::swap_test_one_probability(fx.state, fy.state);
        const Complex ov = inner(fx.state, fy.state);
        ctx.exact["p_one_circuit"] = p1;
        ctx.exact["p_one_closed_form"] = (1.0 - std::norm(ov)) / 2.0;
        ctx.exact["overlap"] = ov.real();
        if (ctx.cfg.trials > 0) {
          // Outcome draws reuse the circuit-exact distribution computed once.
          auto rows = run_trials(ctx, [&](int, SeededRng& trial_rng) {
            Json row;
            row["outcome"] = trial_rng.next_double() < p1 ? 1 : 0;
            return row;
          });
          add_stat(ctx, rows, "outcome");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"vandam",
       "share-based circuit evaluation over non-local boxes",
       {ParamSpec{"circuit", "json", false, Json("single-and"),
                  "'single-and', 'random', or a circuit object"},
        p_int("n", 2, "inputs per side for random circuits"),
        p_int("max_and", 4, "AND budget for random circuits"),
        p_real("p", 1.0, "box parity-success parameter"),
        p_str("mode", "exhaustive", "exhaustive | sampled")},
       false, true},
      [](RunContext& ctx) {
        SeededRng rng = ctx.master.derive(0xda);
        const auto circuit = circuit_from_params(ctx, rng);
        const double p = param_real(ctx, "p");
        ctx.exact["and_gates"] = circuit.and_count();
        ctx.exact["boxes_per_run"] = 2 * circuit.and_count();
        ctx.exact["bits_per_run"] = 1;
        // Reference line: boxes noisier than (3+sqrt 6)/6 are no longer known
        // to trivialize communication complexity.
        ctx.exact["trivialization_threshold_reference"] = (3.0 + std::sqrt(6.0)) / 6.0;
        if (circuit.and_count() == 1 && circuit.gates.size() == 1) {
          ctx.exact["reference_success"] = p * p + (1.0 - p) * (1.0 - p);
        }
        if (param_string(ctx, "mode") == "exhaustive") {
          bool all_correct = true;
          std::uint64_t boxes = 0;
          const int total = 1 << (2 * circuit.n);
          for (int v = 0; v < total; ++v) {
            Bits x(static_cast<std::size_t>(circuit.n)), y(static_cast<std::size_t>(circuit.n));
            for (int i = 0; i < circuit.n; ++i) {
              x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((v >> i) & 1);
              y[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((v >> (circuit.n + i)) & 1);
            }
            SeededRng run_rng = rng.derive(0xabc, static_cast<std::uint64_t>(v));
            const auto r = nlbox::vandam_eval(circuit, x, y, p, run_rng);
            all_correct = all_correct && r.correct.value();
            boxes = r.ledger.nl_boxes;
          }
          ctx.exact["all_inputs_correct"] = all_correct;
          ctx.exact["boxes_used_per_run"] = boxes;
          ctx.has_pass = true;
          ctx.pass = p < 1.0 || all_correct;
        } else if (ctx.cfg.trials > 0) {
          const auto stats = nlbox::noisy_vandam_success(circuit, p, ctx.cfg.trials,
                                                         ctx.master);
          Json stat;
          stat["mean"] = stats.rate;
          stat["sigma"] = stats.sigma;
          ctx.stats["success"] = stat;
        }
      });

  add({"pr-table",
       "PR-box correlation table, no-signalling and CHSH value",
       {p_real("p", 1.0, "parity-success parameter"),
        p_int("p_num", 0, "optional exact numerator"), p_int("p_den", 0, "optional exact denominator")},
       true, true},
      [](RunContext& ctx) {
        const int p_num = param_int(ctx, "p_num");
        const int p_den = param_int(ctx, "p_den");
        double p = param_real(ctx, "p");
        bool exact_path = p_den > 0;
        bool ns_pass;
        if (exact_path) {
          const Rational pr = make_rational(p_num, p_den);
          p = to_double(pr);
          const auto table = nlbox::pr_correlation_table_exact(pr);
          const auto rep = bell::no_signalling_check_exact(table);
          ns_pass = rep.pass;
          ctx.exact["ns_exact"] = true;
        } else {
          const auto table = nlbox::pr_correlation_table(p);
          const auto rep = bell::no_signalling_check(table);
          ns_pass = rep.pass;
          ctx.exact["ns_exact"] = false;
        }
        const auto table = nlbox::pr_correlation_table(p);
        ctx.exact["p"] = p;
        ctx.exact["chsh_value"] = bell::evaluate(bell::BellExpression::chsh(), table);
        ctx.exact["chsh_closed_form"] = 4.0 * (2.0 * p - 1.0);
        ctx.exact["ns_pass"] = ns_pass;
        Json nested = Json::array();
        for (int x = 0; x < 2; ++x) {
          Json jx = Json::array();
          for (int y = 0; y < 2; ++y) {
            Json jy = Json::array();
            for (int a = 0; a < 2; ++a) {
              Json ja = Json::array();
              for (int b = 0; b < 2; ++b) ja.push_back(table.at(x, y, a, b));
              jy.push_back(ja);
            }
            jx.push_back(jy);
          }
          nested.push_back(jx);
        }
        ctx.extra["table"] = nested;  // index order x, y, a, b
        ctx.has_pass = true;
        ctx.pass = ns_pass;
        if (ctx.cfg.trials > 0) {
          // Sampled box queries on uniform inputs; parity-success frequency
          // estimates p.
          const double box_p = p;
          auto rows = run_trials(ctx, [box_p](int, SeededRng& trial_rng) {
            const int x = trial_rng.next_bit();
            const int y = trial_rng.next_bit();
            nlbox::PrBox box(box_p);
            const auto [a, b] = box.query(x, y, trial_rng);
            Json row;
            row["x"] = x;
            row["y"] = y;
            row["a"] = a;
            row["b"] = b;
            row["parity_ok"] = ((a ^ b) == (x & y));
            return row;
          });
          add_stat(ctx, rows, "parity_ok");
          add_stat(ctx, rows, "a");
          attach_rows(ctx, std::move(rows));
        }
      });

  add({"detect-feasibility",
       "LP feasibility of an inefficient-detector LHV model for the quantum CHSH table",
       {p_real("eta_a", 1.0, "Alice detector efficiency"),
        p_real("eta_b", 1.0, "Bob detector efficiency")},
       false, false},
      [](RunContext& ctx) {
        const auto table =
            bell::correlation_from_quantum(games::chsh_quantum(), games::chsh_game());
        const auto res =
            detect::lhv_feasibility(table, param_real(ctx, "eta_a"), param_real(ctx, "eta_b"));
        ctx.exact["feasible"] = res.feasible;
        if (res.feasible) {
          Json weights = Json::array();
          for (double w : res.weights) weights.push_back(w);
          ctx.extra["mixture_weights"] = weights;
        } else {
          ctx.exact["certificate_violation"] = res.certificate_violation;
          Json farkas = Json::array();
          for (double y : res.farkas) farkas.push_back(y);
          ctx.extra["certificate"] = farkas;
        }
      });

  add({"detect-threshold",
       "detection-efficiency threshold of the quantum CHSH table",
       {p_real("resolution", 0.001, "bisection resolution"),
        p_real("tolerance", 0.01, "allowed distance to 2/(sqrt 2 + 1)")},
       true, false},
      [](RunContext& ctx) {
        const auto table =
            bell::correlation_from_quantum(games::chsh_quantum(), games::chsh_game());
        const double threshold =
            detect::detection_threshold(table, param_real(ctx, "resolution"));
        const double reference = 2.0 / (std::sqrt(2.0) + 1.0);
        ctx.exact["threshold"] = threshold;
        ctx.exact["reference"] = reference;
        ctx.has_pass = true;
        ctx.pass = std::abs(threshold - reference) <= param_real(ctx, "tolerance");
      });

  add({"lb-rank",
       "exact communication-matrix rank over the rationals",
       {p_str("fn", "eq", "eq | ip | ones"), p_int("n", 4, "input bits per side")},
       false, false},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        const std::string fn = param_string(ctx, "fn");
        lbtools::CommMatrix m;
        if (fn == "eq") {
          m = lbtools::comm_matrix(lbtools::eq_predicate, n);
          ctx.exact["reference_rank"] = std::uint64_t{1} << n;
        } else if (fn == "ip") {
          m = lbtools::comm_matrix(lbtools::ip_predicate, n);
        } else if (fn == "ones") {
          m = lbtools::comm_matrix([](std::uint64_t, std::uint64_t) { return 1; }, n);
          ctx.exact["reference_rank"] = 1;
        } else {
          throw std::invalid_argument("parameter 'fn': expected eq, ip or ones");
        }
        ctx.exact["rank"] = lbtools::rank_exact(m);
      });

  add({"lb-discrepancy",
       "discrepancy of a communication function under the uniform distribution",
       {p_str("fn", "ip", "eq | ip"), p_int("n", 2, "input bits per side"),
        p_str("mode", "exact", "exact | sampled"), p_int("samples", 200, "sampled-mode rectangles")},
       false, false},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        const std::string fn = param_string(ctx, "fn");
        const auto m = lbtools::comm_matrix(
            fn == "eq" ? lbtools::eq_predicate : lbtools::ip_predicate, n);
        const std::vector<double> mu(m.m.size(),
                                     1.0 / static_cast<double>(m.m.size()));
        lbtools::DiscrepancyResult res;
        if (param_string(ctx, "mode") == "exact") {
          res = lbtools::discrepancy_exact(m, mu);
        } else {
          SeededRng rng = ctx.master.derive(0xd15c);
          res = lbtools::discrepancy_sampled(m, mu, param_int(ctx, "samples"), rng);
        }
        ctx.exact["value"] = res.value;
        ctx.exact["is_exact"] = res.exact;
        ctx.exact["witness_rows"] = res.witness.a.size();
        ctx.exact["witness_cols"] = res.witness.b.size();
        if (fn == "ip") ctx.exact["reference_bound"] = std::pow(2.0, -0.5 * n);
      });

  add({"lb-lindsey",
       "Lindsey's lemma over random rectangles",
       {p_int("n", 8, "input bits per side"), p_int("samples", 10000, "random rectangles")},
       true, false},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        const int samples = param_int(ctx, "samples");
        SeededRng rng = ctx.master.derive(0x11d5);
        bool all = true;
        double worst_margin = 1e300;
        for (int s = 0; s < samples; ++s) {
          const auto a = lbtools::Subset::random(n, rng);
          const auto b = lbtools::Subset::random(n, rng);
          const auto res = lbtools::lindsey_check(a, b, n);
          all = all && res.pass;
          worst_margin = std::min(worst_margin, res.rhs - res.lhs);
        }
        ctx.exact["all_pass"] = all;
        ctx.exact["worst_margin"] = worst_margin;
        ctx.has_pass = true;
        ctx.pass = all;
      });

  add({"lb-nayak",
       "Nayak bound on random encodings/decoders plus the saturating case",
       {p_int("n", 2, "encoded bits"), p_int("d", 2, "carrier dimension"),
        p_int("draws", 100, "random encoding/decoder draws")},
       true, false},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        const int d = param_int(ctx, "d");
        const int draws = param_int(ctx, "draws");
        SeededRng rng = ctx.master.derive(0x9a7a);
        const int count = 1 << n;
        bool all = true;
        double worst = -1.0;
        for (int t = 0; t < draws; ++t) {
          std::vector<Operator> encodings;
          for (int i = 0; i < count; ++i) encodings.push_back(lbtools::random_pure_density(d, rng));
          const auto decoders = lbtools::random_povm(d, count, rng);
          const auto res = lbtools::nayak_check(encodings, decoders, d);
          all = all && res.pass;
          worst = std::max(worst, res.avg_success);
        }
        // Orthogonal single-bit encodings saturate d/2^n.
        std::vector<Operator> basis_enc = {Operator::ket_bra(2, 0, 0), Operator::ket_bra(2, 1, 1)};
        const auto saturated = lbtools::nayak_check(basis_enc, basis_enc, 2);
        ctx.exact["bound"] = static_cast<double>(d) / count;
        ctx.exact["max_avg_success"] = worst;
        ctx.exact["all_pass"] = all;
        ctx.exact["saturating_value"] = saturated.avg_success;
        ctx.has_pass = true;
        ctx.pass = all && std::abs(saturated.avg_success - saturated.bound) <= kContractTol;
      });

  add({"ip-transfer",
       "inner-product phase map transfers Alice's basis state to Bob",
       {p_int("n", 4, "register width (<= 10)"), p_str("x", "", "Alice's bits"),
        p_str("y0", "", "Bob's superposition seed"),
        p_bool("exhaustive", false, "check every x of width n")},
       true, false},
      [](RunContext& ctx) {
        const int n = param_int(ctx, "n");
        SeededRng rng = ctx.master.derive(0x1b7);
        const Bits y0 = param_bits_or_random(ctx, "y0", n, rng);
        bool all_ok = true;
        if (param_bool(ctx, "exhaustive")) {
          for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const Bits x = bits_from_index(v, n);
            all_ok = all_ok && (ccproto::ip_transfer_demo(x, y0) == x);
          }
          ctx.exact["checked"] = std::uint64_t{1} << n;
        } else {
          const Bits x = param_bits_or_random(ctx, "x", n, rng);
          const Bits rec = ccproto::ip_transfer_demo(x, y0);
          all_ok = (rec == x);
          ctx.exact["x"] = bits_to_string(x);
          ctx.exact["recovered"] = bits_to_string(rec);
        }
        ctx.exact["recovered_exactly"] = all_ok;
        ctx.has_pass = true;
        ctx.pass = all_ok;
      });

  return entries;
}

const std::vector<TargetEntry>& entries() {
  static const std::vector<TargetEntry> kEntries = build_catalog();
  return kEntries;
}

const TargetEntry* find_entry(const std::string& name) {
  for (const auto& e : entries()) {
    if (e.info.name == name) return &e;
  }
  return nullptr;
}

}  // namespace

const std::vector<TargetInfo>& catalog() {
  static const std::vector<TargetInfo> kInfos = [] {
    std::vector<TargetInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return kInfos;
}

const TargetInfo* find_target(const std::string& name) {
  for (const auto& t : catalog()) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

Json catalog_json() {
  Json doc = Json::array();
  for (const auto& t : catalog()) {
    Json entry;
    entry["name"] = t.name;
    entry["description"] = t.description;
    entry["check_mode"] = t.check_mode;
    entry["supports_trials"] = t.supports_trials;
    Json params = Json::array();
    for (const auto& p : t.params) {
      Json jp;
      jp["name"] = p.name;
      jp["type"] = p.type;
      jp["required"] = p.required;
      jp["default"] = p.default_value;
      jp["description"] = p.description;
      params.push_back(jp);
    }
    entry["params"] = params;
    doc.push_back(entry);
  }
  return doc;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  ExperimentConfig cfg;
  if (doc.contains("id")) cfg.id = doc.at("id").get<std::string>();
  if (!doc.contains("target")) throw std::invalid_argument("config: missing field 'target'");
  cfg.target = doc.at("target").get<std::string>();
  if (doc.contains("params")) cfg.params = doc.at("params");
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("trials")) cfg.trials = doc.at("trials").get<int>();
  if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
  if (doc.contains("out")) cfg.out_path = doc.at("out").get<std::string>();
  if (doc.contains("format")) cfg.format = doc.at("format").get<std::string>();
  return cfg;
}

Json ExperimentConfig::to_json() const {
  Json doc;
  doc["id"] = id;
  doc["target"] = target;
  doc["params"] = params;
  doc["seed"] = seed;
  doc["trials"] = trials;
  doc["format"] = format;
  return doc;
}

void validate_config(const ExperimentConfig& config) {
  const TargetInfo* target = find_target(config.target);
  if (!target) throw std::invalid_argument("config field 'target': unknown target '" + config.target + "'");
  if (config.trials < 0) throw std::invalid_argument("config field 'trials': must be >= 0");
  if (config.format != "json" && config.format != "csv") {
    throw std::invalid_argument("config field 'format': expected 'json' or 'csv'");
  }
  if (!config.params.is_object()) throw std::invalid_argument("config field 'params': must be an object");
  for (auto it = config.params.begin(); it != config.params.end(); ++it) {
    const ParamSpec* found = nullptr;
    for (const auto& p : target->params) {
      if (p.name == it.key()) {
        found = &p;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("config parameter '" + it.key() + "': unknown for target '" +
                                  config.target + "'");
    }
    const auto& v = it.value();
    const std::string& ty = found->type;
    const bool ok = (ty == "int" && v.is_number_integer()) ||
                    (ty == "real" && v.is_number()) || (ty == "string" && v.is_string()) ||
                    (ty == "bool" && v.is_boolean()) || ty == "json" || ty == "bits";
    if (!ok) {
      throw std::invalid_argument("config parameter '" + it.key() + "': expected type " + ty);
    }
  }
  for (const auto& p : target->params) {
    if (p.required && !config.params.contains(p.name)) {
      throw std::invalid_argument("config parameter '" + p.name + "': required for target '" +
                                  config.target + "'");
    }
  }
}

namespace {

// Convert convertible string/number params to their declared type so that
// shell-quoted values like --param p_num=17 or --param x=1 behave.
void coerce_param_types(ExperimentConfig& cfg) {
  const TargetInfo* target = find_target(cfg.target);
  if (!target) return;
  for (const auto& p : target->params) {
    if (!cfg.params.contains(p.name)) continue;
    auto& v = cfg.params[p.name];
    try {
      if (p.type == "int" && v.is_string()) {
        v = std::stoll(v.get<std::string>());
      } else if (p.type == "real" && v.is_string()) {
        v = std::stod(v.get<std::string>());
      } else if (p.type == "string" && v.is_number_integer()) {
        v = std::to_string(v.get<long long>());
      } else if (p.type == "bool" && v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "true" || s == "false") v = (s == "true");
      }
    } catch (const std::exception&) {
      // Left untouched; validate_config reports the type mismatch.
    }
  }
}

ExperimentConfig resolve_defaults(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  const TargetInfo* target = find_target(config.target);
  for (const auto& p : target->params) {
    if (!cfg.params.contains(p.name)) cfg.params[p.name] = p.default_value;
  }
  return cfg;
}

void flatten_into(const std::string& prefix, const Json& value, Json& flat) {
  if (value.is_object()) {
    for (auto it = value.begin(); it != value.end(); ++it) {
      flatten_into(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), flat);
    }
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      flatten_into(prefix + "[" + std::to_string(i) + "]", value[i], flat);
    }
  } else {
    flat[prefix] = value;
  }
}

std::string csv_escape(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  bool needs_quotes = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string Report::to_json_string(int indent) const { return doc.dump(indent) + "\n"; }

std::string Report::to_csv() const {
  // Per-trial rows when present, otherwise one flattened aggregate row.
  std::vector<Json> rows;
  if (doc.contains("results") && doc["results"].contains("rows") &&
      !doc["results"]["rows"].empty()) {
    for (const auto& r : doc["results"]["rows"]) {
      Json flat = Json::object();
      flatten_into("", r, flat);
      rows.push_back(flat);
    }
  } else {
    Json flat = Json::object();
    if (doc.contains("results")) flatten_into("", doc["results"], flat);
    rows.push_back(flat);
  }
  // Stable header union in first-seen order.
  std::vector<std::string> header;
  for (const auto& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (std::find(header.begin(), header.end(), it.key()) == header.end()) {
        header.push_back(it.key());
      }
    }
  }
  std::ostringstream out;
  out << "trial";
  for (const auto& h : header) out << "," << csv_escape(Json(h));
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i;
    for (const auto& h : header) {
      out << ",";
      if (rows[i].contains(h)) out << csv_escape(rows[i][h]);
    }
    out << "\n";
  }
  return out.str();
}

Report run(const ExperimentConfig& config) {
  ExperimentConfig normalized = config;
  coerce_param_types(normalized);
  validate_config(normalized);
  const auto t0 = std::chrono::steady_clock::now();

  RunContext ctx;
  ctx.cfg = resolve_defaults(normalized);
  ctx.master = SeededRng(config.seed);
  const TargetEntry* entry = find_entry(config.target);
  entry->handler(ctx);

  Json results = Json::object();
  if (!ctx.exact.empty()) results["exact"] = ctx.exact;
  if (!ctx.stats.empty()) {
    Json sampled;
    sampled["trials"] = ctx.cfg.trials;
    sampled["stats"] = ctx.stats;
    results["sampled"] = sampled;
  }
  for (auto it = ctx.extra.begin(); it != ctx.extra.end(); ++it) results[it.key()] = it.value();
  if (!ctx.rows.empty()) results["rows"] = ctx.rows;
  if (ctx.has_pass) results["pass"] = ctx.pass;

  Report report;
  report.checks_passed = !ctx.has_pass || ctx.pass;
  report.doc = Json::object();
  report.doc["config"] = ctx.cfg.to_json();
  report.doc["results"] = results;
  Json meta;
  meta["version"] = kVersion;
  meta["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  report.doc["meta"] = meta;
  return report;
}

namespace {

bool has_sigma_key(const nlohmann::json& v) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.key() == "sigma" || has_sigma_key(it.value())) return true;
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (has_sigma_key(e)) return true;
    }
  }
  return false;
}

}  // namespace

bool validate_report_json(const nlohmann::json& report, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!report.is_object()) return fail("report is not an object");
  for (const char* key : {"config", "results", "meta"}) {
    if (!report.contains(key) || !report.at(key).is_object()) {
      return fail(std::string("missing object section '") + key + "'");
    }
  }
  const auto& cfg = report.at("config");
  if (!cfg.contains("target") || !cfg.at("target").is_string()) return fail("config.target missing");
  if (!cfg.contains("seed") || !cfg.at("seed").is_number()) return fail("config.seed missing");
  if (!cfg.contains("trials") || !cfg.at("trials").is_number_integer()) {
    return fail("config.trials missing");
  }
  const auto& meta = report.at("meta");
  if (!meta.contains("version") || !meta.at("version").is_string()) return fail("meta.version missing");
  if (!meta.contains("wall_ms") || !meta.at("wall_ms").is_number()) return fail("meta.wall_ms missing");
  const auto& results = report.at("results");
  if (results.contains("exact")) {
    if (!results.at("exact").is_object()) return fail("results.exact is not an object");
    if (has_sigma_key(results.at("exact"))) {
      return fail("results.exact carries a confidence radius");
    }
  }
  if (results.contains("sampled")) {
    const auto& sampled = results.at("sampled");
    if (!sampled.is_object()) return fail("results.sampled is not an object");
    if (!sampled.contains("trials") || sampled.at("trials").get<int>() <= 0) {
      return fail("results.sampled.trials must be positive");
    }
    if (!sampled.contains("stats") || !sampled.at("stats").is_object() ||
        sampled.at("stats").empty()) {
      return fail("results.sampled.stats missing");
    }
    for (auto it = sampled.at("stats").begin(); it != sampled.at("stats").end(); ++it) {
      if (!it.value().contains("mean") || !it.value().contains("sigma")) {
        return fail("sampled stat '" + it.key() + "' lacks mean/sigma");
      }
    }
  }
  if (results.contains("rows") && !results.at("rows").is_array()) {
    return fail("results.rows is not an array");
  }
  return true;
}

}  // namespace nlcc::runner
