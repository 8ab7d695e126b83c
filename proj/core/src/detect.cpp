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

#include "nlcc/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlcc/simplex.hpp"

namespace nlcc::detect {

// ---- LHVModel ----

void LHVModel::validate() const {
  if (responses.size() != 2) throw std::invalid_argument("lhv: two parties expected");
  if (weights.empty()) throw std::invalid_argument("lhv: empty hidden-variable support");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("lhv: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kContractTol) {
    throw std::invalid_argument("lhv: weights do not sum to 1");
  }
  for (int party = 0; party < 2; ++party) {
    const auto& table = responses[static_cast<std::size_t>(party)];
    const int inputs = party == 0 ? alice_inputs : bob_inputs;
    const int outputs = party == 0 ? alice_outputs : bob_outputs;
    if (table.size() != weights.size()) throw std::invalid_argument("lhv: response table ragged");
    for (const auto& row : table) {
      if (static_cast<int>(row.size()) != inputs) {
        throw std::invalid_argument("lhv: responses not total on the input alphabet");
      }
      for (int v : row) {
        if (v != kNoClick && (v < 0 || v >= outputs)) {
          throw std::invalid_argument("lhv: response out of alphabet");
        }
      }
    }
  }
}

double LHVModel::alice_click_probability(int x) const {
  double p = 0.0;
  for (std::size_t h = 0; h < weights.size(); ++h) {
    if (responses[0][h][static_cast<std::size_t>(x)] != kNoClick) p += weights[h];
  }
  return p;
}

double LHVModel::bob_click_probability(int y) const {
  double p = 0.0;
  for (std::size_t h = 0; h < weights.size(); ++h) {
    if (responses[1][h][static_cast<std::size_t>(y)] != kNoClick) p += weights[h];
  }
  return p;
}

// ---- protocol -> LHV ----

void ConversationCatalog::validate() const {
  const std::size_t transcripts = std::size_t{1} << bits;
  if (alice.size() != transcripts || bob.size() != transcripts) {
    throw std::invalid_argument("catalog: expected one row per transcript (incomplete catalog)");
  }
}

ConversationCatalog ConversationCatalog::one_way_full(
    int n_inputs_alice, int n_inputs_bob, const std::function<int(int)>& alice_output,
    const std::function<int(int, int)>& bob_output) {
  ConversationCatalog cat;
  int bits = 0;
  while ((1 << bits) < n_inputs_alice) ++bits;
  cat.bits = bits;
  const int transcripts = 1 << bits;
  cat.alice.assign(static_cast<std::size_t>(transcripts),
                   std::vector<int>(static_cast<std::size_t>(n_inputs_alice), kNoClick));
  cat.bob.assign(static_cast<std::size_t>(transcripts),
                 std::vector<int>(static_cast<std::size_t>(n_inputs_bob), kNoClick));
  for (int r = 0; r < transcripts; ++r) {
    // Alice's message is her input; the transcript is consistent with her
    // input only when they agree, and always consistent for Bob.
    if (r < n_inputs_alice) {
      cat.alice[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = alice_output(r);
      for (int y = 0; y < n_inputs_bob; ++y) {
        cat.bob[static_cast<std::size_t>(r)][static_cast<std::size_t>(y)] = bob_output(r, y);
      }
    }
  }
  return cat;
}

LHVModel protocol_to_lhv(const ConversationCatalog& catalog, int alice_outputs,
                         int bob_outputs) {
  catalog.validate();
  const std::size_t transcripts = std::size_t{1} << catalog.bits;
  LHVModel model;
  model.weights.assign(transcripts, 1.0 / static_cast<double>(transcripts));
  model.responses = {catalog.alice, catalog.bob};
  model.alice_inputs = static_cast<int>(catalog.alice.front().size());
  model.bob_inputs = static_cast<int>(catalog.bob.front().size());
  model.alice_outputs = alice_outputs;
  model.bob_outputs = bob_outputs;
  model.validate();
  return model;
}

bell::CorrelationTable lhv_conditional_table(const LHVModel& model) {
  model.validate();
  bell::TableShape sh{model.alice_inputs, model.bob_inputs, model.alice_outputs,
                      model.bob_outputs};
  bell::CorrelationTable table = bell::CorrelationTable::zeros(sh);
  for (int x = 0; x < sh.nx; ++x) {
    for (int y = 0; y < sh.ny; ++y) {
      double both = 0.0;
      for (std::size_t h = 0; h < model.weights.size(); ++h) {
        const int a = model.responses[0][h][static_cast<std::size_t>(x)];
        const int b = model.responses[1][h][static_cast<std::size_t>(y)];
        if (a == kNoClick || b == kNoClick) continue;
        both += model.weights[h];
        table.at(x, y, a, b) += model.weights[h];
      }
      if (both <= 0.0) throw std::invalid_argument("lhv: zero joint click probability");
      for (int a = 0; a < sh.na; ++a)
        for (int b = 0; b < sh.nb; ++b) table.at(x, y, a, b) /= both;
    }
  }
  return table;
}

EfficiencyReport lhv_efficiency_report(const LHVModel& model,
                                       const bell::CorrelationTable& target) {
  model.validate();
  EfficiencyReport rep;
  for (int x = 0; x < model.alice_inputs; ++x) rep.alice_click.push_back(model.alice_click_probability(x));
  for (int y = 0; y < model.bob_inputs; ++y) rep.bob_click.push_back(model.bob_click_probability(y));
  rep.joint_click.assign(static_cast<std::size_t>(model.alice_inputs),
                         std::vector<double>(static_cast<std::size_t>(model.bob_inputs), 0.0));
  for (int x = 0; x < model.alice_inputs; ++x) {
    for (int y = 0; y < model.bob_inputs; ++y) {
      for (std::size_t h = 0; h < model.weights.size(); ++h) {
        if (model.responses[0][h][static_cast<std::size_t>(x)] != kNoClick &&
            model.responses[1][h][static_cast<std::size_t>(y)] != kNoClick) {
          rep.joint_click[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] +=
              model.weights[h];
        }
      }
    }
  }
  rep.conditional = lhv_conditional_table(model);
  if (!(target.shape == rep.conditional.shape)) {
    throw std::invalid_argument("lhv_efficiency_report: target shape mismatch");
  }
  for (int x = 0; x < target.shape.nx; ++x) {
    for (int y = 0; y < target.shape.ny; ++y) {
      double dist = 0.0;
      for (int a = 0; a < target.shape.na; ++a)
        for (int b = 0; b < target.shape.nb; ++b)
          dist += std::abs(rep.conditional.at(x, y, a, b) - target.at(x, y, a, b));
      rep.tv_distance_to_target = std::max(rep.tv_distance_to_target, dist);
    }
  }
  return rep;
}

double lhv_conditional_error(const LHVModel& model, const bell::CorrelationTable& target) {
  model.validate();
  // Alice-side efficiency must be input-independent for the Appendix metric.
  const double eta = model.alice_click_probability(0);
  for (int x = 1; x < model.alice_inputs; ++x) {
    if (std::abs(model.alice_click_probability(x) - eta) > kContractTol) {
      throw std::invalid_argument("lhv_conditional_error: Alice click rate depends on input");
    }
  }
  double worst = 0.0;
  for (int x = 0; x < model.alice_inputs; ++x) {
    for (int y = 0; y < model.bob_inputs; ++y) {
      std::vector<double> p(static_cast<std::size_t>(model.alice_outputs * model.bob_outputs),
                            0.0);
      for (std::size_t h = 0; h < model.weights.size(); ++h) {
        const int a = model.responses[0][h][static_cast<std::size_t>(x)];
        const int b = model.responses[1][h][static_cast<std::size_t>(y)];
        if (a == kNoClick || b == kNoClick) continue;
        p[static_cast<std::size_t>(a * model.bob_outputs + b)] += model.weights[h];
      }
      double dist = 0.0;
      for (int a = 0; a < model.alice_outputs; ++a) {
        for (int b = 0; b < model.bob_outputs; ++b) {
          dist += std::abs(p[static_cast<std::size_t>(a * model.bob_outputs + b)] / eta -
                           target.at(x, y, a, b));
        }
      }
      worst = std::max(worst, dist);
    }
  }
  return worst;
}

// ---- asymmetric construction ----

AsymOneWayPlan asym_lhv_to_oneway(double eta, double eps) {
  if (eta <= 0.0 || eta >= 1.0) throw std::invalid_argument("asym: eta must lie in (0, 1)");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("asym: eps must lie in (0, 1)");
  AsymOneWayPlan plan;
  const double exact_k = std::log(eps) / std::log(1.0 - eta);
  plan.k = std::max(1, static_cast<int>(std::ceil(exact_k - 1e-12)));
  plan.message_bits = 0;
  while ((1 << plan.message_bits) < plan.k) ++plan.message_bits;
  plan.failure_probability = std::pow(1.0 - eta, plan.k);
  plan.error_bound = eps + plan.failure_probability;
  return plan;
}

double asym_protocol_measured_error(const LHVModel& model, double eps,
                                    const bell::CorrelationTable& target, int trials,
                                    SeededRng& rng) {
  model.validate();
  if (!(target.shape ==
        bell::TableShape{model.alice_inputs, model.bob_inputs, model.alice_outputs,
                         model.bob_outputs})) {
    throw std::invalid_argument("asym: target shape mismatch");
  }
  for (int y = 0; y < model.bob_inputs; ++y) {
    if (std::abs(model.bob_click_probability(y) - 1.0) > kContractTol) {
      throw std::invalid_argument("asym: Bob's detector must be perfect");
    }
  }
  const double eta = model.alice_click_probability(0);
  const AsymOneWayPlan plan = asym_lhv_to_oneway(eta, eps);

  double worst = 0.0;
  for (int x = 0; x < model.alice_inputs; ++x) {
    for (int y = 0; y < model.bob_inputs; ++y) {
      std::vector<double> counts(
          static_cast<std::size_t>(model.alice_outputs * model.bob_outputs), 0.0);
      for (int t = 0; t < trials; ++t) {
        SeededRng trial = rng.derive((static_cast<std::uint64_t>(x) << 20) ^ y,
                                     static_cast<std::uint64_t>(t));
        int a = kNoClick;
        int b = kNoClick;
        for (int j = 0; j < plan.k; ++j) {
          // Draw the j-th shared-randomness instance.
          const double u = trial.next_double();
          double acc = 0.0;
          std::size_t h = model.weights.size() - 1;
          for (std::size_t i = 0; i < model.weights.size(); ++i) {
            acc += model.weights[i];
            if (u < acc) {
              h = i;
              break;
            }
          }
          const int cand = model.responses[0][h][static_cast<std::size_t>(x)];
          if (a == kNoClick && cand != kNoClick) {
            // Alice announces index j; both answer from instance j.
            a = cand;
            b = model.responses[1][h][static_cast<std::size_t>(y)];
          }
        }
        if (a == kNoClick) {
          // Fallback branch: random index already consumed, answer randomly.
          a = static_cast<int>(trial.next_below(static_cast<std::uint64_t>(model.alice_outputs)));
          b = static_cast<int>(trial.next_below(static_cast<std::uint64_t>(model.bob_outputs)));
        }
        counts[static_cast<std::size_t>(a * model.bob_outputs + b)] += 1.0;
      }
      double dist = 0.0;
      for (int a = 0; a < model.alice_outputs; ++a) {
        for (int b = 0; b < model.bob_outputs; ++b) {
          dist += std::abs(counts[static_cast<std::size_t>(a * model.bob_outputs + b)] / trials -
                           target.at(x, y, a, b));
        }
      }
      worst = std::max(worst, dist);
    }
  }
  return worst;
}

// ---- LP feasibility ----

namespace {

// Local strategies map each input to an output or ⊥; enumerated as digits in
// base (outputs + 1), with the top value standing for ⊥.
int strategy_response(int strategy, int input, int inputs, int outputs) {
  int rest = strategy;
  for (int i = 0; i < inputs; ++i) {
    const int digit = rest % (outputs + 1);
    rest /= outputs + 1;
    if (i == input) return digit == outputs ? kNoClick : digit;
  }
  return kNoClick;
}

int strategy_count(int inputs, int outputs) {
  int total = 1;
  for (int i = 0; i < inputs; ++i) total *= outputs + 1;
  return total;
}

template <typename Scalar>
struct LpProblem {
  std::vector<std::vector<Scalar>> a;
  std::vector<Scalar> b;
  int columns = 0;
};

// Rows: [normalization | alice click per x | bob click per y |
//        joint outcome per (x, y, a, b)].
template <typename Scalar, typename TableAt>
LpProblem<Scalar> build_lp(int nx, int ny, int na, int nb, const Scalar& eta_a,
                           const Scalar& eta_b, const TableAt& target_at) {
  if (nx > 4 || ny > 4 || na > 3 || nb > 3) {
    throw std::invalid_argument("lhv_feasibility: alphabet too large");
  }
  const int sa = strategy_count(nx, na);
  const int sb = strategy_count(ny, nb);
  LpProblem<Scalar> lp;
  lp.columns = sa * sb;
  const std::size_t rows = 1 + static_cast<std::size_t>(nx) + static_cast<std::size_t>(ny) +
                           static_cast<std::size_t>(nx) * ny * na * nb;
  lp.a.assign(rows, std::vector<Scalar>(static_cast<std::size_t>(lp.columns), Scalar(0)));
  lp.b.assign(rows, Scalar(0));

  for (int col = 0; col < lp.columns; ++col) {
    const int fa = col / sb;
    const int fb = col % sb;
    lp.a[0][static_cast<std::size_t>(col)] = Scalar(1);
    for (int x = 0; x < nx; ++x) {
      if (strategy_response(fa, x, nx, na) != kNoClick) {
        lp.a[1 + static_cast<std::size_t>(x)][static_cast<std::size_t>(col)] = Scalar(1);
      }
    }
    for (int y = 0; y < ny; ++y) {
      if (strategy_response(fb, y, ny, nb) != kNoClick) {
        lp.a[1 + static_cast<std::size_t>(nx) + static_cast<std::size_t>(y)]
            [static_cast<std::size_t>(col)] = Scalar(1);
      }
    }
    std::size_t row = 1 + static_cast<std::size_t>(nx) + static_cast<std::size_t>(ny);
    for (int x = 0; x < nx; ++x) {
      const int ra = strategy_response(fa, x, nx, na);
      for (int y = 0; y < ny; ++y) {
        const int rb = strategy_response(fb, y, ny, nb);
        for (int a = 0; a < na; ++a) {
          for (int b = 0; b < nb; ++b, ++row) {
            if (ra == a && rb == b) lp.a[row][static_cast<std::size_t>(col)] = Scalar(1);
          }
        }
      }
    }
  }

  lp.b[0] = Scalar(1);
  for (int x = 0; x < nx; ++x) lp.b[1 + static_cast<std::size_t>(x)] = eta_a;
  for (int y = 0; y < ny; ++y) {
    lp.b[1 + static_cast<std::size_t>(nx) + static_cast<std::size_t>(y)] = eta_b;
  }
  std::size_t row = 1 + static_cast<std::size_t>(nx) + static_cast<std::size_t>(ny);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b, ++row) {
          lp.b[row] = eta_a * eta_b * target_at(x, y, a, b);
        }
  return lp;
}

}  // namespace

FeasibilityResult lhv_feasibility(const bell::CorrelationTable& target, double eta_a,
                                  double eta_b) {
  target.validate();
  const auto& sh = target.shape;
  auto lp = build_lp<double>(sh.nx, sh.ny, sh.na, sh.nb, eta_a, eta_b,
                             [&](int x, int y, int a, int b) { return target.at(x, y, a, b); });
  auto outcome = detail::solve_equality_feasibility<double>(lp.a, lp.b, 1e-9);

  FeasibilityResult res;
  res.feasible = outcome.residual <= 1e-7;
  if (res.feasible) {
    res.weights = outcome.solution;
  } else {
    res.farkas = outcome.farkas;
    double violation = 0.0;
    for (std::size_t r = 0; r < lp.b.size(); ++r) violation += outcome.farkas[r] * lp.b[r];
    res.certificate_violation = violation;
  }
  return res;
}

ExactFeasibilityResult lhv_feasibility_exact(const bell::RationalTable& target,
                                             const Rational& eta_a, const Rational& eta_b) {
  const auto& sh = target.shape;
  auto lp = build_lp<Rational>(sh.nx, sh.ny, sh.na, sh.nb, eta_a, eta_b,
                               [&](int x, int y, int a, int b) { return target.at(x, y, a, b); });
  auto outcome = detail::solve_equality_feasibility<Rational>(lp.a, lp.b, Rational(0));

  ExactFeasibilityResult res;
  res.feasible = outcome.feasible;
  if (res.feasible) {
    res.weights = outcome.solution;
  } else {
    res.farkas = outcome.farkas;
    res.certificate_violation = 0;
    for (std::size_t r = 0; r < lp.b.size(); ++r) {
      res.certificate_violation += outcome.farkas[r] * lp.b[r];
    }
  }
  return res;
}

double detection_threshold(const bell::CorrelationTable& target, double resolution) {
  if (resolution <= 0.0) throw std::invalid_argument("detection_threshold: resolution must be > 0");
  double lo = 0.0;  // feasible
  double hi = 1.0;
  if (lhv_feasibility(target, hi, hi).feasible) return 1.0;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (lhv_feasibility(target, mid, mid).feasible) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nlcc::detect
