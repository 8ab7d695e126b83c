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

// Experiment runner CLI. Exit codes: 0 success, 2 configuration/validation
// error, 3 failed check-mode assertion.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nlcc/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
  f << text;
}

nlohmann::json parse_param_value(const std::string& raw) {
  // Values that parse as JSON are taken structurally, anything else is a
  // plain string (so --param x=0101 keeps leading zeroes).
  if (!raw.empty() && (raw == "true" || raw == "false" || raw == "null" ||
                       raw.front() == '{' || raw.front() == '[' || raw.front() == '"')) {
    return nlohmann::json::parse(raw);
  }
  if (!raw.empty() && raw.find_first_not_of("+-.0123456789eE") == std::string::npos) {
    // Bit strings like 0101 stay strings; other numerics parse as numbers.
    const bool looks_binary = raw.find_first_not_of("01") == std::string::npos && raw.size() > 1;
    if (!looks_binary) {
      try {
        return nlohmann::json::parse(raw);
      } catch (const nlohmann::json::parse_error&) {
      }
    }
  }
  return nlohmann::json(raw);
}

nlcc::runner::ExperimentConfig build_config(const std::string& config_path,
                                            const std::string& target,
                                            const std::vector<std::string>& params,
                                            std::optional<std::uint64_t> seed,
                                            std::optional<int> trials, int threads,
                                            const std::string& out_path,
                                            const std::string& format) {
  nlcc::runner::ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw std::invalid_argument("config file '" + config_path + "' not readable");
    nlohmann::json doc = nlohmann::json::parse(f);
    cfg = nlcc::runner::ExperimentConfig::from_json(doc);
  }
  if (!target.empty()) cfg.target = target;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    }
    cfg.params[kv.substr(0, eq)] = parse_param_value(kv.substr(eq + 1));
  }
  if (seed) cfg.seed = *seed;
  if (trials) cfg.trials = *trials;
  if (threads > 0) cfg.threads = threads;
  if (!out_path.empty()) cfg.out_path = out_path;
  if (!format.empty()) cfg.format = format;
  return cfg;
}

int run_and_emit(const nlcc::runner::ExperimentConfig& cfg) {
  const nlcc::runner::Report report = nlcc::runner::run(cfg);
  write_output(cfg.format == "csv" ? report.to_csv() : report.to_json_string(), cfg.out_path);
  return report.checks_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlcc: non-locality games, communication protocols and bound checks"};
  app.require_subcommand(1);

  // ---- run ----
  std::string config_path, target, out_path, format;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int threads = 0;

  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config or a target name");
  run_cmd->add_option("--config", config_path, "JSON config file");
  run_cmd->add_option("--target", target, "target name (see list-targets)");
  run_cmd->add_option("--param", params, "target parameter key=value (repeatable)");
  run_cmd->add_option("--seed", seed, "master seed (overrides config)");
  run_cmd->add_option("--trials", trials, "sampled trials (overrides config)");
  run_cmd->add_option("--threads", threads, "worker threads for trial batches");
  run_cmd->add_option("--out", out_path, "output path (default stdout)");
  run_cmd->add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv", ""}));

  // ---- list-targets ----
  std::string list_out;
  auto* list_cmd = app.add_subcommand("list-targets", "print the target catalog as JSON");
  list_cmd->add_option("--out", list_out, "output path (default stdout)");

  // ---- detect ----
  auto* detect_cmd = app.add_subcommand("detect", "detection-efficiency tools");
  double resolution = 0.001;
  std::string detect_out;
  std::uint64_t detect_seed = 0;
  auto* threshold_cmd =
      detect_cmd->add_subcommand("threshold", "CHSH detection threshold via LP bisection");
  threshold_cmd->add_option("--resolution", resolution, "bisection resolution");
  threshold_cmd->add_option("--seed", detect_seed, "master seed");
  threshold_cmd->add_option("--out", detect_out, "output path");

  // ---- lb ----
  auto* lb_cmd = app.add_subcommand("lb", "communication lower-bound tools");
  std::string lb_fn = "eq", lb_mode = "exact", lb_out;
  int lb_n = 4, lb_samples = 10000, lb_d = 2, lb_draws = 100;
  std::uint64_t lb_seed = 0;
  auto* rank_cmd = lb_cmd->add_subcommand("rank", "exact communication-matrix rank");
  rank_cmd->add_option("--fn", lb_fn, "eq | ip | ones");
  rank_cmd->add_option("--n", lb_n, "input bits per side");
  rank_cmd->add_option("--out", lb_out, "output path");
  auto* disc_cmd = lb_cmd->add_subcommand("discrepancy", "rectangle discrepancy");
  disc_cmd->add_option("--fn", lb_fn, "eq | ip");
  disc_cmd->add_option("--n", lb_n, "input bits per side");
  disc_cmd->add_option("--mode", lb_mode, "exact | sampled");
  disc_cmd->add_option("--samples", lb_samples, "sampled-mode rectangles");
  disc_cmd->add_option("--seed", lb_seed, "master seed");
  disc_cmd->add_option("--out", lb_out, "output path");
  auto* lind_cmd = lb_cmd->add_subcommand("lindsey", "Lindsey's lemma over random rectangles");
  lind_cmd->add_option("--n", lb_n, "input bits per side");
  lind_cmd->add_option("--samples", lb_samples, "random rectangles");
  lind_cmd->add_option("--seed", lb_seed, "master seed");
  lind_cmd->add_option("--out", lb_out, "output path");
  auto* nayak_cmd = lb_cmd->add_subcommand("nayak", "Nayak recovery bound");
  nayak_cmd->add_option("--n", lb_n, "encoded bits");
  nayak_cmd->add_option("--d", lb_d, "carrier dimension");
  nayak_cmd->add_option("--draws", lb_draws, "random draws");
  nayak_cmd->add_option("--seed", lb_seed, "master seed");
  nayak_cmd->add_option("--out", lb_out, "output path");

  // ---- vandam ----
  auto* vandam_cmd =
      app.add_subcommand("vandam", "evaluate circuits over non-local boxes, optionally sweeping p");
  std::string circuit_arg = "single-and", sweep, vd_mode = "exhaustive", vd_out;
  double vd_p = 1.0;
  int vd_trials = 0;
  std::uint64_t vd_seed = 0;
  vandam_cmd->add_option("--circuit", circuit_arg, "circuit JSON file, 'single-and' or 'random'");
  vandam_cmd->add_option("--p", vd_p, "box parameter in [1/2, 1]");
  vandam_cmd->add_option("--p-sweep", sweep, "lo:hi:steps sweep of p");
  vandam_cmd->add_option("--mode", vd_mode, "exhaustive | sampled");
  vandam_cmd->add_option("--trials", vd_trials, "trials for sampled mode");
  vandam_cmd->add_option("--seed", vd_seed, "master seed");
  vandam_cmd->add_option("--out", vd_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      return run_and_emit(
          build_config(config_path, target, params, seed, trials, threads, out_path, format));
    }
    if (*list_cmd) {
      write_output(nlcc::runner::catalog_json().dump(2) + "\n", list_out);
      return kExitOk;
    }
    if (*threshold_cmd) {
      nlcc::runner::ExperimentConfig cfg;
      cfg.target = "detect-threshold";
      cfg.params["resolution"] = resolution;
      cfg.seed = detect_seed;
      cfg.out_path = detect_out;
      return run_and_emit(cfg);
    }
    if (*rank_cmd || *disc_cmd || *lind_cmd || *nayak_cmd) {
      nlcc::runner::ExperimentConfig cfg;
      cfg.seed = lb_seed;
      cfg.out_path = lb_out;
      if (*rank_cmd) {
        cfg.target = "lb-rank";
        cfg.params["fn"] = lb_fn;
        cfg.params["n"] = lb_n;
      } else if (*disc_cmd) {
        cfg.target = "lb-discrepancy";
        cfg.params["fn"] = lb_fn;
        cfg.params["n"] = lb_n;
        cfg.params["mode"] = lb_mode;
        cfg.params["samples"] = lb_samples;
      } else if (*lind_cmd) {
        cfg.target = "lb-lindsey";
        cfg.params["n"] = lb_n;
        cfg.params["samples"] = lb_samples;
      } else {
        cfg.target = "lb-nayak";
        cfg.params["n"] = lb_n;
        cfg.params["d"] = lb_d;
        cfg.params["draws"] = lb_draws;
      }
      return run_and_emit(cfg);
    }
    if (*vandam_cmd) {
      nlohmann::json circuit;
      if (circuit_arg == "single-and" || circuit_arg == "random") {
        circuit = circuit_arg;
      } else {
        std::ifstream f(circuit_arg);
        if (!f) throw std::invalid_argument("circuit file '" + circuit_arg + "' not readable");
        circuit = nlohmann::json::parse(f);
      }
      auto make_cfg = [&](double p) {
        nlcc::runner::ExperimentConfig cfg;
        cfg.target = "vandam";
        cfg.params["circuit"] = circuit;
        cfg.params["p"] = p;
        cfg.params["mode"] = vd_mode;
        cfg.seed = vd_seed;
        cfg.trials = vd_trials;
        return cfg;
      };
      if (sweep.empty()) {
        auto cfg = make_cfg(vd_p);
        cfg.out_path = vd_out;
        return run_and_emit(cfg);
      }
      // lo:hi:steps inclusive grid.
      double lo = 0.5, hi = 1.0;
      int steps = 6;
      std::istringstream ss(sweep);
      std::string part;
      if (std::getline(ss, part, ':')) lo = std::stod(part);
      if (std::getline(ss, part, ':')) hi = std::stod(part);
      if (std::getline(ss, part, ':')) steps = std::stoi(part);
      if (steps < 2) throw std::invalid_argument("--p-sweep needs at least 2 steps");
      nlohmann::ordered_json sweep_doc;
      sweep_doc["sweep"] = nlohmann::ordered_json::array();
      bool all_ok = true;
      for (int s = 0; s < steps; ++s) {
        const double p = lo + (hi - lo) * s / (steps - 1);
        const auto report = nlcc::runner::run(make_cfg(p));
        all_ok = all_ok && report.checks_passed;
        sweep_doc["sweep"].push_back(report.doc);
      }
      write_output(sweep_doc.dump(2) + "\n", vd_out);
      return all_ok ? kExitOk : kExitCheckFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
