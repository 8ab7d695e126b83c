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

#ifndef NLCC_RUNNER_HPP_
#define NLCC_RUNNER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlcc::runner {

using Json = nlohmann::ordered_json;

struct ParamSpec {
  std::string name;
  std::string type;  // "int" | "real" | "string" | "bits" | "bool" | "json"
  bool required = false;
  Json default_value;
  std::string description;
};

struct TargetInfo {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  bool check_mode = false;   // failures map to exit code 3
  bool supports_trials = false;
};

const std::vector<TargetInfo>& catalog();
const TargetInfo* find_target(const std::string& name);
Json catalog_json();

struct ExperimentConfig {
  std::string id = "experiment";
  std::string target;
  Json params = Json::object();
  std::uint64_t seed = 0;
  int trials = 0;
  int threads = 0;  // 0 = auto
  std::string out_path;
  std::string format = "json";  // "json" | "csv"

  static ExperimentConfig from_json(const nlohmann::json& doc);
  Json to_json() const;
};

/// Throws std::invalid_argument naming the offending field.
void validate_config(const ExperimentConfig& config);

struct Report {
  Json doc;  // {"config":..., "results":..., "meta":...}
  bool checks_passed = true;
  std::string to_json_string(int indent = 2) const;
  std::string to_csv() const;
};

/// Deterministic given (config, seed): trials fan out over a worker pool with
/// derived seeds and are assembled in trial order.
Report run(const ExperimentConfig& config);

/// Structural validation against the shipped report schema: required
/// sections, config echo, and the exact/sampled confidence-radius rule.
bool validate_report_json(const nlohmann::json& report, std::string* why = nullptr);

}  // namespace nlcc::runner

#endif  // NLCC_RUNNER_HPP_
