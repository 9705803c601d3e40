// Copyright 2026 The apclock authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace apclock {

/// A named check: value compared against a target with a tolerance.
struct MetricResult {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string comparison;  // "equals", "below", "above"
  bool pass = false;
  std::string reference;   // where the target comes from
};

struct ScenarioResult {
  std::string name;
  std::vector<MetricResult> metrics;
  std::vector<std::string> artifacts;

  bool all_pass() const;
};

struct ScenarioParams {
  std::vector<double> u_list;       // coherent-phase parameters
  std::vector<double> energy_list;  // mean-energy constraints
  double omega1 = 1.0;
  double omega2 = 0.0;              // 0: scenario default
  int random_states = 100;
  std::uint64_t seed = 42;
  std::string output_dir;           // artifacts written here when nonempty
};

/// Names: coherent-phase, hydrogen, isotropic, correlated, anisotropic,
/// single-mode, pom-limit, galapon.
ScenarioResult run_scenario(const std::string& name, const ScenarioParams& params = {});

std::vector<std::string> scenario_names();

nlohmann::json scenario_to_json(const ScenarioResult& result);

/// Solves E = w1 U/(1-U) + w2 V/(1-V), U = e^{-w1/Omega}, V = e^{-w2/Omega}
/// for Omega by bisection (the right side is strictly increasing in Omega).
double solve_omega(double energy, double w1, double w2);

}  // namespace apclock
