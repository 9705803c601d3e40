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

#include <json.hpp>
#include <string>

#include "apclock/observables.hpp"
#include "apclock/resolution.hpp"
#include "apclock/state.hpp"

namespace apclock {

inline constexpr const char* kSchemaVersion = "apclock-1";

using Json = nlohmann::json;

// Spectrum: {"hbar": 1.0, "mode": "exact"|"float",
//            "levels": [{"energy": <number or "p/q">, "degeneracy": n}],
//            "basis": [..] (optional, declared rationally independent)}
Json spectrum_to_json(const Spectrum& s);
std::shared_ptr<const Spectrum> spectrum_from_json(const Json& j);

// State: {"spectrum": <inline object or file path string>,
//         "amplitudes": [{"level": j, "d": d, "re": r, "im": i}]}
Json state_to_json(const StateVector& psi);
StateVector state_from_json(const Json& j);

// APFunction: {"module": {"basis": [...], "denominator": D, "mode": ...},
//              "terms": [{"coeffs": [...], "freq": value, "re": r, "im": i}]}
Json apfunction_to_json(const APFunction& f);
APFunction apfunction_from_json(const Json& j);

// Operator: {"dim": n, "entries": [[re, im], ...] row-major}
Json operator_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd operator_from_json(const Json& j);

Json report_to_json(const ResolutionReport& report);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// CSV with a header row; columns t, p(t).
void write_density_csv(const std::string& path, const APDensity& density, double t_min,
                       double t_max, int points);
/// CSV with header t, value columns (e.g. |theta|^2 or |A|).
void write_trace_csv(const std::string& path, const std::string& value_name,
                     std::span<const double> ts, std::span<const double> values);

}  // namespace apclock
