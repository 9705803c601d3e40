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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apclock/errors.hpp"
#include "apclock/io.hpp"
#include "apclock/scenario.hpp"

using namespace apclock;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "apclock_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

struct CommandResult {
  int status;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(APCLOCK_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  while (fgets(buffer, sizeof(buffer), pipe)) output += buffer;
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("spectrum JSON round trip preserves exactness") {
  auto s = hydrogen_spectrum(1.0, 5);
  const Json j = spectrum_to_json(*s);
  CHECK(j.at("mode") == "exact");
  // rational strings reload exactly through the schema
  Json manual;
  manual["hbar"] = 1.0;
  manual["mode"] = "exact";
  manual["levels"] = Json::array();
  for (int n = 1; n <= 5; ++n) {
    manual["levels"].push_back(
        {{"energy", "-1/" + std::to_string(n * n)}, {"degeneracy", 1}});
  }
  auto restored = spectrum_from_json(manual);
  REQUIRE(restored->level_count() == s->level_count());
  for (int i = 0; i < 5; ++i) {
    CHECK(restored->energy(i) == doctest::Approx(s->energy(i)).epsilon(1e-15));
    CHECK(restored->energy_rep(i) == s->energy_rep(i));
  }
  CHECK_FALSE(resonance_report(*restored).has_shared_resonances);
}

TEST_CASE("float spectrum JSON round trip") {
  auto s = Spectrum::from_values({0.0, 0.31, 1.27}, {1, 2, 1});
  auto back = spectrum_from_json(spectrum_to_json(*s));
  REQUIRE(back->level_count() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back->energy(i) == doctest::Approx(s->energy(i)).epsilon(1e-14));
    CHECK(back->degeneracy(i) == s->degeneracy(i));
  }
}

TEST_CASE("declared two-element basis reloads as an exact lattice") {
  auto s = anisotropic2_spectrum(1.0, std::sqrt(2.0), 2);
  auto back = spectrum_from_json(spectrum_to_json(*s));
  CHECK(back->module()->mode() == FrequencyModule::Mode::Exact);
  CHECK(back->module()->rank() == 2);
  for (int i = 0; i < s->level_count(); ++i) {
    CHECK(back->energy_rep(i) == s->energy_rep(i));
  }
}

TEST_CASE("state JSON round trip") {
  auto s = isotropic2_spectrum(1.0, 2);
  Rng rng(1);
  const StateVector psi = random_state(s, rng);
  const StateVector back = state_from_json(state_to_json(psi));
  CHECK((back.amplitudes - psi.amplitudes).norm() < 1e-12);
}

TEST_CASE("apfunction JSON round trip") {
  auto s = anisotropic2_spectrum(1.0, std::sqrt(2.0), 1);
  Rng rng(2);
  const APFunction f = canonical_density(random_state(s, rng)).fn;
  const APFunction back = apfunction_from_json(apfunction_to_json(f));
  REQUIRE(back.term_count() == f.term_count());
  for (const auto& [freq, coeff] : f.terms()) {
    CHECK(std::abs(back.coefficient(freq) - coeff) < 1e-15);
  }
}

TEST_CASE("operator JSON round trip") {
  Rng rng(3);
  Eigen::MatrixXcd m(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = rng.complex_normal();
  }
  const Eigen::MatrixXcd back = operator_from_json(operator_to_json(m));
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("density CSV matches the closed form") {
  auto s = harmonic_spectrum(1.0, 1);
  Eigen::VectorXcd amp(2);
  amp << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const APDensity d = canonical_density(make_state(s, amp));
  const auto path = temp_dir() / "density.csv";
  write_density_csv(path.string(), d, 0.0, 4.0 * M_PI, 1000);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,p");
  double worst = 0.0;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double t = std::stod(line.substr(0, comma));
    const double p = std::stod(line.substr(comma + 1));
    worst = std::max(worst, std::abs(p - (1.0 + std::cos(t))));
    ++rows;
  }
  CHECK(rows == 1000);
  CHECK(worst <= 1e-12);
}

TEST_CASE("report JSON for an eigenstate") {
  const ResolutionReport r = resolve(eigenstate(hydrogen_spectrum(1.0, 4), 0));
  const Json j = report_to_json(r);
  CHECK(j.at("schema") == kSchemaVersion);
  CHECK(j.at("purity").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("entropy_nats").get<double>() == doctest::Approx(0.0));
  CHECK(j.at("information_nats").get<double>() == doctest::Approx(0.0));
}

TEST_CASE("invalid paths surface as errors") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/nowhere.json"), Error);
  const APDensity d = canonical_density(eigenstate(hydrogen_spectrum(1.0, 3), 0));
  CHECK_THROWS_AS(write_density_csv("/nonexistent/dir/x.csv", d, 0.0, 1.0, 10), Error);
}

TEST_CASE("solve_omega: forward example, limits, plug-back") {
  // omega = 1 at w1 = w2 = 1 corresponds to E = 2 e^{-1} / (1 - e^{-1})
  const double e_at_one = 2.0 * std::exp(-1.0) / (1.0 - std::exp(-1.0));
  CHECK(solve_omega(e_at_one, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e_at_one == doctest::Approx(1.1639534137).epsilon(1e-9));

  CHECK(solve_omega(1e-6, 1.0, 1.0) < 0.15);  // E -> 0 forces Omega -> 0

  const double w2 = std::sqrt(2.0);
  const double omega = solve_omega(10.0, 1.0, w2);
  const double u = std::exp(-1.0 / omega), v = std::exp(-w2 / omega);
  CHECK(std::abs(u / (1.0 - u) + w2 * v / (1.0 - v) - 10.0) <= 1e-10);
}

TEST_CASE("scenario metrics serialise with tolerances and references") {
  ScenarioParams params;
  params.u_list = {0.5};
  const ScenarioResult result = run_scenario("coherent-phase", params);
  CHECK(result.all_pass());
  const Json j = scenario_to_json(result);
  CHECK(j.at("schema") == kSchemaVersion);
  for (const auto& metric : j.at("metrics")) {
    CHECK(metric.contains("tolerance"));
    CHECK(metric.contains("reference"));
    CHECK(metric.at("pass").get<bool>());
  }
}

TEST_CASE("scenario runs are byte-identical given a seed") {
  ScenarioParams params;
  params.seed = 1234;
  params.random_states = 20;
  const std::string a = scenario_to_json(run_scenario("hydrogen", params)).dump();
  const std::string b = scenario_to_json(run_scenario("hydrogen", params)).dump();
  CHECK(a == b);
}

TEST_CASE("cli: spectrum -> state -> density -> resolution pipeline") {
  const auto dir = temp_dir();
  const auto spec = (dir / "spec.json").string();
  const auto state = (dir / "state.json").string();
  const auto density = (dir / "density.csv").string();
  const auto report = (dir / "report.json").string();

  CHECK(run_cli("spectrum --family hydrogen --n-max 4 --report --output " + spec).status == 0);
  CHECK(run_cli("state --spectrum " + spec + " --random 1 --seed 7 --output " + state).status == 0);
  CHECK(run_cli("density --state " + state + " --t-max 20 --points 200 --output " + density).status == 0);
  const CommandResult res = run_cli("resolution --state " + state + " --output " + report);
  CHECK(res.status == 0);

  const Json rj = load_json_file(report);
  CHECK(rj.at("purity").get<double>() < 2.0);
  CHECK(rj.at("eur_slack_nats").get<double>() >= -1e-9);

  const Json sj = load_json_file(spec);
  CHECK(sj.at("resonances").at("has_shared_resonances") == false);
}

TEST_CASE("cli: pom canonical and kraus round trip") {
  const auto dir = temp_dir();
  const auto t0 = (dir / "t0.json").string();
  CHECK(run_cli("pom canonical --family hydrogen --n-max 3 --output " + t0).status == 0);
  const CommandResult validate = run_cli("pom validate --family hydrogen --n-max 3 --t0 " + t0);
  CHECK(validate.status == 0);
  const CommandResult kraus = run_cli("pom kraus --family hydrogen --n-max 3 --t0 " + t0);
  CHECK(kraus.status == 0);
}

TEST_CASE("cli: semiclassical trace") {
  const auto dir = temp_dir();
  const auto trace = (dir / "trace.csv").string();
  CHECK(run_cli("semiclassical --k 4 --n-bar 200 --sigma 5 --points 64 --output " + trace).status ==
        0);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,theta_sq");
}

TEST_CASE("cli: scenario exit codes and failure on bad input") {
  CHECK(run_cli("scenario coherent-phase --u 0.5").status == 0);
  CHECK(run_cli("scenario no-such-scenario").status != 0);
  CHECK(run_cli("density --state /nonexistent.json --output /tmp/x.csv").status != 0);
}
