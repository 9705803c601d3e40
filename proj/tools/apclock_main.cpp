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

#include <CLI11.hpp>
#include <iostream>

#include "apclock/io.hpp"
#include "apclock/observables.hpp"
#include "apclock/resolution.hpp"
#include "apclock/scenario.hpp"
#include "apclock/semiclassical.hpp"
#include "apclock/state.hpp"

namespace {

using namespace apclock;

std::shared_ptr<const Spectrum> spectrum_from_options(const std::string& input,
                                                      const std::string& family, double omega,
                                                      double omega2, double rydberg, double k,
                                                      int n_max) {
  if (!input.empty()) return spectrum_from_json(load_json_file(input));
  if (family == "harmonic") return harmonic_spectrum(omega, n_max);
  if (family == "hydrogen") return hydrogen_spectrum(rydberg, n_max);
  if (family == "isotropic2") return isotropic2_spectrum(omega, n_max);
  if (family == "anisotropic2") return anisotropic2_spectrum(omega, omega2, n_max);
  if (family == "powerlaw") return powerlaw_spectrum(k, n_max);
  throw Error("pick --input or --family harmonic|hydrogen|isotropic2|anisotropic2|powerlaw");
}

EntropyBackend parse_backend(const std::string& name) {
  if (name == "auto") return EntropyBackend::Auto;
  if (name == "time-average") return EntropyBackend::TimeAverage;
  if (name == "torus") return EntropyBackend::Torus;
  if (name == "exact-periodic") return EntropyBackend::ExactPeriodic;
  if (name == "factorized") return EntropyBackend::Factorized;
  throw Error("unknown backend '" + name + "'");
}

void emit(const Json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << std::endl;
  } else {
    write_json_file(output, j);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apclock: canonical almost-periodic time observables for discrete spectra"};
  app.require_subcommand(1);

  std::string input, output, state_file, t0_file, family = "harmonic", backend = "auto";
  std::string observable_file;
  double omega = 1.0, omega2 = std::sqrt(2.0), rydberg = 1.0, powerlaw_k = 4.0;
  double coherent_u = -1.0, t_min = 0.0, t_max = 2.0 * M_PI, tau_max = 10.0, horizon = 0.0;
  double sigma = 5.0, n_bar = 200.0, energy = 4.0, tolerance = 0.0;
  int n_max = 8, points = 1000, eigenlevel = -1, random_dim = 0;
  std::uint64_t seed = 42;
  bool report_resonances = false, autocorr = false;

  auto* sp = app.add_subcommand("spectrum", "build a spectrum and report its resonance structure");
  sp->add_option("--input", input, "spectrum JSON file");
  sp->add_option("--family", family, "harmonic|hydrogen|isotropic2|anisotropic2|powerlaw");
  sp->add_option("--omega", omega, "mode frequency");
  sp->add_option("--omega2", omega2, "second mode frequency (anisotropic2)");
  sp->add_option("--rydberg", rydberg, "hydrogen R");
  sp->add_option("--k", powerlaw_k, "powerlaw exponent parameter");
  sp->add_option("--n-max", n_max, "truncation");
  sp->add_flag("--report", report_resonances, "print the resonance report");
  sp->add_option("--output", output, "write spectrum JSON here");

  auto* st = app.add_subcommand("state", "build a state over a spectrum");
  st->add_option("--spectrum", input, "spectrum JSON file");
  st->add_option("--family", family, "generator family when no file is given");
  st->add_option("--omega", omega);
  st->add_option("--omega2", omega2);
  st->add_option("--rydberg", rydberg);
  st->add_option("--k", powerlaw_k);
  st->add_option("--n-max", n_max);
  st->add_option("--coherent-u", coherent_u, "coherent phase state parameter (own spectrum)");
  st->add_option("--eigenstate", eigenlevel, "energy eigenstate index");
  st->add_option("--random", random_dim, "random state (any nonzero value)");
  st->add_option("--seed", seed, "PRNG seed (mt19937_64)");
  st->add_option("--output", output, "write state JSON here");

  auto* de = app.add_subcommand("density", "evaluate the canonical time density on a grid");
  de->add_option("--state", state_file, "state JSON file")->required();
  de->add_option("--t-min", t_min);
  de->add_option("--t-max", t_max);
  de->add_option("--points", points);
  de->add_option("--output", output, "CSV path")->required();

  auto* re = app.add_subcommand("resolution", "purity, entropy, and uncertainty relations");
  re->add_option("--state", state_file, "state JSON file")->required();
  re->add_option("--backend", backend, "auto|time-average|torus|exact-periodic|factorized");
  re->add_option("--tolerance", tolerance, "time-average convergence target");
  re->add_option("--output", output, "report JSON path");

  auto* pom = app.add_subcommand("pom", "general covariant time observables");
  pom->require_subcommand(1);
  auto add_spectrum_opts = [&](CLI::App* cmd) {
    cmd->add_option("--spectrum", input, "spectrum JSON file");
    cmd->add_option("--family", family);
    cmd->add_option("--omega", omega);
    cmd->add_option("--omega2", omega2);
    cmd->add_option("--rydberg", rydberg);
    cmd->add_option("--k", powerlaw_k);
    cmd->add_option("--n-max", n_max);
  };
  auto* pom_can = pom->add_subcommand("canonical", "emit the canonical T0");
  add_spectrum_opts(pom_can);
  pom_can->add_option("--output", output);
  auto* pom_val = pom->add_subcommand("validate", "validate a T0 matrix");
  add_spectrum_opts(pom_val);
  pom_val->add_option("--t0", t0_file, "operator JSON")->required();
  auto* pom_kraus = pom->add_subcommand("kraus", "Kraus decomposition of a validated T0");
  add_spectrum_opts(pom_kraus);
  pom_kraus->add_option("--t0", t0_file, "operator JSON")->required();
  pom_kraus->add_option("--output", output);
  auto* pom_den = pom->add_subcommand("density", "p(t|psi) for a validated pom");
  pom_den->add_option("--state", state_file)->required();
  pom_den->add_option("--t0", t0_file, "operator JSON (default: canonical)");
  pom_den->add_option("--t-min", t_min);
  pom_den->add_option("--t-max", t_max);
  pom_den->add_option("--points", points);
  pom_den->add_option("--output", output)->required();
  auto* pom_lim = pom->add_subcommand("limit", "finite-horizon N(X) construction");
  pom_lim->add_option("--state", state_file)->required();
  pom_lim->add_option("--horizon", horizon, "X (default 1e4 / min gap)");
  pom_lim->add_option("--observable", observable_file, "APFunction JSON for <f>_X");
  pom_lim->add_option("--output", output);
  auto* pom_gal = pom->add_subcommand("galapon", "inverse-difference operator diagnostic");
  pom_gal->add_option("--state", state_file)->required();
  pom_gal->add_option("--tau-max", tau_max);
  pom_gal->add_option("--points", points);
  pom_gal->add_option("--seed", seed);
  pom_gal->add_option("--output", output);

  auto* sc = app.add_subcommand("semiclassical", "second-order expansion traces");
  sc->add_option("--k", powerlaw_k, "powerlaw parameter");
  sc->add_option("--n-bar", n_bar, "mean quantum number");
  sc->add_option("--sigma", sigma, "gaussian profile width");
  sc->add_option("--points", points);
  sc->add_option("--t-max", t_max, "in units of the revival time");
  sc->add_flag("--autocorr", autocorr, "emit |A(tau)| instead of |theta(t)|^2");
  sc->add_option("--output", output, "CSV path")->required();

  auto* sn = app.add_subcommand("scenario", "run a named scenario and check its metrics");
  std::string scenario_name;
  std::vector<double> u_list, energy_list;
  std::string out_dir;
  sn->add_option("name", scenario_name, "one of: coherent-phase hydrogen isotropic correlated "
                                         "anisotropic single-mode pom-limit galapon")
      ->required();
  sn->add_option("--u", u_list, "coherent parameters");
  sn->add_option("--energy", energy_list, "mean energies");
  sn->add_option("--omega", omega);
  sn->add_option("--omega2", omega2);
  sn->add_option("--seed", seed);
  sn->add_option("--states", random_dim, "number of random states");
  sn->add_option("--output", out_dir, "artifact directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) {
      auto s = spectrum_from_options(input, family, omega, omega2, rydberg, powerlaw_k, n_max);
      Json j = spectrum_to_json(*s);
      if (report_resonances) {
        const ResonanceReport rep = resonance_report(*s);
        Json classes = Json::array();
        for (const auto& cls : rep.classes) {
          classes.push_back({{"difference", cls.value}, {"pairs", cls.pairs.size()}});
        }
        j["resonances"] = {{"classes", classes},
                           {"has_shared_resonances", rep.has_shared_resonances}};
        if (rep.common_period) j["resonances"]["common_period"] = *rep.common_period;
      }
      emit(j, output);
    } else if (st->parsed()) {
      StateVector psi = [&]() {
        if (coherent_u >= 0.0) return coherent_phase_state(coherent_u, omega);
        auto s = spectrum_from_options(input, family, omega, omega2, rydberg, powerlaw_k, n_max);
        if (eigenlevel >= 0) return eigenstate(s, eigenlevel);
        Rng rng(seed);
        return random_state(s, rng);
      }();
      emit(state_to_json(psi), output);
    } else if (de->parsed()) {
      const StateVector psi = state_from_json(load_json_file(state_file));
      write_density_csv(output, canonical_density(psi), t_min, t_max, points);
    } else if (re->parsed()) {
      const StateVector psi = state_from_json(load_json_file(state_file));
      EntropyOptions opts;
      opts.convergence_target = tolerance;
      const ResolutionReport report = resolve(psi, parse_backend(backend), opts);
      emit(report_to_json(report), output);
    } else if (pom->parsed()) {
      if (pom_can->parsed()) {
        auto s = spectrum_from_options(input, family, omega, omega2, rydberg, powerlaw_k, n_max);
        emit(operator_to_json(canonical_t0(s).t0.entries), output);
      } else if (pom_val->parsed()) {
        auto s = spectrum_from_options(input, family, omega, omega2, rydberg, powerlaw_k, n_max);
        validate_t0(OperatorMatrix{s, operator_from_json(load_json_file(t0_file))});
        std::cout << "valid time observable" << std::endl;
      } else if (pom_kraus->parsed()) {
        auto s = spectrum_from_options(input, family, omega, omega2, rydberg, powerlaw_k, n_max);
        const TimePOM validated =
            validate_t0(OperatorMatrix{s, operator_from_json(load_json_file(t0_file))});
        const auto kraus = kraus_decompose(validated);
        Json j = Json::array();
        for (const auto& a : kraus) j.push_back(operator_to_json(a));
        emit(Json{{"schema", kSchemaVersion}, {"kraus", j}}, output);
      } else if (pom_den->parsed()) {
        const StateVector psi = state_from_json(load_json_file(state_file));
        const TimePOM pom_obs =
            t0_file.empty()
                ? canonical_t0(psi.spectrum)
                : validate_t0(OperatorMatrix{psi.spectrum, operator_from_json(load_json_file(t0_file))});
        std::ofstream out(output);
        if (!out) throw Error("cannot write " + output);
        out << "t,p\n" << std::setprecision(17);
        for (int i = 0; i < points; ++i) {
          const double t = t_min + (t_max - t_min) * i / std::max(points - 1, 1);
          out << t << "," << pom_density(pom_obs, psi, t) << "\n";
        }
      } else if (pom_lim->parsed()) {
        const StateVector psi = state_from_json(load_json_file(state_file));
        const auto& s = *psi.spectrum;
        double min_gap = 1e300;
        for (int j = 1; j < s.level_count(); ++j) {
          for (int k = 0; k < j; ++k) min_gap = std::min(min_gap, s.energy(j) - s.energy(k));
        }
        const double X = horizon > 0.0 ? horizon : 1e4 / min_gap;
        PomLimit limit(psi.spectrum, X);
        Json j;
        j["schema"] = kSchemaVersion;
        j["horizon"] = X;
        j["normalisation"] = operator_to_json(limit.normalisation());
        j["null_projector"] = operator_to_json(limit.null_projector());
        if (!observable_file.empty()) {
          const APFunction f = apfunction_from_json(load_json_file(observable_file));
          j["finite_expectation"] = limit.expectation(f, psi);
          j["besicovitch_expectation"] =
              besicovitch_mean(multiply(canonical_density(psi).fn, f)).real();
        }
        emit(j, output);
      } else if (pom_gal->parsed()) {
        const StateVector psi = state_from_json(load_json_file(state_file));
        std::vector<double> taus(std::max(points, 2));
        for (std::size_t i = 0; i < taus.size(); ++i) {
          taus[i] = tau_max * double(i) / (taus.size() - 1);
        }
        Rng rng(seed);
        const GalaponReport rep = galapon_diagnostic(psi, taus, rng);
        Json j;
        j["schema"] = kSchemaVersion;
        j["hermiticity_error"] = rep.hermiticity_error;
        j["covariance_deviation"] = rep.covariance_deviation;
        j["commutator_diagonal_max"] = rep.commutator_diagonal_max;
        j["subspace_residual"] = rep.subspace_residual;
        j["empirical_sign"] = rep.empirical_sign;
        j["eigenstate_column_norm"] = rep.eigenstate_column_norm;
        emit(j, output);
      }
    } else if (sc->parsed()) {
      const SpectrumExpansion ex = expand_powerlaw(powerlaw_k, n_bar);
      const SemiclassicalProfile profile = SemiclassicalProfile::gaussian(ex, sigma);
      std::vector<double> ts(points), values(points);
      const double horizon_t = (t_max > 0.0 ? t_max : 1.0) * ex.revival_time;
      for (int i = 0; i < points; ++i) {
        ts[i] = horizon_t * i / std::max(points - 1, 1);
        values[i] = autocorr ? std::abs(autocorrelation_semiclassical(profile, ts[i]))
                             : std::norm(semiclassical_theta(profile, ts[i]));
      }
      write_trace_csv(output, autocorr ? "abs_A" : "theta_sq", ts, values);
    } else if (sn->parsed()) {
      ScenarioParams params;
      params.u_list = u_list;
      params.energy_list = energy_list;
      params.omega1 = omega;
      if (sn->count("--omega2")) params.omega2 = omega2;
      params.seed = seed;
      if (random_dim > 0) params.random_states = random_dim;
      params.output_dir = out_dir;
      const ScenarioResult result = run_scenario(scenario_name, params);
      std::cout << scenario_to_json(result).dump(2) << std::endl;
      return result.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
