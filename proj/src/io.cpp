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

#include "apclock/io.hpp"

#include <fstream>
#include <iomanip>

#include "apclock/errors.hpp"

namespace apclock {

Json spectrum_to_json(const Spectrum& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["hbar"] = s.hbar();
  j["mode"] = s.module()->mode() == FrequencyModule::Mode::Exact ? "exact" : "float";
  j["label"] = s.label();
  j["basis"] = s.module()->basis();
  Json levels = Json::array();
  for (int i = 0; i < s.level_count(); ++i) {
    levels.push_back({{"energy", s.energy(i)}, {"degeneracy", s.degeneracy(i)}});
  }
  j["levels"] = levels;
  return j;
}

namespace {

// Exact reconstruction against a declared basis: find a small integer (or
// bounded-denominator rational) combination matching each energy.
std::shared_ptr<const Spectrum> spectrum_from_declared_basis(const std::vector<double>& basis,
                                                             const std::vector<double>& energies,
                                                             const std::vector<int>& degeneracies) {
  if (basis.size() == 1) {
    std::vector<Rational> rationals;
    for (const double e : energies) {
      bool found = false;
      for (std::int64_t q = 1; q <= 4096 && !found; ++q) {
        const double scaled = e / basis[0] * static_cast<double>(q);
        const std::int64_t p = std::llround(scaled);
        if (std::abs(scaled - static_cast<double>(p)) < 1e-9 * std::max(1.0, std::abs(scaled))) {
          rationals.push_back(Rational(p, q));
          found = true;
        }
      }
      if (!found) throw Error("energy is not a small rational multiple of the declared unit");
    }
    return Spectrum::from_rationals(rationals, degeneracies, basis[0]);
  }
  if (basis.size() == 2) {
    std::vector<FreqVec> coeffs;
    for (const double e : energies) {
      bool found = false;
      for (std::int64_t m = -256; m <= 256 && !found; ++m) {
        const double rest = e - static_cast<double>(m) * basis[0];
        const double q = rest / basis[1];
        const std::int64_t n = std::llround(q);
        if (std::abs(q - static_cast<double>(n)) < 1e-9) {
          coeffs.push_back({m, n});
          found = true;
        }
      }
      if (!found) throw Error("energy is not an integer combination of the declared basis");
    }
    return Spectrum::from_lattice(basis, coeffs, degeneracies);
  }
  throw Error("exact spectra with declared basis support rank <= 2 in files");
}

}  // namespace

std::shared_ptr<const Spectrum> spectrum_from_json(const Json& j) {
  const double hbar = j.value("hbar", 1.0);
  const std::string mode = j.value("mode", "float");
  std::vector<double> energies;
  std::vector<Rational> rationals;
  std::vector<int> degeneracies;
  bool all_rational = true;
  for (const auto& level : j.at("levels")) {
    degeneracies.push_back(level.value("degeneracy", 1));
    const auto& e = level.at("energy");
    if (e.is_string()) {
      rationals.push_back(Rational::parse(e.get<std::string>()));
      energies.push_back(rationals.back().to_double());
    } else {
      all_rational = false;
      energies.push_back(e.get<double>());
    }
  }
  for (auto& e : energies) e /= hbar;

  if (mode == "exact") {
    if (all_rational && !rationals.empty()) {
      const double unit = j.contains("basis") ? j["basis"].at(0).get<double>() : 1.0;
      return Spectrum::from_rationals(rationals, degeneracies, unit / hbar);
    }
    if (j.contains("basis")) {
      std::vector<double> basis = j["basis"].get<std::vector<double>>();
      for (auto& b : basis) b /= hbar;
      return spectrum_from_declared_basis(basis, energies, degeneracies);
    }
    throw Error("exact mode needs rational energies or a declared basis");
  }
  const double eps = j.value("eps_freq", 1e-9);
  return Spectrum::from_values(energies, degeneracies, eps);
}

Json state_to_json(const StateVector& psi) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["spectrum"] = spectrum_to_json(*psi.spectrum);
  Json amps = Json::array();
  for (int level = 0; level < psi.spectrum->level_count(); ++level) {
    for (int d = 0; d < psi.spectrum->degeneracy(level); ++d) {
      const Complex c = psi.amplitude(level, d);
      if (std::abs(c) == 0.0) continue;
      amps.push_back({{"level", level}, {"d", d}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  j["amplitudes"] = amps;
  return j;
}

StateVector state_from_json(const Json& j) {
  std::shared_ptr<const Spectrum> spectrum;
  const auto& spec_field = j.at("spectrum");
  if (spec_field.is_string()) {
    spectrum = spectrum_from_json(load_json_file(spec_field.get<std::string>()));
  } else {
    spectrum = spectrum_from_json(spec_field);
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(spectrum->dimension());
  for (const auto& a : j.at("amplitudes")) {
    const int level = a.at("level").get<int>();
    const int d = a.value("d", 0);
    if (level < 0 || level >= spectrum->level_count() || d < 0 || d >= spectrum->degeneracy(level)) {
      throw Error("amplitude index out of range");
    }
    amp(spectrum->offset(level) + d) = Complex(a.value("re", 0.0), a.value("im", 0.0));
  }
  return make_state(std::move(spectrum), std::move(amp));
}

Json apfunction_to_json(const APFunction& f) {
  Json j;
  j["schema"] = kSchemaVersion;
  const auto& m = *f.module();
  j["module"] = {{"basis", m.basis()},
                 {"denominator", m.denominator()},
                 {"mode", m.mode() == FrequencyModule::Mode::Exact ? "exact" : "float"}};
  Json terms = Json::array();
  for (const auto& [freq, coeff] : f.terms()) {
    terms.push_back({{"coeffs", freq},
                     {"freq", m.value_of(freq)},
                     {"re", coeff.real()},
                     {"im", coeff.imag()}});
  }
  j["terms"] = terms;
  return j;
}

APFunction apfunction_from_json(const Json& j) {
  const auto& m = j.at("module");
  const std::vector<double> basis = m.at("basis").get<std::vector<double>>();
  const std::int64_t den = m.value("denominator", std::int64_t{1});
  const bool exact = m.value("mode", "exact") == std::string("exact");
  auto module = exact ? FrequencyModule::exact(basis, den)
                      : FrequencyModule::with_tolerance(basis, den, 1e-9);
  APFunction f(module);
  for (const auto& term : j.at("terms")) {
    FreqVec freq = term.at("coeffs").get<FreqVec>();
    if (freq.size() != basis.size()) throw Error("term coefficient rank mismatch");
    f.add_term(freq, Complex(term.value("re", 0.0), term.value("im", 0.0)));
  }
  return f;
}

Json operator_to_json(const Eigen::MatrixXcd& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return Json{{"schema", kSchemaVersion}, {"dim", m.rows()}, {"entries", entries}};
}

Eigen::MatrixXcd operator_from_json(const Json& j) {
  const Eigen::Index n = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != n * n) {
    throw Error("operator entry count does not match dim^2");
  }
  Eigen::MatrixXcd m(n, n);
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c, ++idx) {
      m(r, c) = Complex(entries[idx][0].get<double>(), entries[idx][1].get<double>());
    }
  }
  return m;
}

Json report_to_json(const ResolutionReport& report) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["purity"] = report.purity;
  j["entropy_nats"] = report.entropy;
  j["entropy_bits"] = report.entropy_bits();
  j["entropy_error"] = report.entropy_error;
  j["entropy_backend"] = backend_name(report.entropy_backend);
  j["information_nats"] = report.information;
  j["energy_entropy_nats"] = report.energy_entropy;
  j["eur_slack_nats"] = report.eur_slack;
  if (report.exact_ur_residual) {
    j["exact_ur_residual"] = *report.exact_ur_residual;
  }
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw Error("write failed for " + path);
}

void write_density_csv(const std::string& path, const APDensity& density, double t_min,
                       double t_max, int points) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "t,p\n" << std::setprecision(17);
  const double dt = points > 1 ? (t_max - t_min) / (points - 1) : 0.0;
  std::vector<Complex> values(points);
  evaluate_grid(density.fn, t_min, dt, values);
  for (int i = 0; i < points; ++i) {
    out << (t_min + i * dt) << "," << values[i].real() << "\n";
  }
  if (!out) throw Error("write failed for " + path);
}

void write_trace_csv(const std::string& path, const std::string& value_name,
                     std::span<const double> ts, std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "t," << value_name << "\n" << std::setprecision(17);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << ts[i] << "," << values[i] << "\n";
  }
  if (!out) throw Error("write failed for " + path);
}

}  // namespace apclock
