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

#include "apclock/state.hpp"

#include <cmath>

#include "apclock/errors.hpp"

namespace apclock {

double StateVector::level_probability(int level) const {
  const int off = spectrum->offset(level);
  double acc = 0.0;
  for (int d = 0; d < spectrum->degeneracy(level); ++d) acc += std::norm(amplitudes(off + d));
  return acc;
}

StateVector make_state(std::shared_ptr<const Spectrum> spectrum, Eigen::VectorXcd amplitudes) {
  if (amplitudes.size() != spectrum->dimension()) {
    throw Error("amplitude count does not match spectrum dimension");
  }
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > 1e-12) {
    if (n <= 0.0) throw Error("state has zero norm");
    amplitudes /= n;
  }
  return StateVector{std::move(spectrum), std::move(amplitudes)};
}

StateVector eigenstate(std::shared_ptr<const Spectrum> spectrum, int level, int d) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(spectrum->dimension());
  amp(spectrum->offset(level) + d) = 1.0;
  return StateVector{std::move(spectrum), std::move(amp)};
}

StateVector random_state(std::shared_ptr<const Spectrum> spectrum, Rng& rng) {
  Eigen::VectorXcd amp(spectrum->dimension());
  for (Eigen::Index i = 0; i < amp.size(); ++i) amp(i) = rng.complex_normal();
  amp /= amp.norm();
  return StateVector{std::move(spectrum), std::move(amp)};
}

int coherent_truncation(double u, double tail) {
  if (u <= 0.0) return 1;
  // tail probability after N levels is u^{2N}
  const int n = static_cast<int>(std::ceil(std::log(tail) / (2.0 * std::log(u)))) + 1;
  return std::max(n, 2);
}

StateVector coherent_phase_state(double u, double omega, double tail) {
  if (u < 0.0 || u >= 1.0) throw Error("coherent phase state needs 0 <= u < 1");
  const int levels = coherent_truncation(u, tail);
  auto spectrum = harmonic_spectrum(omega, levels - 1);
  Eigen::VectorXcd amp(levels);
  for (int j = 0; j < levels; ++j) amp(j) = std::pow(u, j);
  amp /= amp.norm();
  return StateVector{std::move(spectrum), std::move(amp)};
}

StateVector product_coherent_state(std::shared_ptr<const Spectrum> spectrum, double u, double v) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(spectrum->dimension());
  for (int j = 0; j < spectrum->level_count(); ++j) {
    const auto label = spectrum->mode_label(j);
    if (!label) throw Error("spectrum carries no two-mode labels");
    amp(spectrum->offset(j)) = std::pow(u, (*label)[0]) * std::pow(v, (*label)[1]);
  }
  amp /= amp.norm();
  return StateVector{std::move(spectrum), std::move(amp)};
}

StateVector isotropic_product_state(std::shared_ptr<const Spectrum> spectrum, double u) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(spectrum->dimension());
  for (int j = 0; j < spectrum->level_count(); ++j) {
    // level n = j carries amplitude u^n at every slot |d> (x) |n - d>
    for (int d = 0; d < spectrum->degeneracy(j); ++d) {
      amp(spectrum->offset(j) + d) = std::pow(u, j);
    }
  }
  amp /= amp.norm();
  return StateVector{std::move(spectrum), std::move(amp)};
}

StateVector evolve(const StateVector& psi, double tau) {
  const auto& s = *psi.spectrum;
  Eigen::VectorXcd amp = psi.amplitudes;
  for (int j = 0; j < s.level_count(); ++j) {
    const Complex phase = std::polar(1.0, -s.energy(j) * tau / s.hbar());
    for (int d = 0; d < s.degeneracy(j); ++d) amp(s.offset(j) + d) *= phase;
  }
  return StateVector{psi.spectrum, std::move(amp)};
}

TimeRepresentation time_representation(const StateVector& psi) {
  const auto& s = *psi.spectrum;
  TimeRepresentation rep;
  rep.theta.reserve(s.max_degeneracy());
  for (int d = 0; d < s.max_degeneracy(); ++d) {
    APFunction theta(s.module());
    for (int j = 0; j < s.level_count(); ++j) {
      if (d >= s.degeneracy(j)) continue;
      theta.add_term(s.energy_rep(j), psi.amplitudes(s.offset(j) + d));
    }
    rep.theta.push_back(std::move(theta));
  }
  return rep;
}

APDensity canonical_density(const StateVector& psi) {
  const auto rep = time_representation(psi);
  APFunction p(psi.spectrum->module());
  for (const auto& theta : rep.theta) {
    p = add(p, multiply(conjugate(theta), theta));
  }
  return make_density(std::move(p));
}

APFunction autocorrelation(const StateVector& psi) {
  const auto& s = *psi.spectrum;
  APFunction a(s.module());
  for (int j = 0; j < s.level_count(); ++j) {
    a.add_term(s.energy_rep(j), psi.level_probability(j));
  }
  return a;
}

double covariance_check(const StateVector& psi, double tau, std::span<const double> grid) {
  const APDensity moved = canonical_density(evolve(psi, tau));
  const APDensity original = canonical_density(psi);
  double worst = 0.0;
  for (const double t : grid) {
    worst = std::max(worst, std::abs(moved.evaluate(t) - original.evaluate(t - tau)));
  }
  return worst;
}

}  // namespace apclock
