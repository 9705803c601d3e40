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

#include <Eigen/Dense>
#include <memory>
#include <span>

#include "apclock/apfun.hpp"
#include "apclock/rng.hpp"
#include "apclock/spectrum.hpp"

namespace apclock {

/// Normalised amplitudes c_{j,d} over (level, degeneracy index) pairs,
/// flattened level-major: entry spectrum->offset(j) + d.
struct StateVector {
  std::shared_ptr<const Spectrum> spectrum;
  Eigen::VectorXcd amplitudes;

  Complex amplitude(int level, int d = 0) const {
    return amplitudes(spectrum->offset(level) + d);
  }
  double norm() const { return amplitudes.norm(); }
  /// Level probability p_j = sum_d |c_{j,d}|^2.
  double level_probability(int level) const;
};

StateVector make_state(std::shared_ptr<const Spectrum> spectrum, Eigen::VectorXcd amplitudes);
StateVector eigenstate(std::shared_ptr<const Spectrum> spectrum, int level, int d = 0);
StateVector random_state(std::shared_ptr<const Spectrum> spectrum, Rng& rng);

/// Coherent phase state sqrt(1-u^2) sum_j u^j |E_j> on its own harmonic
/// spectrum, truncated at tail probability < tail and renormalised.
StateVector coherent_phase_state(double u, double omega = 1.0, double tail = 1e-12);
int coherent_truncation(double u, double tail);

/// |u> (x) |v> on a two-mode lattice spectrum carrying mode labels.
StateVector product_coherent_state(std::shared_ptr<const Spectrum> spectrum, double u, double v);

/// |u> (x) |u> on an isotropic two-mode spectrum (level n has degeneracy n+1,
/// amplitude (1-u^2) u^n at every degeneracy slot).
StateVector isotropic_product_state(std::shared_ptr<const Spectrum> spectrum, double u);

StateVector evolve(const StateVector& psi, double tau);

/// theta_d(t) = sum_{j : degeneracy_j > d} c_{j,d} e^{i E_j t / hbar}.
struct TimeRepresentation {
  std::vector<APFunction> theta;  // one per degeneracy slot d
};
TimeRepresentation time_representation(const StateVector& psi);

/// p(t|psi) = sum_d |theta_d(t)|^2 as an exact trigonometric polynomial.
APDensity canonical_density(const StateVector& psi);

/// A(tau) = sum_j p_j e^{i E_j tau / hbar}.
APFunction autocorrelation(const StateVector& psi);

/// max_t |p(t | evolve(psi, tau)) - p(t - tau | psi)| over the grid.
double covariance_check(const StateVector& psi, double tau, std::span<const double> grid);

}  // namespace apclock
