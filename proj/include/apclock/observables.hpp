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
#include <vector>

#include "apclock/apfun.hpp"
#include "apclock/rng.hpp"
#include "apclock/state.hpp"

namespace apclock {

/// Complex matrix in the (level, degeneracy) energy basis of a spectrum.
struct OperatorMatrix {
  std::shared_ptr<const Spectrum> spectrum;
  Eigen::MatrixXcd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  double hermiticity_error() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  }
};

/// A covariant time observable: T_t = e^{-iHt} T0 e^{iHt} with T0 >= 0 and
/// unit diagonal blocks (gamma = 1 for the almost-periodic measure).
struct TimePOM {
  OperatorMatrix t0;
  double gamma = 1.0;
};

/// Checks positivity and the diagonal-block constraint
/// <E,d|T0|E,d'> = gamma^{-1} delta_{dd'}.
TimePOM validate_t0(const OperatorMatrix& t0, double gamma = 1.0);

/// Canonical choice: entry 1 between (E,d) and (E',d) for every shared
/// degeneracy slot d, 0 between different slots.
TimePOM canonical_t0(std::shared_ptr<const Spectrum> spectrum);

/// p(t|psi) = <psi| T_t |psi>.
double pom_density(const TimePOM& pom, const StateVector& psi, double t);
/// p(t|rho) = tr[rho T_t] for a density matrix in the energy basis.
double pom_density(const TimePOM& pom, const Eigen::MatrixXcd& rho, double t);

/// Kraus operators A_m = gamma^{1/2} diag(<m|E,d>) from the eigendecomposition
/// T0 = sum_m |m><m|; sum A_m^dagger A_m = 1.
std::vector<Eigen::MatrixXcd> kraus_decompose(const TimePOM& pom);

/// phi(rho) = sum_m A_m rho A_m^dagger.
Eigen::MatrixXcd channel_apply(std::span<const Eigen::MatrixXcd> kraus,
                               const Eigen::MatrixXcd& rho);

/// Random T0 with exactly unit diagonal (positive by construction); exercises
/// the noise-equivalence theorem on nondegenerate spectra.
OperatorMatrix random_valid_t0(std::shared_ptr<const Spectrum> spectrum, Rng& rng);

/// Finite-horizon construction: N(X) = (1/X) int_0^X |t><t| dt with
/// closed-form entries, the null projector P0 (eigenvalues below eps_null),
/// and the POM density M_t(X) = N^{-1/2} |t><t| N^{-1/2} under the normalised
/// measure dt/X on [0, X].
class PomLimit {
 public:
  PomLimit(std::shared_ptr<const Spectrum> spectrum, double X, double eps_null = 1e-10);

  const Eigen::MatrixXcd& normalisation() const { return n_; }
  const Eigen::MatrixXcd& null_projector() const { return p0_; }
  double horizon() const { return x_; }

  Eigen::MatrixXcd m_t(double t) const;

  /// <f>_X = (1/X) int_0^X f(t) |<t|N^{-1/2}|psi>|^2 dt + <psi|P0|psi>,
  /// computed in closed form for almost-periodic f.
  double expectation(const APFunction& f, const StateVector& psi) const;

  /// max-norm quadrature residual of (1/X) int_0^X M_t dt + P0 - 1.
  double completeness_residual(int quadrature_points = 4096) const;

 private:
  Eigen::VectorXcd time_ket(double t) const;

  std::shared_ptr<const Spectrum> spectrum_;
  double x_;
  Eigen::MatrixXcd n_;
  Eigen::MatrixXcd inv_sqrt_;
  Eigen::MatrixXcd p0_;
};

struct GalaponReport {
  Eigen::MatrixXcd g;
  double hermiticity_error = 0.0;
  /// max_tau |<G>_tau - <G>_0 - tau| over the grid.
  double covariance_deviation = 0.0;
  /// max_k |<E_k|[H,G]|E_k>| (identically zero in exact arithmetic).
  double commutator_diagonal_max = 0.0;
  /// min_k ||[H,G]|E_k>||: nonzero for every eigenstate, refuting canonical
  /// commutation on any set containing eigenstates.
  double eigenstate_column_norm = 0.0;
  /// best residual ||[H,G]|phi> - sign * i |phi>|| over random sum(c)=0 states
  double subspace_residual = 0.0;
  int empirical_sign = 0;  // sign realised on the sum(c)=0 subspace
};

/// Diagnostic for the inverse-difference "time operator"
/// G = i hbar sum_{j != k} (E_j - E_k)^{-1} |E_j><E_k|.
GalaponReport galapon_diagnostic(const StateVector& psi, std::span<const double> tau_grid,
                                 Rng& rng, int subspace_trials = 8);

}  // namespace apclock
