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

#include "apclock/observables.hpp"

#include <cmath>

#include "apclock/errors.hpp"

namespace apclock {

namespace {

// Flattened energy of slot i (level energy repeated over degeneracy slots).
Eigen::VectorXd slot_energies(const Spectrum& s) {
  Eigen::VectorXd e(s.dimension());
  for (int j = 0; j < s.level_count(); ++j) {
    for (int d = 0; d < s.degeneracy(j); ++d) e(s.offset(j) + d) = s.energy(j);
  }
  return e;
}

Eigen::VectorXcd evolution_phases(const Spectrum& s, double t) {
  const Eigen::VectorXd e = slot_energies(s);
  Eigen::VectorXcd u(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) u(i) = std::polar(1.0, e(i) * t / s.hbar());
  return u;
}

}  // namespace

TimePOM validate_t0(const OperatorMatrix& t0, double gamma) {
  const auto& s = *t0.spectrum;
  if (t0.dim() != s.dimension()) {
    throw Error("T0 dimension does not match the spectrum");
  }
  const double herm = t0.hermiticity_error();
  if (herm > 1e-12) {
    throw NotPositive("T0 is not Hermitian (max asymmetry " + std::to_string(herm) + ")");
  }
  // diagonal blocks: <E,d|T0|E,d'> = gamma^{-1} delta_{dd'}
  const double target = 1.0 / gamma;
  for (int j = 0; j < s.level_count(); ++j) {
    const int off = s.offset(j);
    for (int d = 0; d < s.degeneracy(j); ++d) {
      for (int dp = 0; dp < s.degeneracy(j); ++dp) {
        const Complex v = t0.entries(off + d, off + dp);
        const Complex want = d == dp ? Complex(target) : Complex(0.0);
        if (std::abs(v - want) > 1e-10) {
          throw DiagonalViolation("block entry (" + std::to_string(off + d) + "," +
                                  std::to_string(off + dp) + ") = " + std::to_string(v.real()) +
                                  " violates the diagonal constraint");
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t0.entries);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw NotPositive("T0 has eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
  return TimePOM{t0, gamma};
}

TimePOM canonical_t0(std::shared_ptr<const Spectrum> spectrum) {
  const auto& s = *spectrum;
  Eigen::MatrixXcd t0 = Eigen::MatrixXcd::Zero(s.dimension(), s.dimension());
  for (int j = 0; j < s.level_count(); ++j) {
    for (int k = 0; k < s.level_count(); ++k) {
      const int shared = std::min(s.degeneracy(j), s.degeneracy(k));
      for (int d = 0; d < shared; ++d) {
        t0(s.offset(j) + d, s.offset(k) + d) = 1.0;
      }
    }
  }
  return TimePOM{OperatorMatrix{std::move(spectrum), std::move(t0)}, 1.0};
}

double pom_density(const TimePOM& pom, const StateVector& psi, double t) {
  const Eigen::VectorXcd u = evolution_phases(*pom.t0.spectrum, t);
  const Eigen::VectorXcd w = u.cwiseProduct(psi.amplitudes);  // e^{iHt} |psi>
  const Complex val = w.dot(pom.t0.entries * w);              // dot() conjugates the left side
  return val.real();
}

double pom_density(const TimePOM& pom, const Eigen::MatrixXcd& rho, double t) {
  const Eigen::VectorXcd u = evolution_phases(*pom.t0.spectrum, t);
  // tr[rho U T0 U^dagger] with U = e^{-iHt} diagonal
  const Eigen::MatrixXcd ut = u.conjugate().asDiagonal() * pom.t0.entries * u.asDiagonal();
  return (rho * ut).trace().real();
}

std::vector<Eigen::MatrixXcd> kraus_decompose(const TimePOM& pom) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pom.t0.entries);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw NotPositive("T0 has a negative eigenvalue");
  }
  const int n = pom.t0.dim();
  std::vector<Eigen::MatrixXcd> kraus;
  for (int m = 0; m < n; ++m) {
    const double lambda = es.eigenvalues()(m);
    if (lambda <= 1e-12) continue;
    // |m> = sqrt(lambda) |v_m>; A_m = gamma^{1/2} diag(<m|E,d>)
    const Eigen::VectorXcd ket = std::sqrt(lambda) * es.eigenvectors().col(m);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = std::sqrt(pom.gamma) * std::conj(ket(i));
    kraus.push_back(std::move(a));
  }
  return kraus;
}

Eigen::MatrixXcd channel_apply(std::span<const Eigen::MatrixXcd> kraus,
                               const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& a : kraus) out += a * rho * a.adjoint();
  return out;
}

OperatorMatrix random_valid_t0(std::shared_ptr<const Spectrum> spectrum, Rng& rng) {
  const int n = spectrum->dimension();
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
  }
  Eigen::MatrixXcd t = a * a.adjoint();
  Eigen::VectorXd d = t.diagonal().real();
  for (int i = 0; i < n; ++i) d(i) = 1.0 / std::sqrt(d(i));
  t = d.asDiagonal() * t * d.asDiagonal();
  t.diagonal().setOnes();  // pin the constraint exactly
  return OperatorMatrix{std::move(spectrum), std::move(t)};
}

PomLimit::PomLimit(std::shared_ptr<const Spectrum> spectrum, double X, double eps_null)
    : spectrum_(std::move(spectrum)), x_(X) {
  if (X <= 0.0) throw Error("PomLimit needs X > 0");
  const auto& s = *spectrum_;
  if (s.max_degeneracy() > 1) throw Error("PomLimit needs a nondegenerate spectrum");
  const int n = s.dimension();
  n_ = Eigen::MatrixXcd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const double d = (s.energy(k) - s.energy(j)) / s.hbar();
      const Complex idx(0.0, d * X);
      n_(j, k) = (std::exp(idx) - 1.0) / idx;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(n_);
  Eigen::VectorXd inv_sqrt_vals(n);
  Eigen::VectorXd null_vals(n);
  for (int i = 0; i < n; ++i) {
    const double lambda = es.eigenvalues()(i);
    const bool null = lambda < eps_null;
    inv_sqrt_vals(i) = null ? 0.0 : 1.0 / std::sqrt(lambda);
    null_vals(i) = null ? 1.0 : 0.0;
  }
  inv_sqrt_ = es.eigenvectors() * inv_sqrt_vals.asDiagonal() * es.eigenvectors().adjoint();
  p0_ = es.eigenvectors() * null_vals.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd PomLimit::time_ket(double t) const {
  const auto& s = *spectrum_;
  Eigen::VectorXcd ket(s.dimension());
  for (int j = 0; j < s.dimension(); ++j) ket(j) = std::polar(1.0, -s.energy(j) * t / s.hbar());
  return ket;
}

Eigen::MatrixXcd PomLimit::m_t(double t) const {
  const Eigen::VectorXcd ket = inv_sqrt_ * time_ket(t);
  return ket * ket.adjoint();
}

double PomLimit::expectation(const APFunction& f, const StateVector& psi) const {
  if (psi.spectrum != spectrum_) throw ModuleMismatch("state lives on a different spectrum");
  const auto& s = *spectrum_;
  const Eigen::VectorXcd phi = inv_sqrt_ * psi.amplitudes;
  // |<t|phi>|^2 is a trigonometric polynomial over the spectrum's module
  APFunction density(s.module());
  for (int j = 0; j < s.level_count(); ++j) {
    for (int k = 0; k < s.level_count(); ++k) {
      density.add_term(freq_sub(s.energy_rep(k), s.energy_rep(j)),
                       std::conj(phi(j)) * phi(k));
    }
  }
  const Complex avg = finite_time_average(multiply(density, f), x_);
  const Complex null_part = psi.amplitudes.dot(p0_ * psi.amplitudes);
  return avg.real() + null_part.real();
}

double PomLimit::completeness_residual(int quadrature_points) const {
  const int n = spectrum_->dimension();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  const double h = x_ / quadrature_points;
  for (int q = 0; q < quadrature_points; ++q) {
    acc += m_t((q + 0.5) * h);
  }
  acc *= h / x_;
  acc += p0_;
  return (acc - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

GalaponReport galapon_diagnostic(const StateVector& psi, std::span<const double> tau_grid,
                                 Rng& rng, int subspace_trials) {
  const auto& s = *psi.spectrum;
  if (s.max_degeneracy() > 1) throw Error("Galapon operator needs a nondegenerate spectrum");
  const int n = s.dimension();
  if (n < 2) throw Error("Galapon operator needs dimension >= 2");

  GalaponReport report;
  report.g = Eigen::MatrixXcd::Zero(n, n);
  const double hbar = s.hbar();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j != k) report.g(j, k) = Complex(0.0, hbar) / (s.energy(j) - s.energy(k));
    }
  }
  report.hermiticity_error = (report.g - report.g.adjoint()).cwiseAbs().maxCoeff();

  const auto expectation = [&](double tau) {
    Eigen::VectorXcd amp = psi.amplitudes;
    for (int j = 0; j < n; ++j) amp(j) *= std::polar(1.0, -s.energy(j) * tau / hbar);
    return amp.dot(report.g * amp).real();
  };
  const double g0 = expectation(0.0);
  for (const double tau : tau_grid) {
    report.covariance_deviation =
        std::max(report.covariance_deviation, std::abs(expectation(tau) - g0 - tau));
  }

  // [H, G] in the energy basis: (E_j - E_k) G_jk = i hbar off the diagonal
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) h(j, j) = s.energy(j);
  const Eigen::MatrixXcd comm = h * report.g - report.g * h;
  report.commutator_diagonal_max = comm.diagonal().cwiseAbs().maxCoeff();
  report.eigenstate_column_norm = comm.col(0).norm();
  for (int k = 1; k < n; ++k) {
    report.eigenstate_column_norm = std::min(report.eigenstate_column_norm, comm.col(k).norm());
  }

  // commutation on the sum(c_j) = 0 subspace, sign resolved empirically
  double best_minus = 0.0, best_plus = 0.0;
  for (int trial = 0; trial < subspace_trials; ++trial) {
    Eigen::VectorXcd phi(n);
    for (int j = 0; j < n; ++j) phi(j) = rng.complex_normal();
    phi.array() -= phi.mean();
    phi /= phi.norm();
    const Eigen::VectorXcd lhs = comm * phi;
    best_minus = std::max(best_minus, (lhs + Complex(0.0, hbar) * phi).norm());
    best_plus = std::max(best_plus, (lhs - Complex(0.0, hbar) * phi).norm());
  }
  if (best_minus <= best_plus) {
    report.subspace_residual = best_minus;
    report.empirical_sign = -1;
  } else {
    report.subspace_residual = best_plus;
    report.empirical_sign = +1;
  }
  return report;
}

}  // namespace apclock
