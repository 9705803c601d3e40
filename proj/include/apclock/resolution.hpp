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

#include <optional>
#include <string>

#include "apclock/apfun.hpp"
#include "apclock/state.hpp"

namespace apclock {

enum class EntropyBackend { Auto, TimeAverage, Torus, ExactPeriodic, Factorized };

std::string backend_name(EntropyBackend b);

struct EntropyOptions {
  // torus / exact-periodic grids: base order per dimension by rank, scaled up
  // with the largest integer harmonic to avoid aliasing, within hard caps.
  int order_rank1 = 2048;
  int order_rank2 = 512;
  int order_rank3 = 128;
  int harmonic_oversampling = 16;
  int max_order_rank1 = 1 << 21;
  int max_order_rank23 = 1 << 12;
  // time-average ladder: X_k = X_0 * 2^k with X_0 = base_periods slow beats
  double ladder_base_periods = 64.0;
  int ladder_max_k = 12;
  // ladder stops early once the spread of the last three rungs falls below
  // target; 0 disables the NonConvergent check
  double convergence_target = 0.0;
  std::size_t max_points_per_rung = 1u << 21;
  double clamp = 1e-300;
  double eps_pos = 1e-9;
};

struct EntropyResult {
  double value = 0.0;     // nats
  double error = 0.0;
  EntropyBackend backend = EntropyBackend::Auto;
};

/// mu_ap[p^2] as the exact Parseval sum over density coefficients; >= 1 with
/// equality only for the uniform density.
double purity(const APDensity& p);

/// 2 - sum_j p_j^2: valid only without shared resonances.
double typical_purity_formula(const StateVector& psi);

/// |purity + sum_j p_j^2 - 2| for no-shared-resonance spectra.
double exact_ur_residual(const StateVector& psi);

/// mu_ap[-p log p] in nats with an error estimate. Backend Auto picks
/// exact-periodic (rank 1), factorized (detected product densities),
/// torus (rank <= 3), then the time-average ladder.
EntropyResult entropy(const APDensity& p, EntropyBackend backend = EntropyBackend::Auto,
                      const EntropyOptions& options = {});

/// S(H) = -sum_j p_j log p_j over level probabilities.
double energy_entropy(const StateVector& psi);

struct ResolutionReport {
  double purity = 1.0;
  double entropy = 0.0;
  double entropy_error = 0.0;
  EntropyBackend entropy_backend = EntropyBackend::Auto;
  double information = 0.0;      // -entropy
  double energy_entropy = 0.0;   // S(H)
  double eur_slack = 0.0;        // S(H) + S_ap
  std::optional<double> exact_ur_residual;  // present without shared resonances

  double entropy_bits() const { return entropy / M_LN2; }
};

ResolutionReport resolve(const StateVector& psi, EntropyBackend backend = EntropyBackend::Auto,
                         const EntropyOptions& options = {});

/// S(H) + S_ap; nonnegative up to the entropy error.
double verify_eur(const StateVector& psi, EntropyBackend backend = EntropyBackend::Auto,
                  const EntropyOptions& options = {});

/// S_ap >= -log(purity) within the entropy error.
bool entropy_purity_bound(const ResolutionReport& report);

/// Splits a density p = p1 * p2 across disjoint basis-coordinate groups when
/// the coefficients verify the product structure; used by the factorized
/// backend and exposed for tests.
std::optional<std::pair<APDensity, APDensity>> try_factorize(const APDensity& p, double tol = 1e-12);

}  // namespace apclock
