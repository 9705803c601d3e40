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

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "apclock/freq_module.hpp"

namespace apclock {

using Complex = std::complex<double>;

/// Coefficients below this magnitude are dropped after every operation.
inline constexpr double kCoeffPrune = 1e-15;

/// A finite trigonometric polynomial sum_j a_j e^{i w_j t} with frequencies
/// keyed exactly through a FrequencyModule. Immutable in spirit: operations
/// return new values.
class APFunction {
 public:
  explicit APFunction(std::shared_ptr<const FrequencyModule> module)
      : module_(std::move(module)) {}

  static APFunction constant(std::shared_ptr<const FrequencyModule> module, Complex value);

  /// Accumulates a term; prunes if the resulting coefficient is negligible.
  void add_term(const FreqVec& freq, Complex coeff);

  const std::map<FreqVec, Complex, FreqVecLess>& terms() const { return terms_; }
  const std::shared_ptr<const FrequencyModule>& module() const { return module_; }
  std::size_t term_count() const { return terms_.size(); }
  Complex coefficient(const FreqVec& freq) const;

  /// True when coefficients are conjugate-symmetric (a_{-w} = conj(a_w)),
  /// i.e. the function is real-valued.
  bool is_real(double tol = 1e-12) const;

 private:
  std::shared_ptr<const FrequencyModule> module_;
  std::map<FreqVec, Complex, FreqVecLess> terms_;
};

APFunction add(const APFunction& f, const APFunction& g);
APFunction scale(const APFunction& f, Complex c);
APFunction conjugate(const APFunction& f);
/// Frequency-convolution product; throws TermBudgetExceeded past the cap.
APFunction multiply(const APFunction& f, const APFunction& g, std::size_t term_budget = 1000000);

Complex evaluate(const APFunction& f, double t);
/// Evaluates on the uniform grid t0 + i*dt via per-term phase recurrence.
void evaluate_grid(const APFunction& f, double t0, double dt, std::span<Complex> out);

/// Zero-frequency coefficient: exact Besicovitch mean of a trigonometric
/// polynomial.
Complex besicovitch_mean(const APFunction& f);

/// sum_j |a_j|^2, equal to besicovitch_mean(conj(f) * f).
double parseval_norm(const APFunction& f);

/// Closed-form (1/X) * integral over [0, X]: a_0 + sum a_j (e^{i w X}-1)/(i w X).
Complex finite_time_average(const APFunction& f, double X);

/// Smallest positive |frequency value| present, 0 if none.
double min_positive_frequency(const APFunction& f);
double max_abs_frequency(const APFunction& f);

struct PositivityCertificate {
  double min_value = 0.0;
  std::size_t samples = 0;
  double horizon = 0.0;
  bool passed = true;
};

/// A real, nonnegative almost-periodic function with Besicovitch mean 1.
struct APDensity {
  APFunction fn;
  PositivityCertificate certificate;

  double evaluate(double t) const { return apclock::evaluate(fn, t).real(); }
};

/// Wraps a function as a density: checks the zero-frequency coefficient is 1,
/// real symmetry, and grid positivity. When fatal, a sampled minimum below
/// -eps_pos throws PositivityCheckFailed; otherwise it is recorded.
APDensity make_density(APFunction fn, double eps_pos = 1e-9, std::size_t grid_samples = 1u << 16,
                       bool fatal = true);

struct MeanEstimate {
  Complex value;
  double error = 0.0;
  std::vector<Complex> ladder;  // estimates at increasing horizons
};

/// Long-time average of a callable over [0, X] on a geometric horizon ladder;
/// the error is the spread of the last rungs. panels_per_unit sets quadrature
/// panels per unit time (raise it for fast integrands).
MeanEstimate empirical_mean_estimate(const std::function<Complex(double)>& f, double X,
                                     int ladder_rungs = 4, std::size_t max_points = 1u << 21,
                                     double panels_per_unit = 1.0);

/// Sample-average form with a standard-error estimate.
MeanEstimate empirical_mean_estimate(std::span<const Complex> samples);

/// Density reconstruction from measurement outcomes: coefficient at w_j is
/// (1/N) sum_n e^{-i w_j a_n}; the zero-frequency coefficient is forced to 1
/// and positivity failures are recorded, not fatal.
APDensity reconstruct_density(std::span<const double> samples, std::span<const double> frequencies,
                              double eps_freq = 1e-9);

}  // namespace apclock
