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
#include <vector>

namespace apclock {

/// Second-order spectral data around a mean quantum number: E'(n_bar),
/// E''(n_bar) by central differences with unit step, and the revival time
/// tau_r = 4 pi hbar / |E''|.
struct SpectrumExpansion {
  double n_bar = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double revival_time = 0.0;
};

SpectrumExpansion expand_spectrum(const std::function<double(double)>& energy, double n_bar);
/// E_n = n^{2k/(k+2)} for a |x|^k potential.
SpectrumExpansion expand_powerlaw(double k, double n_bar);

/// Coefficient profile f(m) over integer offsets m = n - n_bar, normalised to
/// sum f^2 = 1, with the expansion it rides on.
class SemiclassicalProfile {
 public:
  static SemiclassicalProfile gaussian(const SpectrumExpansion& exp, double sigma);
  static SemiclassicalProfile equal_weight(const SpectrumExpansion& exp, int m_half);
  static SemiclassicalProfile custom(const SpectrumExpansion& exp,
                                     const std::function<double(int)>& f, int m_lo, int m_hi);

  const SpectrumExpansion& expansion() const { return expansion_; }
  double revival_time() const { return expansion_.revival_time; }
  int m_lo() const { return m_lo_; }
  const std::vector<double>& weights() const { return weights_; }  // f(m_lo + i)
  double sigma() const { return sigma_; }                          // 0 unless gaussian

 private:
  SemiclassicalProfile() = default;
  SpectrumExpansion expansion_;
  int m_lo_ = 0;
  std::vector<double> weights_;
  double sigma_ = 0.0;
};

/// theta(t) ~ sum_m f(m) e^{i (m E' + m^2 E''/2) t / hbar} (global phase
/// dropped).
std::complex<double> semiclassical_theta(const SemiclassicalProfile& profile, double t);

/// Poisson-summation form for a Gaussian profile: a sum of relatively
/// displaced complex Gaussians, valid for all t and exact up to truncation.
std::complex<double> gaussian_theta(double sigma, double e1, double e2, double t);

/// A(tau) ~ sum_m f(m)^2 e^{i (m E' + m^2 E''/2) tau / hbar}.
std::complex<double> autocorrelation_semiclassical(const SemiclassicalProfile& profile, double tau);

}  // namespace apclock
