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

#include "apclock/semiclassical.hpp"

#include <cmath>

#include "apclock/errors.hpp"

namespace apclock {

SpectrumExpansion expand_spectrum(const std::function<double(double)>& energy, double n_bar) {
  SpectrumExpansion ex;
  ex.n_bar = n_bar;
  // fourth-order central stencils with unit step
  const double em2 = energy(n_bar - 2.0);
  const double em1 = energy(n_bar - 1.0);
  const double e0 = energy(n_bar);
  const double ep1 = energy(n_bar + 1.0);
  const double ep2 = energy(n_bar + 2.0);
  ex.e1 = (em2 - 8.0 * em1 + 8.0 * ep1 - ep2) / 12.0;
  ex.e2 = (-em2 + 16.0 * em1 - 30.0 * e0 + 16.0 * ep1 - ep2) / 12.0;
  if (std::abs(ex.e2) < 1e-12 * std::max(std::abs(ex.e1), 1.0)) {
    throw RevivalUndefined("E'' vanishes at n_bar (harmonic-type spectrum)");
  }
  ex.revival_time = 4.0 * M_PI / std::abs(ex.e2);
  return ex;
}

SpectrumExpansion expand_powerlaw(double k, double n_bar) {
  const double expo = 2.0 * k / (k + 2.0);
  return expand_spectrum([expo](double n) { return std::pow(n, expo); }, n_bar);
}

namespace {

void normalise(std::vector<double>* w) {
  double norm2 = 0.0;
  for (const double v : *w) norm2 += v * v;
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : *w) v *= inv;
}

}  // namespace

SemiclassicalProfile SemiclassicalProfile::gaussian(const SpectrumExpansion& exp, double sigma) {
  if (sigma <= 0.0) throw Error("gaussian profile needs sigma > 0");
  SemiclassicalProfile p;
  p.expansion_ = exp;
  p.sigma_ = sigma;
  // support out to where f(m)^2 drops below 1e-28 of the peak
  const int half = static_cast<int>(std::ceil(12.0 * sigma)) + 2;
  p.m_lo_ = -half;
  p.weights_.resize(2 * half + 1);
  for (int i = 0; i <= 2 * half; ++i) {
    const double m = static_cast<double>(i - half);
    p.weights_[i] = std::exp(-m * m / (4.0 * sigma * sigma));
  }
  normalise(&p.weights_);
  return p;
}

SemiclassicalProfile SemiclassicalProfile::equal_weight(const SpectrumExpansion& exp, int m_half) {
  if (m_half < 0) throw Error("equal-weight profile needs M >= 0");
  SemiclassicalProfile p;
  p.expansion_ = exp;
  p.m_lo_ = -m_half;
  p.weights_.assign(2 * m_half + 1, 1.0);
  normalise(&p.weights_);
  return p;
}

SemiclassicalProfile SemiclassicalProfile::custom(const SpectrumExpansion& exp,
                                                  const std::function<double(int)>& f, int m_lo,
                                                  int m_hi) {
  if (m_hi < m_lo) throw Error("custom profile needs m_hi >= m_lo");
  SemiclassicalProfile p;
  p.expansion_ = exp;
  p.m_lo_ = m_lo;
  p.weights_.resize(m_hi - m_lo + 1);
  for (int m = m_lo; m <= m_hi; ++m) p.weights_[m - m_lo] = f(m);
  normalise(&p.weights_);
  return p;
}

std::complex<double> semiclassical_theta(const SemiclassicalProfile& profile, double t) {
  const auto& ex = profile.expansion();
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < profile.weights().size(); ++i) {
    const double m = static_cast<double>(profile.m_lo() + static_cast<int>(i));
    acc += profile.weights()[i] * std::polar(1.0, (m * ex.e1 + 0.5 * m * m * ex.e2) * t);
  }
  return acc;
}

std::complex<double> gaussian_theta(double sigma, double e1, double e2, double t) {
  if (sigma <= 0.0) throw Error("gaussian_theta needs sigma > 0");
  using C = std::complex<double>;
  // Poisson summation of f(m) e^{i(m E1 + m^2 E2/2) t} with
  // f(m) = (2 pi sigma^2)^{-1/4} e^{-m^2/(4 sigma^2)}:
  //   theta(t) = C [2 pi a(t)]^{-1/2} sum_k e^{-(k - E1 t / 2 pi)^2 / (2 a(t))},
  //   a(t) = [1/(2 sigma^2) - i E2 t] / (4 pi^2).
  // The decaying-exponent sign is fixed by agreement with direct summation.
  const C a = C(1.0 / (2.0 * sigma * sigma), -e2 * t) / (4.0 * M_PI * M_PI);
  const double disp = e1 * t / (2.0 * M_PI);
  const double decay = (1.0 / (2.0 * a)).real();  // > 0 for all t
  const double half_width = std::sqrt(34.0 / decay) + 2.0;
  const long k_lo = std::lround(std::floor(disp - half_width));
  const long k_hi = std::lround(std::ceil(disp + half_width));
  C sum(0.0, 0.0);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double d = static_cast<double>(k) - disp;
    sum += std::exp(-(d * d) / (2.0 * a));
  }
  const double prefactor = std::pow(2.0 * M_PI * sigma * sigma, -0.25);
  return prefactor * sum / std::sqrt(2.0 * M_PI * a);
}

std::complex<double> autocorrelation_semiclassical(const SemiclassicalProfile& profile,
                                                   double tau) {
  const auto& ex = profile.expansion();
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < profile.weights().size(); ++i) {
    const double m = static_cast<double>(profile.m_lo() + static_cast<int>(i));
    const double w = profile.weights()[i];
    acc += w * w * std::polar(1.0, (m * ex.e1 + 0.5 * m * m * ex.e2) * tau);
  }
  return acc;
}

}  // namespace apclock
