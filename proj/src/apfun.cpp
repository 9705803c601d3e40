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

#include "apclock/apfun.hpp"

#include <algorithm>
#include <cmath>

#include "apclock/errors.hpp"

namespace apclock {

namespace {

void require_same_module(const APFunction& f, const APFunction& g) {
  if (f.module() != g.module()) {
    throw ModuleMismatch("operands live over different frequency modules");
  }
}

}  // namespace

APFunction APFunction::constant(std::shared_ptr<const FrequencyModule> module, Complex value) {
  APFunction f(std::move(module));
  f.add_term(f.module_->zero(), value);
  return f;
}

void APFunction::add_term(const FreqVec& freq, Complex coeff) {
  auto it = terms_.find(freq);
  if (it == terms_.end()) {
    if (std::abs(coeff) > kCoeffPrune) terms_.emplace(freq, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) <= kCoeffPrune) terms_.erase(it);
}

Complex APFunction::coefficient(const FreqVec& freq) const {
  auto it = terms_.find(freq);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

bool APFunction::is_real(double tol) const {
  for (const auto& [freq, coeff] : terms_) {
    const Complex mirror = coefficient(freq_negate(freq));
    if (std::abs(mirror - std::conj(coeff)) > tol) return false;
  }
  return true;
}

APFunction add(const APFunction& f, const APFunction& g) {
  require_same_module(f, g);
  APFunction out = f;
  for (const auto& [freq, coeff] : g.terms()) out.add_term(freq, coeff);
  return out;
}

APFunction scale(const APFunction& f, Complex c) {
  APFunction out(f.module());
  for (const auto& [freq, coeff] : f.terms()) out.add_term(freq, coeff * c);
  return out;
}

APFunction conjugate(const APFunction& f) {
  APFunction out(f.module());
  for (const auto& [freq, coeff] : f.terms()) out.add_term(freq_negate(freq), std::conj(coeff));
  return out;
}

APFunction multiply(const APFunction& f, const APFunction& g, std::size_t term_budget) {
  require_same_module(f, g);
  APFunction out(f.module());
  for (const auto& [wf, af] : f.terms()) {
    for (const auto& [wg, ag] : g.terms()) {
      out.add_term(freq_add(wf, wg), af * ag);
      if (out.term_count() > term_budget) {
        throw TermBudgetExceeded("product exceeded the term budget");
      }
    }
  }
  return out;
}

Complex evaluate(const APFunction& f, double t) {
  Complex acc(0.0, 0.0);
  const auto& module = *f.module();
  for (const auto& [freq, coeff] : f.terms()) {
    const double w = module.value_of(freq);
    acc += coeff * std::polar(1.0, w * t);
  }
  return acc;
}

void evaluate_grid(const APFunction& f, double t0, double dt, std::span<Complex> out) {
  std::fill(out.begin(), out.end(), Complex(0.0, 0.0));
  const auto& module = *f.module();
  for (const auto& [freq, coeff] : f.terms()) {
    const double w = module.value_of(freq);
    const Complex step = std::polar(1.0, w * dt);
    Complex phase = std::polar(1.0, w * t0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += coeff * phase;
      phase *= step;
      if ((i & 0xfffu) == 0xfffu) phase = std::polar(1.0, w * (t0 + dt * double(i + 1)));
    }
  }
}

Complex besicovitch_mean(const APFunction& f) { return f.coefficient(f.module()->zero()); }

double parseval_norm(const APFunction& f) {
  double acc = 0.0;
  for (const auto& [freq, coeff] : f.terms()) acc += std::norm(coeff);
  return acc;
}

Complex finite_time_average(const APFunction& f, double X) {
  Complex acc(0.0, 0.0);
  const auto& module = *f.module();
  for (const auto& [freq, coeff] : f.terms()) {
    if (freq_is_zero(freq)) {
      acc += coeff;
    } else {
      const double w = module.value_of(freq);
      const Complex iwx(0.0, w * X);
      acc += coeff * (std::exp(iwx) - 1.0) / iwx;
    }
  }
  return acc;
}

double min_positive_frequency(const APFunction& f) {
  double best = 0.0;
  const auto& module = *f.module();
  for (const auto& [freq, coeff] : f.terms()) {
    if (freq_is_zero(freq)) continue;
    const double w = std::abs(module.value_of(freq));
    if (w > 0.0 && (best == 0.0 || w < best)) best = w;
  }
  return best;
}

double max_abs_frequency(const APFunction& f) {
  double best = 0.0;
  const auto& module = *f.module();
  for (const auto& [freq, coeff] : f.terms()) {
    best = std::max(best, std::abs(module.value_of(freq)));
  }
  return best;
}

APDensity make_density(APFunction fn, double eps_pos, std::size_t grid_samples, bool fatal) {
  const Complex mean = besicovitch_mean(fn);
  if (std::abs(mean - 1.0) > 1e-9) {
    throw Error("density mean is not 1 (got " + std::to_string(mean.real()) + ")");
  }
  if (!fn.is_real(1e-9)) {
    throw Error("density coefficients are not conjugate-symmetric");
  }

  PositivityCertificate cert;
  const double w_min = min_positive_frequency(fn);
  cert.horizon = w_min > 0.0 ? 2.0 * M_PI / w_min : 1.0;
  cert.samples = grid_samples;
  cert.min_value = 1.0;
  if (fn.term_count() > 1) {
    std::vector<Complex> values(grid_samples);
    evaluate_grid(fn, 0.0, cert.horizon / static_cast<double>(grid_samples), values);
    double mn = values[0].real();
    for (const auto& v : values) mn = std::min(mn, v.real());
    cert.min_value = mn;
  }
  cert.passed = cert.min_value >= -eps_pos;
  if (!cert.passed && fatal) {
    throw PositivityCheckFailed("sampled density minimum " + std::to_string(cert.min_value));
  }
  return APDensity{std::move(fn), cert};
}

namespace {

// Composite Gauss-Legendre (8 nodes per panel) for (1/X) * integral_0^X f.
constexpr double kGl8Nodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                 -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
constexpr double kGl8Weights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                   0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};

Complex average_gl(const std::function<Complex(double)>& f, double X, std::size_t panels) {
  const double h = X / static_cast<double>(panels);
  Complex acc(0.0, 0.0);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    Complex panel(0.0, 0.0);
    for (int q = 0; q < 8; ++q) {
      panel += kGl8Weights[q] * f(mid + 0.5 * h * kGl8Nodes[q]);
    }
    acc += panel * (0.5 * h);
  }
  return acc / X;
}

}  // namespace

MeanEstimate empirical_mean_estimate(const std::function<Complex(double)>& f, double X,
                                     int ladder_rungs, std::size_t max_points,
                                     double panels_per_unit) {
  if (X <= 0.0) throw Error("empirical mean needs X > 0");
  if (ladder_rungs < 2) ladder_rungs = 2;
  MeanEstimate est;
  for (int r = ladder_rungs - 1; r >= 0; --r) {
    const double Xr = X / static_cast<double>(1 << r);
    std::size_t panels = static_cast<std::size_t>(std::ceil(Xr * panels_per_unit));
    panels = std::clamp<std::size_t>(panels, 16, max_points / 8);
    est.ladder.push_back(average_gl(f, Xr, panels));
  }
  est.value = est.ladder.back();
  double spread = 0.0;
  const std::size_t n = est.ladder.size();
  for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i) {
    spread = std::max(spread, std::abs(est.ladder[i] - est.value));
  }
  est.error = spread;
  return est;
}

MeanEstimate empirical_mean_estimate(std::span<const Complex> samples) {
  if (samples.empty()) throw Error("empirical mean needs at least one sample");
  Complex sum(0.0, 0.0);
  for (const auto& s : samples) sum += s;
  const Complex mean = sum / static_cast<double>(samples.size());
  double var = 0.0;
  for (const auto& s : samples) var += std::norm(s - mean);
  var /= static_cast<double>(samples.size());
  MeanEstimate est;
  est.value = mean;
  est.error = std::sqrt(var / static_cast<double>(samples.size()));
  est.ladder = {mean};
  return est;
}

APDensity reconstruct_density(std::span<const double> samples, std::span<const double> frequencies,
                              double eps_freq) {
  if (samples.empty()) throw Error("reconstruction needs at least one sample");
  bool has_zero = false;
  for (const double w : frequencies) {
    if (w == 0.0) {
      has_zero = true;
      continue;
    }
    bool mirrored = false;
    for (const double v : frequencies) {
      if (v == -w) {
        mirrored = true;
        break;
      }
    }
    if (!mirrored) throw Error("frequency list must be closed under negation");
  }
  if (!has_zero) throw Error("frequency list must contain 0");

  ModuleBuilder builder(eps_freq);
  std::vector<std::pair<double, std::size_t>> slots;
  for (const double w : frequencies) {
    if (w > 0.0) slots.emplace_back(w, builder.add_value(w));
  }
  auto built = builder.finish();

  APFunction fn(built.module);
  fn.add_term(built.module->zero(), 1.0);
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (const auto& [w, slot] : slots) {
    Complex acc(0.0, 0.0);
    for (const double a : samples) acc += std::polar(1.0, -w * a);
    acc *= inv_n;
    fn.add_term(built.reps[slot], acc);
    fn.add_term(freq_negate(built.reps[slot]), std::conj(acc));
  }
  return make_density(std::move(fn), 1e-9, 1u << 16, /*fatal=*/false);
}

}  // namespace apclock
