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

#include "apclock/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "apclock/errors.hpp"

namespace apclock {

namespace {

void check_inputs(std::size_t n_energies, const std::vector<int>& degeneracies) {
  if (n_energies == 0) throw EmptySpectrum("spectrum needs at least one level");
  if (degeneracies.size() != n_energies) {
    throw Error("energies and degeneracies must have the same length");
  }
  for (int d : degeneracies) {
    if (d < 1) throw Error("degeneracy must be >= 1");
  }
}

}  // namespace

void Spectrum::finalise() {
  offsets_.resize(levels_.size());
  dimension_ = 0;
  max_degeneracy_ = 1;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    offsets_[j] = dimension_;
    dimension_ += levels_[j].degeneracy;
    max_degeneracy_ = std::max(max_degeneracy_, levels_[j].degeneracy);
  }
}

std::shared_ptr<const Spectrum> Spectrum::build_exact(
    std::vector<EnergyLevel> levels, std::vector<FreqVec> reps,
    std::shared_ptr<const FrequencyModule> module, std::string label,
    std::vector<std::array<int, 2>> mode_labels) {
  auto s = std::shared_ptr<Spectrum>(new Spectrum());
  s->levels_ = std::move(levels);
  s->energy_reps_ = std::move(reps);
  s->module_ = std::move(module);
  s->label_ = std::move(label);
  s->mode_labels_ = std::move(mode_labels);
  s->finalise();
  return s;
}

std::shared_ptr<const Spectrum> Spectrum::from_rationals(const std::vector<Rational>& energies,
                                                         const std::vector<int>& degeneracies,
                                                         double unit, std::string label) {
  check_inputs(energies.size(), degeneracies);
  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (energies[order[i - 1]] == energies[order[i]]) {
      throw DuplicateLevel("duplicate energy " + energies[order[i]].to_string());
    }
  }
  std::int64_t den = 1;
  for (const auto& e : energies) den = checked_lcm(den, e.den());
  std::vector<EnergyLevel> levels;
  std::vector<FreqVec> reps;
  for (const std::size_t idx : order) {
    const Rational& e = energies[idx];
    levels.push_back({e.to_double() * unit, degeneracies[idx]});
    reps.push_back({e.num() * (den / e.den())});
  }
  return build_exact(std::move(levels), std::move(reps), FrequencyModule::exact({unit}, den),
                     std::move(label), {});
}

std::shared_ptr<const Spectrum> Spectrum::from_lattice(const std::vector<double>& basis,
                                                       const std::vector<FreqVec>& coeffs,
                                                       const std::vector<int>& degeneracies,
                                                       std::string label) {
  check_inputs(coeffs.size(), degeneracies);
  std::vector<double> values(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].size() != basis.size()) throw Error("lattice coefficient rank mismatch");
    double v = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      v += static_cast<double>(coeffs[j][i]) * basis[i];
    }
    values[j] = v;
  }
  std::vector<std::size_t> order(coeffs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (coeffs[order[i - 1]] == coeffs[order[i]]) throw DuplicateLevel("duplicate lattice level");
  }
  std::vector<EnergyLevel> levels;
  std::vector<FreqVec> reps;
  for (const std::size_t idx : order) {
    levels.push_back({values[idx], degeneracies[idx]});
    reps.push_back(coeffs[idx]);
  }
  return build_exact(std::move(levels), std::move(reps), FrequencyModule::exact(basis, 1),
                     std::move(label), {});
}

std::shared_ptr<const Spectrum> Spectrum::from_values(const std::vector<double>& energies,
                                                      const std::vector<int>& degeneracies,
                                                      double eps_freq, std::string label) {
  check_inputs(energies.size(), degeneracies);
  if (eps_freq <= 0.0) throw Error("eps_freq must be > 0 in float mode");
  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
  const std::size_t n = energies.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double a = energies[order[i - 1]], b = energies[order[i]];
    if (std::abs(b - a) <= eps_freq * std::max({std::abs(a), std::abs(b), 1.0})) {
      throw DuplicateLevel("energies indistinguishable at eps_freq");
    }
  }

  // Greedy module over E_0 and all pairwise differences (j > k).
  ModuleBuilder builder(eps_freq);
  const std::size_t e0_slot = builder.add_value(energies[order[0]]);
  std::vector<std::vector<std::size_t>> diff_slot(n);  // [j][k], j > k
  for (std::size_t j = 1; j < n; ++j) {
    diff_slot[j].resize(j);
    for (std::size_t k = 0; k < j; ++k) {
      diff_slot[j][k] = builder.add_value(energies[order[j]] - energies[order[k]]);
    }
  }
  auto built = builder.finish();

  auto s = std::shared_ptr<Spectrum>(new Spectrum());
  s->module_ = built.module;
  s->label_ = std::move(label);
  s->levels_.reserve(n);
  s->energy_reps_.reserve(n);
  const FreqVec e0 = built.reps[e0_slot];
  for (std::size_t j = 0; j < n; ++j) {
    s->levels_.push_back({energies[order[j]], degeneracies[order[j]]});
    s->energy_reps_.push_back(j == 0 ? e0 : freq_add(e0, built.reps[diff_slot[j][0]]));
  }
  s->pair_reps_.reserve(n * (n - 1) / 2);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      s->pair_reps_.push_back(built.reps[diff_slot[j][k]]);
    }
  }
  s->finalise();
  return s;
}

FreqVec Spectrum::difference_rep(int j, int k) const {
  if (j == k) return module_->zero();
  if (pair_reps_.empty()) {
    return freq_sub(energy_reps_[j], energy_reps_[k]);
  }
  const int hi = std::max(j, k), lo = std::min(j, k);
  const FreqVec& rep = pair_reps_[static_cast<std::size_t>(hi) * (hi - 1) / 2 + lo];
  return j > k ? rep : freq_negate(rep);
}

std::optional<std::array<int, 2>> Spectrum::mode_label(int j) const {
  if (mode_labels_.empty()) return std::nullopt;
  return mode_labels_[j];
}

ResonanceReport resonance_report(const Spectrum& s) {
  ResonanceReport report;
  const int n = s.level_count();
  std::map<FreqVec, std::size_t, FreqVecLess> index;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      FreqVec d = s.difference_rep(j, k);
      auto [it, inserted] = index.try_emplace(std::move(d), report.classes.size());
      if (inserted) {
        report.classes.push_back(
            {it->first, s.module()->value_of(it->first), {}});
      }
      report.classes[it->second].pairs.push_back({j, k});
    }
  }
  for (const auto& cls : report.classes) {
    if (cls.pairs.size() >= 2) report.has_shared_resonances = true;
  }

  // Rank over the rationals is 1 exactly when one basis element carries all
  // differences; then every difference is an integer multiple of
  // gcd(coefficients) * basis / den and the evolution is periodic.
  const auto& module = *s.module();
  std::int64_t gcd_all = 0;
  bool rank_one = true;
  int used_axis = -1;
  for (const auto& cls : report.classes) {
    int axis = -1;
    for (std::size_t i = 0; i < cls.difference.size(); ++i) {
      if (cls.difference[i] != 0) {
        if (axis >= 0) {
          rank_one = false;
          break;
        }
        axis = static_cast<int>(i);
      }
    }
    if (!rank_one) break;
    if (axis >= 0) {
      if (used_axis < 0) used_axis = axis;
      if (axis != used_axis) {
        rank_one = false;
        break;
      }
      gcd_all = std::gcd(gcd_all, std::llabs(cls.difference[axis]));
    }
  }
  if (rank_one && used_axis >= 0 && gcd_all > 0) {
    const double base =
        static_cast<double>(gcd_all) * module.basis()[used_axis] / static_cast<double>(module.denominator());
    report.common_period = 2.0 * M_PI / std::abs(base);
  } else if (n == 1) {
    report.common_period = std::nullopt;  // no differences, period undefined
  }
  return report;
}

namespace {

// Exact commensurability test on the double ratio via continued fractions:
// commensurate iff some convergent p/q with small q reproduces the ratio
// exactly in double arithmetic.
bool exactly_commensurate(double w1, double w2) {
  const double ratio = w1 / w2;
  double a = ratio;
  std::int64_t p0 = 1, q0 = 0, p1 = std::llround(std::floor(a)), q1 = 1;
  if (static_cast<double>(p1) == ratio) return true;
  for (int iter = 0; iter < 48; ++iter) {
    const double frac = a - std::floor(a);
    if (frac == 0.0) break;
    a = 1.0 / frac;
    const double ai = std::floor(a);
    if (ai > 1e15) break;
    const std::int64_t p2 = std::llround(ai) * p1 + p0;
    const std::int64_t q2 = std::llround(ai) * q1 + q0;
    if (q2 > 1000000) break;
    if (w1 * static_cast<double>(q2) == w2 * static_cast<double>(p2)) return true;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return false;
}

}  // namespace

std::shared_ptr<const Spectrum> harmonic_spectrum(double omega, int n_max) {
  if (omega <= 0.0) throw Error("harmonic: omega must be > 0");
  if (n_max < 1) throw Error("harmonic: n_max must be >= 1");
  std::vector<Rational> energies;
  std::vector<int> deg;
  for (int j = 0; j <= n_max; ++j) {
    energies.push_back(Rational(j));
    deg.push_back(1);
  }
  return Spectrum::from_rationals(energies, deg, omega, "harmonic");
}

std::shared_ptr<const Spectrum> hydrogen_spectrum(double rydberg, int n_max) {
  if (rydberg <= 0.0) throw Error("hydrogen: R must be > 0");
  if (n_max < 1) throw Error("hydrogen: n_max must be >= 1");
  std::vector<Rational> energies;
  std::vector<int> deg;
  for (int j = 1; j <= n_max; ++j) {
    energies.push_back(Rational(-1, static_cast<std::int64_t>(j) * j));
    deg.push_back(1);
  }
  return Spectrum::from_rationals(energies, deg, rydberg, "hydrogen");
}

std::shared_ptr<const Spectrum> isotropic2_spectrum(double omega, int n_max) {
  if (omega <= 0.0) throw Error("isotropic2: omega must be > 0");
  if (n_max < 1) throw Error("isotropic2: n_max must be >= 1");
  std::vector<Rational> energies;
  std::vector<int> deg;
  for (int j = 0; j <= n_max; ++j) {
    energies.push_back(Rational(j));
    deg.push_back(j + 1);  // |E_n, d> = |d> (x) |n - d>, d = 0..n
  }
  return Spectrum::from_rationals(energies, deg, omega, "isotropic2");
}

std::shared_ptr<const Spectrum> anisotropic2_spectrum(double omega1, double omega2, int n_max) {
  if (omega1 <= 0.0 || omega2 <= 0.0) throw Error("anisotropic2: frequencies must be > 0");
  if (n_max < 1) throw Error("anisotropic2: n_max must be >= 1");
  if (exactly_commensurate(omega1, omega2)) {
    throw CommensurateFrequencies("anisotropic2: omega1/omega2 is exactly rational");
  }
  struct Entry {
    double value;
    FreqVec coeff;
    std::array<int, 2> label;
  };
  std::vector<Entry> entries;
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      const double v = m * omega1 + n * omega2;
      entries.push_back({v, FreqVec{m, n}, {m, n}});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].value == entries[i - 1].value) {
      throw CommensurateFrequencies("anisotropic2: lattice values collide");
    }
  }
  auto s = std::shared_ptr<Spectrum>(new Spectrum());
  for (auto& e : entries) {
    s->levels_.push_back({e.value, 1});
    s->energy_reps_.push_back(std::move(e.coeff));
    s->mode_labels_.push_back(e.label);
  }
  s->module_ = FrequencyModule::exact({omega1, omega2}, 1);
  s->label_ = "anisotropic2";
  s->finalise();
  return s;
}

std::shared_ptr<const Spectrum> powerlaw_spectrum(double k, int n_max) {
  if (k <= 0.0) throw Error("powerlaw: k must be > 0");
  if (n_max < 1) throw Error("powerlaw: n_max must be >= 1");
  const double expo = 2.0 * k / (k + 2.0);
  std::vector<double> energies;
  std::vector<int> deg;
  for (int j = 1; j <= n_max; ++j) {
    energies.push_back(std::pow(static_cast<double>(j), expo));
    deg.push_back(1);
  }
  return Spectrum::from_values(energies, deg, 1e-9, "powerlaw");
}

}  // namespace apclock
