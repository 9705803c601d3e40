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

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apclock/freq_module.hpp"
#include "apclock/rational.hpp"

namespace apclock {

struct EnergyLevel {
  double energy = 0.0;  // hbar = 1, so energy doubles as angular frequency
  int degeneracy = 1;
};

/// Immutable discrete spectrum: strictly increasing energies, per-level
/// degeneracies, and exact frequency representations over a FrequencyModule.
class Spectrum {
 public:
  /// Exact mode: energies are rationals times a declared unit frequency.
  static std::shared_ptr<const Spectrum> from_rationals(const std::vector<Rational>& energies,
                                                        const std::vector<int>& degeneracies,
                                                        double unit = 1.0, std::string label = {});

  /// Float-tolerance mode with greedy module construction.
  static std::shared_ptr<const Spectrum> from_values(const std::vector<double>& energies,
                                                     const std::vector<int>& degeneracies,
                                                     double eps_freq = 1e-9,
                                                     std::string label = {});

  /// Exact mode over a declared rationally independent basis; level j has
  /// energy sum_i coeffs[j][i] * basis[i].
  static std::shared_ptr<const Spectrum> from_lattice(const std::vector<double>& basis,
                                                      const std::vector<FreqVec>& coeffs,
                                                      const std::vector<int>& degeneracies,
                                                      std::string label = {});

  int level_count() const { return static_cast<int>(levels_.size()); }
  int dimension() const { return dimension_; }
  const std::vector<EnergyLevel>& levels() const { return levels_; }
  double energy(int j) const { return levels_[j].energy; }
  int degeneracy(int j) const { return levels_[j].degeneracy; }
  /// Offset of level j's first amplitude in a flattened state vector.
  int offset(int j) const { return offsets_[j]; }
  int max_degeneracy() const { return max_degeneracy_; }

  const FreqVec& energy_rep(int j) const { return energy_reps_[j]; }
  /// Representation of E_j - E_k; exact mode subtracts energy representations,
  /// float mode returns the directly assigned difference representation.
  FreqVec difference_rep(int j, int k) const;

  const std::shared_ptr<const FrequencyModule>& module() const { return module_; }
  double hbar() const { return hbar_; }
  const std::string& label() const { return label_; }

  /// Two-mode lattice label (m, n) for generator-built oscillator spectra.
  std::optional<std::array<int, 2>> mode_label(int j) const;

 private:
  friend std::shared_ptr<const Spectrum> anisotropic2_spectrum(double, double, int);
  Spectrum() = default;

  std::vector<EnergyLevel> levels_;
  std::vector<int> offsets_;
  int dimension_ = 0;
  int max_degeneracy_ = 1;
  std::vector<FreqVec> energy_reps_;
  // float mode: directly assigned representation per ordered pair j > k
  std::vector<FreqVec> pair_reps_;
  std::shared_ptr<const FrequencyModule> module_;
  double hbar_ = 1.0;
  std::string label_;
  std::vector<std::array<int, 2>> mode_labels_;

  static std::shared_ptr<const Spectrum> build_exact(std::vector<EnergyLevel> levels,
                                                     std::vector<FreqVec> reps,
                                                     std::shared_ptr<const FrequencyModule> module,
                                                     std::string label,
                                                     std::vector<std::array<int, 2>> mode_labels);
  void finalise();
};

struct ResonanceClass {
  FreqVec difference;
  double value = 0.0;
  std::vector<std::pair<int, int>> pairs;  // ordered (j, k), j != k
};

struct ResonanceReport {
  std::vector<ResonanceClass> classes;
  bool has_shared_resonances = false;
  std::optional<double> common_period;
};

ResonanceReport resonance_report(const Spectrum& s);

// Generator families. n_max >= 1 throughout; harmonic and isotropic include
// the ground level 0, hydrogen and powerlaw start at n = 1.
std::shared_ptr<const Spectrum> harmonic_spectrum(double omega, int n_max);
std::shared_ptr<const Spectrum> hydrogen_spectrum(double rydberg, int n_max);
std::shared_ptr<const Spectrum> isotropic2_spectrum(double omega, int n_max);
std::shared_ptr<const Spectrum> anisotropic2_spectrum(double omega1, double omega2, int n_max);
std::shared_ptr<const Spectrum> powerlaw_spectrum(double k, int n_max);

}  // namespace apclock
