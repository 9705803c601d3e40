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

#include <cstdint>
#include <memory>
#include <vector>

namespace apclock {

/// Integer numerator vector of a frequency over the module basis; the shared
/// positive denominator lives in the FrequencyModule. Two frequencies are
/// equal exactly when their vectors are equal.
using FreqVec = std::vector<std::int64_t>;

struct FreqVecLess {
  bool operator()(const FreqVec& a, const FreqVec& b) const {
    return a < b;  // lexicographic; vectors in one module share a length
  }
};

FreqVec freq_add(const FreqVec& a, const FreqVec& b);
FreqVec freq_sub(const FreqVec& a, const FreqVec& b);
FreqVec freq_negate(const FreqVec& a);
bool freq_is_zero(const FreqVec& a);

/// The additive group of frequencies of a spectrum: each frequency is an
/// integer combination of basis elements divided by a common positive
/// denominator. In exact mode the basis is declared rationally independent,
/// so vector equality decides frequency equality with no floating-point
/// resonance ambiguity. In float-tolerance mode the basis is discovered
/// greedily and equality is a documented heuristic.
class FrequencyModule {
 public:
  enum class Mode { Exact, Float };

  static std::shared_ptr<const FrequencyModule> exact(std::vector<double> basis,
                                                      std::int64_t denominator);
  static std::shared_ptr<const FrequencyModule> with_tolerance(std::vector<double> basis,
                                                               std::int64_t denominator,
                                                               double eps_freq);

  Mode mode() const { return mode_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  std::int64_t denominator() const { return den_; }
  const std::vector<double>& basis() const { return basis_; }
  double merge_tolerance() const { return eps_; }

  /// Numeric value sum_i v[i] * basis[i] / denominator (rad / time unit).
  double value_of(const FreqVec& v) const;

  FreqVec zero() const { return FreqVec(basis_.size(), 0); }

 private:
  FrequencyModule(Mode mode, std::vector<double> basis, std::int64_t den, double eps)
      : mode_(mode), basis_(std::move(basis)), den_(den), eps_(eps) {}

  Mode mode_;
  std::vector<double> basis_;
  std::int64_t den_;
  double eps_;
};

/// Greedy float-mode construction. Values are registered, then resolved in
/// decreasing magnitude: reuse the representation of a previously matched
/// value, else search a bounded integer combination of the current basis,
/// else a small rational multiple of a single basis element, else open a new
/// basis element. Coefficient magnitudes are capped at 64.
class ModuleBuilder {
 public:
  explicit ModuleBuilder(double eps_freq) : eps_(eps_freq) {}

  /// Registers a value; returns its slot. Resolution happens in finish().
  std::size_t add_value(double v);

  struct Result {
    std::shared_ptr<const FrequencyModule> module;
    std::vector<FreqVec> reps;  // aligned with add_value() slots
  };
  Result finish();

 private:
  double eps_;
  std::vector<double> values_;
};

}  // namespace apclock
