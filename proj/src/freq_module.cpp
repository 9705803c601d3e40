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

#include "apclock/freq_module.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apclock/errors.hpp"
#include "apclock/rational.hpp"

namespace apclock {

namespace {
constexpr std::int64_t kCoeffBound = 64;
}

FreqVec freq_add(const FreqVec& a, const FreqVec& b) {
  FreqVec out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

FreqVec freq_sub(const FreqVec& a, const FreqVec& b) {
  FreqVec out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

FreqVec freq_negate(const FreqVec& a) {
  FreqVec out(a);
  for (auto& v : out) v = -v;
  return out;
}

bool freq_is_zero(const FreqVec& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

std::shared_ptr<const FrequencyModule> FrequencyModule::exact(std::vector<double> basis,
                                                              std::int64_t denominator) {
  return std::shared_ptr<const FrequencyModule>(
      new FrequencyModule(Mode::Exact, std::move(basis), denominator, 0.0));
}

std::shared_ptr<const FrequencyModule> FrequencyModule::with_tolerance(std::vector<double> basis,
                                                                       std::int64_t denominator,
                                                                       double eps_freq) {
  return std::shared_ptr<const FrequencyModule>(
      new FrequencyModule(Mode::Float, std::move(basis), denominator, eps_freq));
}

double FrequencyModule::value_of(const FreqVec& v) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += static_cast<double>(v[i]) * basis_[i];
  return acc / static_cast<double>(den_);
}

std::size_t ModuleBuilder::add_value(double v) {
  values_.push_back(v);
  return values_.size() - 1;
}

namespace {

struct BuildState {
  std::vector<double> basis;
  std::int64_t den = 1;

  double value_of(const FreqVec& v) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += static_cast<double>(v[i]) * basis[i];
    return acc / static_cast<double>(den);
  }
};

double match_tol(double v, double eps) { return eps * std::max(std::abs(v), 1.0); }

// Bounded integer-combination search over the current basis. Exhaustive for
// rank <= 3, single-element multiples beyond that (combinatorics explode and
// high-rank modules arise only from genuinely independent spectra).
bool integer_combination(const BuildState& st, double target, double tol, FreqVec* out) {
  const int r = static_cast<int>(st.basis.size());
  if (r == 0) return false;
  const double scaled = target * static_cast<double>(st.den);
  if (r <= 3) {
    // enumerate all but the last coordinate; solve the last by rounding
    FreqVec c(r, 0);
    const double blast = st.basis[r - 1];
    std::int64_t best_found = 0;
    bool found = false;
    FreqVec best;
    auto consider = [&](FreqVec cand) {
      double rem = scaled;
      for (int i = 0; i + 1 < r; ++i) rem -= static_cast<double>(cand[i]) * st.basis[i];
      const double q = rem / blast;
      const std::int64_t qi = std::llround(q);
      if (std::llabs(qi) > kCoeffBound * st.den) return;
      cand[r - 1] = qi;
      double val = 0.0;
      for (int i = 0; i < r; ++i) val += static_cast<double>(cand[i]) * st.basis[i];
      val /= static_cast<double>(st.den);
      if (std::abs(val - target) <= tol) {
        std::int64_t l1 = 0;
        for (auto x : cand) l1 += std::llabs(x);
        if (!found || l1 < best_found) {
          found = true;
          best_found = l1;
          best = cand;
        }
      }
    };
    if (r == 1) {
      consider(c);
    } else if (r == 2) {
      for (std::int64_t a = -kCoeffBound; a <= kCoeffBound; ++a) {
        c[0] = a * st.den;
        consider(c);
      }
      // also denominator-scale-free small numerators
      for (std::int64_t a = -kCoeffBound; a <= kCoeffBound; ++a) {
        c[0] = a;
        consider(c);
      }
    } else {
      for (std::int64_t a = -kCoeffBound; a <= kCoeffBound; ++a) {
        for (std::int64_t b = -kCoeffBound; b <= kCoeffBound; ++b) {
          c[0] = a;
          c[1] = b;
          consider(c);
        }
      }
    }
    if (found) {
      *out = best;
      return true;
    }
    return false;
  }
  // high rank: single-element integer multiples only
  for (int i = 0; i < r; ++i) {
    const double q = scaled / st.basis[i];
    const std::int64_t qi = std::llround(q);
    if (qi == 0 || std::llabs(qi) > kCoeffBound * st.den) continue;
    if (std::abs(static_cast<double>(qi) * st.basis[i] / static_cast<double>(st.den) - target) <= tol) {
      FreqVec c(r, 0);
      c[i] = qi;
      *out = c;
      return true;
    }
  }
  return false;
}

// Small rational multiple n/m of a single basis element, m <= 64. Catches
// near-lattice spectra where a larger value was scanned first (e.g. the
// difference 2 before 1); the shared denominator grows by lcm.
bool rational_multiple(BuildState* st, std::vector<FreqVec>* assigned, double target, double tol,
                       FreqVec* out) {
  const int r = static_cast<int>(st->basis.size());
  for (int i = 0; i < r; ++i) {
    for (std::int64_t m = 2; m <= kCoeffBound; ++m) {
      const double q = target * static_cast<double>(m) / st->basis[i];
      const std::int64_t n = std::llround(q);
      if (n == 0 || std::llabs(n) > kCoeffBound * m) continue;
      if (std::gcd(std::llabs(n), m) != 1) continue;
      if (std::abs(static_cast<double>(n) / static_cast<double>(m) * st->basis[i] - target) <= tol) {
        const std::int64_t new_den = checked_lcm(st->den, m);
        const std::int64_t scale = new_den / st->den;
        if (scale != 1) {
          for (auto& rep : *assigned) {
            for (auto& x : rep) x *= scale;
          }
          st->den = new_den;
        }
        FreqVec c(r, 0);
        c[i] = n * (new_den / m);
        *out = c;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

ModuleBuilder::Result ModuleBuilder::finish() {
  std::vector<std::size_t> order(values_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(values_[a]) > std::abs(values_[b]);
  });

  BuildState st;
  std::vector<FreqVec> reps(values_.size());
  std::vector<std::size_t> done;  // slots already assigned, in processing order

  for (const std::size_t slot : order) {
    const double v = values_[slot];
    const double tol = match_tol(v, eps_);
    FreqVec rep;
    if (std::abs(v) <= tol && st.basis.empty()) {
      rep = FreqVec();
    } else if (std::abs(v) <= tol) {
      rep = FreqVec(st.basis.size(), 0);
    } else {
      // reuse the representation of an equal previously-assigned value
      bool reused = false;
      for (const std::size_t prev : done) {
        if (std::abs(values_[prev] - v) <= tol) {
          rep = reps[prev];
          rep.resize(st.basis.size(), 0);
          reused = true;
          break;
        }
      }
      if (!reused && !integer_combination(st, v, tol, &rep)) {
        std::vector<FreqVec> assigned;
        assigned.reserve(done.size());
        for (const std::size_t prev : done) assigned.push_back(reps[prev]);
        if (rational_multiple(&st, &assigned, v, tol, &rep)) {
          for (std::size_t i = 0; i < done.size(); ++i) reps[done[i]] = assigned[i];
        } else {
          st.basis.push_back(v);
          rep.assign(st.basis.size(), 0);
          rep.back() = st.den;
        }
      }
    }
    rep.resize(st.basis.size(), 0);
    reps[slot] = std::move(rep);
    done.push_back(slot);
  }

  const std::size_t rank = st.basis.size();
  for (auto& rep : reps) rep.resize(rank, 0);
  Result result;
  result.module = FrequencyModule::with_tolerance(st.basis, st.den, eps_);
  result.reps = std::move(reps);
  return result;
}

}  // namespace apclock
