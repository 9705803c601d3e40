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

#include "apclock/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apclock/errors.hpp"

namespace apclock {

std::string backend_name(EntropyBackend b) {
  switch (b) {
    case EntropyBackend::Auto: return "auto";
    case EntropyBackend::TimeAverage: return "time-average";
    case EntropyBackend::Torus: return "torus";
    case EntropyBackend::ExactPeriodic: return "exact-periodic";
    case EntropyBackend::Factorized: return "factorized";
  }
  return "unknown";
}

double purity(const APDensity& p) { return parseval_norm(p.fn); }

double typical_purity_formula(const StateVector& psi) {
  if (resonance_report(*psi.spectrum).has_shared_resonances) {
    throw SharedResonances("typical purity formula needs no shared resonances");
  }
  double acc = 0.0;
  for (int j = 0; j < psi.spectrum->level_count(); ++j) {
    const double pj = psi.level_probability(j);
    acc += pj * pj;
  }
  return 2.0 - acc;
}

double exact_ur_residual(const StateVector& psi) {
  if (resonance_report(*psi.spectrum).has_shared_resonances) {
    throw SharedResonances("exact uncertainty relation needs no shared resonances");
  }
  double sum_p2 = 0.0;
  for (int j = 0; j < psi.spectrum->level_count(); ++j) {
    const double pj = psi.level_probability(j);
    sum_p2 += pj * pj;
  }
  return std::abs(purity(canonical_density(psi)) + sum_p2 - 2.0);
}

double energy_entropy(const StateVector& psi) {
  double acc = 0.0;
  for (int j = 0; j < psi.spectrum->level_count(); ++j) {
    const double pj = psi.level_probability(j);
    if (pj > 0.0) acc -= pj * std::log(pj);
  }
  return acc;
}

namespace {

double plogp(double p, double clamp) {
  if (p <= clamp) return 0.0;  // 0 log 0 := 0; tiny negative dips clamp to 0
  return p * std::log(p);
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<int> used_coordinates(const APFunction& f) {
  const int rank = f.module()->rank();
  std::vector<bool> used(rank, false);
  for (const auto& [freq, coeff] : f.terms()) {
    for (int i = 0; i < rank; ++i) {
      if (freq[i] != 0) used[i] = true;
    }
  }
  std::vector<int> coords;
  for (int i = 0; i < rank; ++i) {
    if (used[i]) coords.push_back(i);
  }
  return coords;
}

// Reduced integer harmonics per used coordinate (divided by the gcd along
// each axis), plus the per-axis harmonic extent.
struct TorusTerms {
  std::vector<int> coords;
  std::vector<std::vector<std::int64_t>> harmonics;  // per term, per used coord
  std::vector<Complex> coeffs;
  std::vector<std::int64_t> extent;  // max |harmonic| per used coord
};

TorusTerms reduce_harmonics(const APFunction& f, const std::vector<int>& coords) {
  TorusTerms tt;
  tt.coords = coords;
  std::vector<std::int64_t> gcds(coords.size(), 0);
  for (const auto& [freq, coeff] : f.terms()) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      gcds[i] = std::gcd(gcds[i], std::llabs(freq[coords[i]]));
    }
  }
  for (auto& g : gcds) {
    if (g == 0) g = 1;
  }
  tt.extent.assign(coords.size(), 0);
  for (const auto& [freq, coeff] : f.terms()) {
    std::vector<std::int64_t> h(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      h[i] = freq[coords[i]] / gcds[i];
      tt.extent[i] = std::max<std::int64_t>(tt.extent[i], std::llabs(h[i]));
    }
    tt.harmonics.push_back(std::move(h));
    tt.coeffs.push_back(coeff);
  }
  return tt;
}

struct GridEntropy {
  double full = 0.0;  // at order N
  double half = 0.0;  // at order N/2 (even-index subgrid)
};

// Streaming entropy over the rank-1 torus grid.
GridEntropy entropy_rank1(const TorusTerms& tt, int order, double clamp) {
  std::vector<double> values(order, 0.0);
  const double dphi = 2.0 * M_PI / order;
  for (std::size_t k = 0; k < tt.coeffs.size(); ++k) {
    const std::int64_t m = tt.harmonics[k][0];
    const Complex a = tt.coeffs[k];
    if (m == 0) {
      for (auto& v : values) v += a.real();
      continue;
    }
    if (m < 0) continue;  // conjugate pair handled via 2*Re
    const Complex step = std::polar(1.0, m * dphi);
    Complex phase(1.0, 0.0);
    for (int i = 0; i < order; ++i) {
      values[i] += 2.0 * (a * phase).real();
      phase *= step;
      if ((i & 0xfff) == 0xfff) phase = std::polar(1.0, m * dphi * (i + 1.0));
    }
  }
  GridEntropy ge;
  double sum_full = 0.0, sum_half = 0.0;
  for (int i = 0; i < order; ++i) {
    const double v = plogp(values[i], clamp);
    sum_full += v;
    if ((i & 1) == 0) sum_half += v;
  }
  ge.full = -sum_full / order;
  ge.half = -sum_half / (order / 2);
  return ge;
}

// Streaming entropy over a rank-2 or rank-3 torus tensor grid. Rows over the
// first coordinate reduce terms to a smaller-rank problem per row.
GridEntropy entropy_tensor(const TorusTerms& tt, const std::vector<int>& orders, double clamp) {
  const std::size_t r = tt.coords.size();
  GridEntropy ge;
  if (r == 1) return entropy_rank1(tt, orders[0], clamp);

  const int n0 = orders[0];
  const double dphi0 = 2.0 * M_PI / n0;
  double sum_full = 0.0, sum_half = 0.0;
  for (int i0 = 0; i0 < n0; ++i0) {
    const double phi0 = i0 * dphi0;
    // collapse the first coordinate at phi0
    std::map<std::vector<std::int64_t>, Complex> reduced;
    for (std::size_t k = 0; k < tt.coeffs.size(); ++k) {
      std::vector<std::int64_t> rest(tt.harmonics[k].begin() + 1, tt.harmonics[k].end());
      reduced[rest] += tt.coeffs[k] * std::polar(1.0, tt.harmonics[k][0] * phi0);
    }
    TorusTerms sub;
    sub.coords.assign(tt.coords.begin() + 1, tt.coords.end());
    for (auto& [h, a] : reduced) {
      sub.harmonics.push_back(h);
      sub.coeffs.push_back(a);
    }
    if (r == 2) {
      // evaluate the one-dimensional row directly
      const int n1 = orders[1];
      const double dphi1 = 2.0 * M_PI / n1;
      std::vector<double> row(n1, 0.0);
      for (std::size_t k = 0; k < sub.coeffs.size(); ++k) {
        const std::int64_t m = sub.harmonics[k][0];
        const Complex a = sub.coeffs[k];
        const Complex step = std::polar(1.0, m * dphi1);
        Complex phase(1.0, 0.0);
        for (int i1 = 0; i1 < n1; ++i1) {
          row[i1] += (a * phase).real();
          phase *= step;
          if ((i1 & 0xfff) == 0xfff) phase = std::polar(1.0, m * dphi1 * (i1 + 1.0));
        }
      }
      for (int i1 = 0; i1 < n1; ++i1) {
        const double v = plogp(row[i1], clamp);
        sum_full += v;
        if ((i0 & 1) == 0 && (i1 & 1) == 0) sum_half += v;
      }
    } else {
      std::vector<int> sub_orders(orders.begin() + 1, orders.end());
      const GridEntropy inner = entropy_tensor(sub, sub_orders, clamp);
      sum_full += -inner.full * (orders[1] * orders[2]);
      if ((i0 & 1) == 0) sum_half += -inner.half * ((orders[1] / 2) * (orders[2] / 2));
    }
  }
  std::int64_t total_full = 1, total_half = 1;
  for (std::size_t i = 0; i < r; ++i) {
    total_full *= orders[i];
    total_half *= orders[i] / 2;
  }
  ge.full = -sum_full / static_cast<double>(total_full);
  ge.half = -sum_half / static_cast<double>(total_half);
  return ge;
}

EntropyResult entropy_torus(const APDensity& p, const EntropyOptions& opt, bool as_exact_periodic) {
  const auto coords = used_coordinates(p.fn);
  const int r = static_cast<int>(coords.size());
  if (r == 0) return {0.0, 0.0, as_exact_periodic ? EntropyBackend::ExactPeriodic : EntropyBackend::Torus};
  if (as_exact_periodic && r > 1) {
    throw BackendInapplicable("exact-periodic backend needs an effective rank-1 module");
  }
  if (r > 3) throw BackendInapplicable("torus backend supports rank <= 3");

  const TorusTerms tt = reduce_harmonics(p.fn, coords);
  std::vector<int> orders(r);
  for (int i = 0; i < r; ++i) {
    const int base = r == 1 ? opt.order_rank1 : (r == 2 ? opt.order_rank2 : opt.order_rank3);
    const int cap = r == 1 ? opt.max_order_rank1 : opt.max_order_rank23;
    const int needed = next_pow2(static_cast<int>(
        std::min<std::int64_t>(opt.harmonic_oversampling * tt.extent[i], cap)));
    orders[i] = std::clamp(std::max(base, needed), 4, cap);
  }
  const GridEntropy ge = r == 1 ? entropy_rank1(tt, orders[0], opt.clamp)
                                : entropy_tensor(tt, orders, opt.clamp);
  EntropyResult res;
  res.value = ge.full;
  res.error = std::abs(ge.full - ge.half) + 1e-12;
  res.backend = as_exact_periodic ? EntropyBackend::ExactPeriodic : EntropyBackend::Torus;
  return res;
}

// Composite GL-8 average of -p log p over [0, X], panels tied to the fastest
// oscillation, capped by the point budget.
constexpr double kGl8Nodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                 -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
constexpr double kGl8Weights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                   0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};

double time_average_rung(const APDensity& p, double X, std::size_t panels, double clamp) {
  const double h = X / static_cast<double>(panels);
  // evaluate the density at all panel nodes via per-term phase recurrence
  std::vector<double> values(panels * 8, 0.0);
  const auto& module = *p.fn.module();
  for (const auto& [freq, coeff] : p.fn.terms()) {
    if (freq_is_zero(freq)) {
      for (auto& v : values) v += coeff.real();
      continue;
    }
    const double w = module.value_of(freq);
    if (w < 0.0) continue;  // conjugate-symmetric: fold into 2 Re
    const Complex step = std::polar(1.0, w * h);
    for (int q = 0; q < 8; ++q) {
      const double t0 = (0.5 + 0.5 * kGl8Nodes[q]) * h;
      Complex phase = std::polar(1.0, w * t0);
      for (std::size_t pa = 0; pa < panels; ++pa) {
        values[pa * 8 + q] += 2.0 * (coeff * phase).real();
        phase *= step;
        if ((pa & 0xfff) == 0xfff) phase = std::polar(1.0, w * (t0 + h * (pa + 1.0)));
      }
    }
  }
  double acc = 0.0;
  for (std::size_t pa = 0; pa < panels; ++pa) {
    double panel = 0.0;
    for (int q = 0; q < 8; ++q) panel += kGl8Weights[q] * plogp(values[pa * 8 + q], clamp);
    acc += panel * 0.5 * h;
  }
  return -acc / X;
}

EntropyResult entropy_time_average(const APDensity& p, const EntropyOptions& opt) {
  const double w_min = min_positive_frequency(p.fn);
  const double w_max = max_abs_frequency(p.fn);
  if (w_min == 0.0) return {0.0, 0.0, EntropyBackend::TimeAverage};

  const double x0 = opt.ladder_base_periods * 2.0 * M_PI / w_min;
  const double fastest_period = 2.0 * M_PI / w_max;
  std::vector<double> ladder;
  double value = 0.0;
  std::size_t last_panels = 0;
  double last_x = x0;
  for (int k = 0; k <= opt.ladder_max_k; ++k) {
    const double X = x0 * static_cast<double>(1 << k);
    std::size_t panels = static_cast<std::size_t>(std::ceil(2.0 * X / fastest_period));
    panels = std::clamp<std::size_t>(panels, 8, opt.max_points_per_rung / 8);
    value = time_average_rung(p, X, panels, opt.clamp);
    ladder.push_back(value);
    last_panels = panels;
    last_x = X;
    if (opt.convergence_target > 0.0 && ladder.size() >= 3) {
      const double spread = std::max(std::abs(ladder[ladder.size() - 2] - value),
                                     std::abs(ladder[ladder.size() - 3] - value));
      if (spread <= opt.convergence_target) break;
    }
  }
  double spread = 0.0;
  for (std::size_t i = ladder.size() >= 3 ? ladder.size() - 3 : 0; i < ladder.size(); ++i) {
    spread = std::max(spread, std::abs(ladder[i] - value));
  }
  // quadrature bias check: halve the step at the final horizon
  double bias = 0.0;
  if (last_panels < opt.max_points_per_rung / 16) {
    bias = std::abs(time_average_rung(p, last_x, last_panels * 2, opt.clamp) - value);
  }
  const double error = spread + bias + 1e-12;
  if (opt.convergence_target > 0.0 && spread > opt.convergence_target) {
    throw NonConvergent("time-average ladder spread " + std::to_string(spread) +
                        " above target after max horizon");
  }
  return {value, error, EntropyBackend::TimeAverage};
}

EntropyResult entropy_factorized(const APDensity& p, const EntropyOptions& opt) {
  auto parts = try_factorize(p);
  if (!parts) throw BackendInapplicable("density does not factorize over disjoint basis coordinates");
  const EntropyResult a = entropy(parts->first, EntropyBackend::Auto, opt);
  const EntropyResult b = entropy(parts->second, EntropyBackend::Auto, opt);
  return {a.value + b.value, a.error + b.error, EntropyBackend::Factorized};
}

}  // namespace

std::optional<std::pair<APDensity, APDensity>> try_factorize(const APDensity& p, double tol) {
  const auto coords = used_coordinates(p.fn);
  if (coords.size() < 2) return std::nullopt;
  const auto& module = p.fn.module();

  for (const int pivot : coords) {
    // split candidate: A = {pivot}, B = the rest
    APFunction pa(module), pb(module);
    for (const auto& [freq, coeff] : p.fn.terms()) {
      bool in_a = true, in_b = true;
      for (const int c : coords) {
        if (freq[c] == 0) continue;
        if (c == pivot) {
          in_b = false;
        } else {
          in_a = false;
        }
      }
      if (in_a && in_b) {  // zero vector
        pa.add_term(freq, coeff);
        pb.add_term(freq, coeff);
      } else if (in_a) {
        pa.add_term(freq, coeff);
      } else if (in_b) {
        pb.add_term(freq, coeff);
      }
    }
    if (pa.term_count() < 2 || pb.term_count() < 2) continue;
    // verify a_{m+n} = a1_m * a2_n over the whole product support
    bool ok = true;
    std::size_t matched = 0;
    for (const auto& [fa, ca] : pa.terms()) {
      for (const auto& [fb, cb] : pb.terms()) {
        const Complex expect = freq_is_zero(fa) && freq_is_zero(fb) ? Complex(1.0) : ca * cb;
        const Complex got = p.fn.coefficient(freq_add(fa, fb));
        if (std::abs(got - expect) > tol * std::max(1.0, std::abs(expect))) {
          ok = false;
          break;
        }
        ++matched;
      }
      if (!ok) break;
    }
    if (!ok || matched < p.fn.term_count()) continue;
    // total-weight consistency: Parseval norms multiply for disjoint factors
    if (std::abs(parseval_norm(p.fn) - parseval_norm(pa) * parseval_norm(pb)) >
        1e-9 * parseval_norm(p.fn)) {
      continue;
    }
    APDensity da = make_density(std::move(pa), 1e-9, 1u << 12, /*fatal=*/false);
    APDensity db = make_density(std::move(pb), 1e-9, 1u << 12, /*fatal=*/false);
    return std::make_pair(std::move(da), std::move(db));
  }
  return std::nullopt;
}

EntropyResult entropy(const APDensity& p, EntropyBackend backend, const EntropyOptions& opt) {
  if (!p.certificate.passed) {
    throw PositivityCheckFailed("density carries a failed positivity certificate");
  }
  if (p.fn.term_count() <= 1) {
    // uniform density: S = 0 exactly under every backend
    return {0.0, 0.0, backend == EntropyBackend::Auto ? EntropyBackend::ExactPeriodic : backend};
  }
  switch (backend) {
    case EntropyBackend::ExactPeriodic:
      return entropy_torus(p, opt, /*as_exact_periodic=*/true);
    case EntropyBackend::Torus:
      return entropy_torus(p, opt, /*as_exact_periodic=*/false);
    case EntropyBackend::TimeAverage:
      return entropy_time_average(p, opt);
    case EntropyBackend::Factorized:
      return entropy_factorized(p, opt);
    case EntropyBackend::Auto:
      break;
  }
  const auto coords = used_coordinates(p.fn);
  if (coords.size() <= 1) return entropy_torus(p, opt, /*as_exact_periodic=*/true);
  if (auto parts = try_factorize(p)) {
    const EntropyResult a = entropy(parts->first, EntropyBackend::Auto, opt);
    const EntropyResult b = entropy(parts->second, EntropyBackend::Auto, opt);
    return {a.value + b.value, a.error + b.error, EntropyBackend::Factorized};
  }
  if (coords.size() <= 3) return entropy_torus(p, opt, /*as_exact_periodic=*/false);
  return entropy_time_average(p, opt);
}

ResolutionReport resolve(const StateVector& psi, EntropyBackend backend,
                         const EntropyOptions& options) {
  ResolutionReport report;
  const APDensity density = canonical_density(psi);
  report.purity = purity(density);
  const EntropyResult ent = entropy(density, backend, options);
  report.entropy = ent.value;
  report.entropy_error = ent.error;
  report.entropy_backend = ent.backend;
  report.information = -ent.value;
  report.energy_entropy = energy_entropy(psi);
  report.eur_slack = report.energy_entropy + report.entropy;
  if (!resonance_report(*psi.spectrum).has_shared_resonances) {
    double sum_p2 = 0.0;
    for (int j = 0; j < psi.spectrum->level_count(); ++j) {
      const double pj = psi.level_probability(j);
      sum_p2 += pj * pj;
    }
    report.exact_ur_residual = std::abs(report.purity + sum_p2 - 2.0);
  }
  return report;
}

double verify_eur(const StateVector& psi, EntropyBackend backend, const EntropyOptions& options) {
  return resolve(psi, backend, options).eur_slack;
}

bool entropy_purity_bound(const ResolutionReport& report) {
  return report.entropy >= -std::log(report.purity) - report.entropy_error - 1e-12;
}

}  // namespace apclock
