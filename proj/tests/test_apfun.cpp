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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apclock/apfun.hpp"
#include "apclock/errors.hpp"
#include "apclock/rng.hpp"

using namespace apclock;

namespace {

std::shared_ptr<const FrequencyModule> unit_module() {
  return FrequencyModule::exact({1.0}, 1);
}

APFunction term(std::shared_ptr<const FrequencyModule> m, std::int64_t freq, Complex a) {
  APFunction f(std::move(m));
  f.add_term({freq}, a);
  return f;
}

APFunction cosine(std::shared_ptr<const FrequencyModule> m, std::int64_t freq) {
  APFunction f(std::move(m));
  f.add_term({freq}, 0.5);
  f.add_term({-freq}, 0.5);
  return f;
}

}  // namespace

TEST_CASE("evaluate: constants and cosines") {
  auto m = unit_module();
  CHECK(evaluate(APFunction::constant(m, 1.0), 123.4).real() == doctest::Approx(1.0));
  const APFunction c = cosine(m, 1);
  CHECK(evaluate(c, 0.0).real() == doctest::Approx(1.0));
  CHECK(evaluate(c, M_PI).real() == doctest::Approx(-1.0));
  CHECK(std::abs(evaluate(c, M_PI).imag()) < 1e-15);
}

TEST_CASE("add cancels opposite terms to the zero function") {
  auto m = unit_module();
  const APFunction f = term(m, 3, 1.0);
  const APFunction g = term(m, 3, -1.0);
  CHECK(add(f, g).term_count() == 0);
}

TEST_CASE("conjugate mirrors frequencies") {
  auto m = unit_module();
  const APFunction f = term(m, 2, Complex(0.0, 1.0));
  const APFunction c = conjugate(f);
  CHECK(c.coefficient({-2}) == Complex(0.0, -1.0));
  CHECK(c.coefficient({2}) == Complex(0.0, 0.0));
}

TEST_CASE("scale multiplies coefficients") {
  auto m = unit_module();
  APFunction f(m);
  f.add_term({0}, 1.0);
  f.add_term({1}, 2.0);
  const APFunction g = scale(f, 3.0);
  CHECK(g.coefficient({0}).real() == doctest::Approx(3.0));
  CHECK(g.coefficient({1}).real() == doctest::Approx(6.0));
}

TEST_CASE("multiply: hand-convolved products") {
  auto m = unit_module();
  // e^{iwt} e^{-iwt} = 1
  const APFunction a = multiply(term(m, 1, 1.0), term(m, -1, 1.0));
  CHECK(a.term_count() == 1);
  CHECK(a.coefficient({0}).real() == doctest::Approx(1.0));

  // (1 + e^{iwt})(1 + e^{-iwt}) = 2 + e^{iwt} + e^{-iwt}
  APFunction f(m), g(m);
  f.add_term({0}, 1.0);
  f.add_term({1}, 1.0);
  g.add_term({0}, 1.0);
  g.add_term({-1}, 1.0);
  const APFunction p = multiply(f, g);
  CHECK(p.coefficient({0}).real() == doctest::Approx(2.0));
  CHECK(p.coefficient({1}).real() == doctest::Approx(1.0));
  CHECK(p.coefficient({-1}).real() == doctest::Approx(1.0));

  // identity
  const APFunction same = multiply(f, APFunction::constant(m, 1.0));
  CHECK(same.coefficient({1}) == f.coefficient({1}));
}

TEST_CASE("multiply enforces the term budget") {
  auto m = FrequencyModule::exact({1.0, std::sqrt(2.0), std::sqrt(3.0)}, 1);
  APFunction f(m), g(m);
  for (std::int64_t i = 0; i < 12; ++i) {
    f.add_term({i, 1, 0}, 1.0);
    g.add_term({0, i, 1}, 1.0);
  }
  CHECK_THROWS_AS(multiply(f, g, 100), TermBudgetExceeded);
  CHECK_NOTHROW(multiply(f, g, 1000));
}

TEST_CASE("module mismatch is rejected") {
  const APFunction f = term(unit_module(), 1, 1.0);
  const APFunction g = term(unit_module(), 1, 1.0);  // distinct module object
  CHECK_THROWS_AS(add(f, g), ModuleMismatch);
  CHECK_THROWS_AS(multiply(f, g), ModuleMismatch);
}

TEST_CASE("besicovitch mean extracts the zero coefficient") {
  auto m = FrequencyModule::exact({1.3}, 1);
  CHECK(std::abs(besicovitch_mean(term(m, 1, 1.0))) == doctest::Approx(0.0));
  auto u = unit_module();
  CHECK(besicovitch_mean(APFunction::constant(u, 1.0)).real() == doctest::Approx(1.0));
  auto r2 = FrequencyModule::exact({std::sqrt(2.0)}, 1);
  APFunction f(r2);
  f.add_term({0}, 3.0);
  f.add_term({1}, 2.0);
  CHECK(besicovitch_mean(f).real() == doctest::Approx(3.0));
}

TEST_CASE("parseval: frozen example and mean(conj(f) f) identity") {
  auto m = FrequencyModule::exact({std::sqrt(2.0)}, 1);
  APFunction f(m);
  f.add_term({0}, 3.0);
  f.add_term({1}, 2.0);
  CHECK(parseval_norm(f) == doctest::Approx(13.0).epsilon(1e-14));  // 9 + 4 by hand
  CHECK(parseval_norm(APFunction::constant(unit_module(), 1.0)) == doctest::Approx(1.0));

  // property: parseval equals the mean of conj(f) * f for random functions
  Rng rng(7);
  auto m3 = FrequencyModule::exact({1.0, std::sqrt(2.0)}, 3);
  for (int trial = 0; trial < 40; ++trial) {
    APFunction g(m3);
    const int terms = 1 + static_cast<int>(rng.integer() % 10);
    for (int i = 0; i < terms; ++i) {
      const std::int64_t a = static_cast<std::int64_t>(rng.integer() % 9) - 4;
      const std::int64_t b = static_cast<std::int64_t>(rng.integer() % 9) - 4;
      g.add_term({a, b}, rng.complex_normal());
    }
    const double direct = parseval_norm(g);
    const double via_mean = besicovitch_mean(multiply(conjugate(g), g)).real();
    CHECK(direct == doctest::Approx(via_mean).epsilon(1e-12));
  }
}

TEST_CASE("schwarz inequality for the besicovitch mean") {
  Rng rng(11);
  auto m = FrequencyModule::exact({1.0, std::sqrt(5.0)}, 2);
  for (int trial = 0; trial < 40; ++trial) {
    APFunction f(m), g(m);
    for (int i = 0; i < 6; ++i) {
      const auto rv = [&]() {
        return FreqVec{static_cast<std::int64_t>(rng.integer() % 7) - 3,
                       static_cast<std::int64_t>(rng.integer() % 7) - 3};
      };
      f.add_term(rv(), rng.complex_normal());
      g.add_term(rv(), rng.complex_normal());
    }
    const double lhs = std::norm(besicovitch_mean(multiply(conjugate(f), g)));
    const double rhs = parseval_norm(f) * parseval_norm(g);
    CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("realness flag: conjugate-symmetric iff real") {
  auto m = unit_module();
  CHECK(cosine(m, 1).is_real());
  APFunction f(m);
  f.add_term({1}, Complex(0.5, 0.25));
  f.add_term({-1}, Complex(0.5, -0.25));
  CHECK(f.is_real());
  f.add_term({2}, Complex(0.1, 0.0));
  CHECK_FALSE(f.is_real());
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  auto m = FrequencyModule::exact({1.0, std::exp(1.0)}, 2);
  APFunction f(m);
  Rng rng(3);
  for (int i = 0; i < 8; ++i) {
    f.add_term({static_cast<std::int64_t>(rng.integer() % 11) - 5,
                static_cast<std::int64_t>(rng.integer() % 11) - 5},
               rng.complex_normal());
  }
  std::vector<Complex> grid(1000);
  evaluate_grid(f, -3.0, 0.017, grid);
  for (int i : {0, 1, 499, 998, 999}) {
    const Complex direct = evaluate(f, -3.0 + 0.017 * i);
    CHECK(std::abs(grid[i] - direct) < 1e-12);
  }
}

TEST_CASE("empirical mean: whole periods, constants, and the 1/X envelope") {
  const auto unit_wave = [](double t) { return std::polar(1.0, t); };
  const MeanEstimate whole = empirical_mean_estimate(unit_wave, 8.0 * M_PI);
  CHECK(std::abs(whole.value) < 1e-12);

  const MeanEstimate constant =
      empirical_mean_estimate([](double) { return Complex(1.0, 0.0); }, 17.3);
  CHECK(constant.value.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(constant.error < 1e-13);

  // |mean of e^{i sqrt(2) t}| <= 2 / (sqrt(2) X), decreasing along the ladder
  const double w = std::sqrt(2.0);
  double previous = 1e300;
  for (const double X : {1e3, 1e4, 1e5}) {
    const MeanEstimate est =
        empirical_mean_estimate([&](double t) { return std::polar(1.0, w * t); }, X);
    CHECK(std::abs(est.value) <= 2.0 / (w * X) * (1.0 + 1e-6));
    CHECK(std::abs(est.value) <= previous);
    previous = std::abs(est.value);
  }
}

TEST_CASE("empirical mean of samples carries a standard error") {
  std::vector<Complex> samples(1000);
  Rng rng(5);
  for (auto& s : samples) s = Complex(1.0, 0.0) + 0.1 * rng.complex_normal();
  const MeanEstimate est = empirical_mean_estimate(samples);
  CHECK(std::abs(est.value - Complex(1.0, 0.0)) < 5.0 * est.error);
  CHECK(est.error > 0.0);
}

TEST_CASE("finite time average converges to the besicovitch mean") {
  auto m = unit_module();
  APFunction f(m);
  f.add_term({0}, 2.0);
  f.add_term({1}, 1.0);
  f.add_term({-1}, 1.0);
  CHECK(finite_time_average(f, 1e6).real() == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(finite_time_average(f, 2.0 * M_PI).real() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("density wrapper: normalisation, realness, positivity") {
  auto m = unit_module();
  APFunction ok(m);
  ok.add_term({0}, 1.0);
  ok.add_term({1}, 0.5);
  ok.add_term({-1}, 0.5);
  const APDensity d = make_density(ok);
  CHECK(d.certificate.passed);
  CHECK(d.certificate.min_value >= -1e-9);
  CHECK(d.certificate.min_value == doctest::Approx(0.0).epsilon(1e-6));

  APFunction bad_norm(m);
  bad_norm.add_term({0}, 0.5);
  CHECK_THROWS(make_density(bad_norm));

  APFunction negative(m);
  negative.add_term({0}, 1.0);
  negative.add_term({1}, 0.8);
  negative.add_term({-1}, 0.8);
  CHECK_THROWS_AS(make_density(negative), PositivityCheckFailed);
  const APDensity lenient = make_density(negative, 1e-9, 1u << 12, /*fatal=*/false);
  CHECK_FALSE(lenient.certificate.passed);
}

TEST_CASE("reconstruct_density: frozen trivial cases") {
  const std::vector<double> zeros(10, 0.0);
  const std::vector<double> freqs = {-1.0, 0.0, 1.0};
  const APDensity d = reconstruct_density(zeros, freqs);
  // all samples at 0: every coefficient is exactly 1
  for (const auto& [freq, coeff] : d.fn.terms()) {
    CHECK(coeff.real() == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(d.fn.term_count() == 3);

  const APDensity uniform = reconstruct_density(zeros, std::vector<double>{0.0});
  CHECK(uniform.fn.term_count() == 1);
}

TEST_CASE("reconstruct_density: inverse-CDF Monte Carlo against p = 1 + cos t") {
  // oracle: samples drawn from the normalised density (1 + cos t)/X on
  // [0, X = 2 pi 1e4) by inverting F(t) = (t + sin t)/X with bisection
  const double X = 2.0 * M_PI * 1e4;
  const std::size_t n = 100000;
  Rng rng(42);
  std::vector<double> samples(n);
  for (auto& s : samples) {
    const double target = rng.uniform() * X;
    double lo = 0.0, hi = X;
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid + std::sin(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    s = 0.5 * (lo + hi);
  }
  const APDensity d = reconstruct_density(samples, std::vector<double>{-1.0, 0.0, 1.0});
  double coeff = 0.0;
  for (const auto& [freq, c] : d.fn.terms()) {
    if (d.fn.module()->value_of(freq) == doctest::Approx(1.0)) coeff = c.real();
  }
  // standard error of e^{-i a} with |E| = 1/2 is sqrt((1 - 1/4) / n)
  const double se = std::sqrt(0.75 / static_cast<double>(n));
  CHECK(std::abs(coeff - 0.5) <= 3.0 * se);
}

TEST_CASE("reconstruct_density validates the frequency list") {
  const std::vector<double> samples = {0.1, 0.2};
  CHECK_THROWS(reconstruct_density(samples, std::vector<double>{1.0, 0.0}));   // not closed under negation
  CHECK_THROWS(reconstruct_density(samples, std::vector<double>{-1.0, 1.0}));  // missing zero
}
