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

#include "apclock/errors.hpp"
#include "apclock/state.hpp"

using namespace apclock;

namespace {

StateVector two_level_equal() {
  auto s = harmonic_spectrum(1.0, 1);
  Eigen::VectorXcd amp(2);
  amp << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return make_state(s, amp);
}

// test-only shift: theta(t + tau) has coefficients a_j e^{i w_j tau}
APFunction shifted(const APFunction& f, double tau) {
  APFunction out(f.module());
  for (const auto& [freq, coeff] : f.terms()) {
    out.add_term(freq, coeff * std::polar(1.0, f.module()->value_of(freq) * tau));
  }
  return out;
}

}  // namespace

TEST_CASE("evolve: tau = 0 and eigenstates are fixed points") {
  auto s = hydrogen_spectrum(1.0, 4);
  Rng rng(1);
  const StateVector psi = random_state(s, rng);
  const StateVector same = evolve(psi, 0.0);
  CHECK((same.amplitudes - psi.amplitudes).norm() < 1e-15);

  const StateVector eig = eigenstate(s, 2);
  const StateVector moved = evolve(eig, 0.37);
  // same state up to a global phase
  CHECK(std::abs(std::abs(moved.amplitudes.dot(eig.amplitudes)) - 1.0) < 1e-14);
}

TEST_CASE("evolve: two-level phases") {
  const StateVector psi = two_level_equal();
  const StateVector moved = evolve(psi, M_PI);
  CHECK(moved.amplitude(0) == psi.amplitude(0));
  // c_1 picks up e^{-i E_1 pi} = -1
  CHECK(std::abs(moved.amplitude(1) - (-psi.amplitude(1))) < 1e-15);
  CHECK(std::abs(moved.amplitudes.norm() - 1.0) < 1e-15);
}

TEST_CASE("time representation of an eigenstate is a single term") {
  auto s = hydrogen_spectrum(1.0, 3);
  const TimeRepresentation rep = time_representation(eigenstate(s, 0));
  REQUIRE(rep.theta.size() == 1);
  CHECK(rep.theta[0].term_count() == 1);
  CHECK(rep.theta[0].coefficient(s->energy_rep(0)).real() == doctest::Approx(1.0));
}

TEST_CASE("time representation of the two-level superposition") {
  const StateVector psi = two_level_equal();
  const TimeRepresentation rep = time_representation(psi);
  REQUIRE(rep.theta.size() == 1);
  CHECK(rep.theta[0].term_count() == 2);
  for (const auto& [freq, coeff] : rep.theta[0].terms()) {
    CHECK(std::abs(coeff) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
}

TEST_CASE("evolved representation shifts: theta_tau(t) = theta_0(t - tau)") {
  auto s = hydrogen_spectrum(1.0, 4);
  Rng rng(2);
  const StateVector psi = random_state(s, rng);
  const double tau = 1.234;
  const APFunction theta_tau = time_representation(evolve(psi, tau)).theta[0];
  const APFunction expected = shifted(time_representation(psi).theta[0], -tau);
  for (const auto& [freq, coeff] : theta_tau.terms()) {
    CHECK(std::abs(coeff - expected.coefficient(freq)) < 1e-14);
  }
}

TEST_CASE("state normalisation flows through the representation (parseval)") {
  auto s = isotropic2_spectrum(1.0, 4);
  Rng rng(3);
  const StateVector psi = random_state(s, rng);
  const TimeRepresentation rep = time_representation(psi);
  double total = 0.0;
  for (const auto& theta : rep.theta) total += parseval_norm(theta);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("canonical density: eigenstate is uniform") {
  auto s = hydrogen_spectrum(1.0, 4);
  const APDensity d = canonical_density(eigenstate(s, 1));
  CHECK(d.fn.term_count() == 1);
  CHECK(besicovitch_mean(d.fn).real() == doctest::Approx(1.0));
  CHECK(d.evaluate(17.3) == doctest::Approx(1.0));
}

TEST_CASE("canonical density: two-level superposition gives 1 + cos t") {
  const APDensity d = canonical_density(two_level_equal());
  CHECK(d.fn.term_count() == 3);
  for (double t : {0.0, 0.5, 1.7, 3.14, 6.4}) {
    CHECK(d.evaluate(t) == doctest::Approx(1.0 + std::cos(t)).epsilon(1e-12));
  }
  CHECK(besicovitch_mean(d.fn).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("degenerate isotropic product state reproduces the Poisson kernel") {
  const double u = 0.5;
  auto s = isotropic2_spectrum(1.0, 40);
  const StateVector psi = isotropic_product_state(s, u);
  const APDensity d = canonical_density(psi);
  for (int i = 0; i < 200; ++i) {
    const double t = 4.0 * M_PI * i / 199.0;
    const double expect = (1.0 - u * u) / (1.0 + u * u - 2.0 * u * std::cos(t));
    CHECK(d.evaluate(t) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("degeneracy relabelling leaves the density unchanged") {
  // uniformly degenerate spectrum: a slot permutation applied consistently
  // across levels permutes the moduli in p = sum_d |theta_d|^2
  auto s = Spectrum::from_values({0.0, 1.3, 2.1}, {3, 3, 3});
  Rng rng(4);
  StateVector psi = random_state(s, rng);
  const APDensity before = canonical_density(psi);
  StateVector permuted = psi;
  const int perm[3] = {2, 0, 1};
  for (int level = 0; level < 3; ++level) {
    for (int d = 0; d < 3; ++d) {
      permuted.amplitudes(s->offset(level) + perm[d]) = psi.amplitudes(s->offset(level) + d);
    }
  }
  const APDensity after = canonical_density(permuted);
  for (double t : {0.0, 0.7, 2.9, 5.0}) {
    CHECK(after.evaluate(t) == doctest::Approx(before.evaluate(t)).epsilon(1e-12));
  }

  // slot-dependent global phases also drop out of the moduli
  auto iso = isotropic2_spectrum(1.0, 3);
  StateVector chi = random_state(iso, rng);
  const APDensity base = canonical_density(chi);
  StateVector rotated = chi;
  for (int level = 0; level < iso->level_count(); ++level) {
    for (int d = 0; d < iso->degeneracy(level); ++d) {
      rotated.amplitudes(iso->offset(level) + d) *= std::polar(1.0, 0.61 * (d + 1));
    }
  }
  const APDensity phased = canonical_density(rotated);
  for (double t : {0.0, 0.7, 2.9, 5.0}) {
    CHECK(phased.evaluate(t) == doctest::Approx(base.evaluate(t)).epsilon(1e-12));
  }
}

TEST_CASE("canonical density zero coefficient is exactly one") {
  Rng rng(5);
  for (const auto& s : {harmonic_spectrum(1.0, 6), hydrogen_spectrum(1.0, 6),
                        anisotropic2_spectrum(1.0, std::sqrt(2.0), 2)}) {
    for (int trial = 0; trial < 5; ++trial) {
      const APDensity d = canonical_density(random_state(s, rng));
      CHECK(std::abs(besicovitch_mean(d.fn) - Complex(1.0)) < 1e-13);
    }
  }
}

TEST_CASE("autocorrelation: normalisation and eigenstate modulus") {
  auto s = hydrogen_spectrum(1.0, 5);
  Rng rng(6);
  const StateVector psi = random_state(s, rng);
  const APFunction a = autocorrelation(psi);
  CHECK(evaluate(a, 0.0).real() == doctest::Approx(1.0).epsilon(1e-12));

  const APFunction ae = autocorrelation(eigenstate(s, 3));
  for (double tau : {0.0, 1.0, 7.7}) {
    CHECK(std::abs(evaluate(ae, tau)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("autocorrelation equals mu_ap[theta^*(t) theta(t+tau)] (oracle)") {
  auto s = hydrogen_spectrum(1.0, 5);
  Rng rng(7);
  const StateVector psi = random_state(s, rng);
  const APFunction a = autocorrelation(psi);
  const APFunction theta = time_representation(psi).theta[0];
  for (int i = 0; i < 20; ++i) {
    const double tau = -10.0 + i * 1.05;
    const Complex direct = evaluate(a, tau);
    const Complex via_mean = besicovitch_mean(multiply(conjugate(theta), shifted(theta, tau)));
    CHECK(std::abs(direct - via_mean) < 1e-10);
  }
}

TEST_CASE("covariance: densities shift with evolution") {
  std::vector<double> grid(100);
  for (int i = 0; i < 100; ++i) grid[i] = -6.0 + 0.123 * i;

  CHECK(covariance_check(two_level_equal(), 0.0, grid) == doctest::Approx(0.0));
  CHECK(covariance_check(two_level_equal(), 1.7, grid) <= 1e-10);

  auto aniso = anisotropic2_spectrum(1.0, std::sqrt(2.0), 2);
  const StateVector product = product_coherent_state(aniso, 0.4, 0.3);
  CHECK(covariance_check(product, std::sqrt(3.0), grid) <= 1e-10);
}

TEST_CASE("covariance property on random states") {
  Rng rng(8);
  std::vector<double> grid(64);
  for (int i = 0; i < 64; ++i) grid[i] = 0.2 * i;
  auto s = hydrogen_spectrum(1.0, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = random_state(s, rng);
    const double tau = rng.uniform(-20.0, 20.0);
    CHECK(covariance_check(psi, tau, grid) <= 1e-10);
  }
}

TEST_CASE("coherent phase state: truncation and amplitudes") {
  const double u = 0.5;
  const StateVector psi = coherent_phase_state(u, 1.0, 1e-12);
  CHECK(std::abs(psi.amplitudes.norm() - 1.0) < 1e-14);
  for (int j = 1; j < 5; ++j) {
    CHECK(std::abs(psi.amplitude(j) / psi.amplitude(j - 1) - u) < 1e-12);
  }
  const int levels = psi.spectrum->level_count();
  CHECK(std::pow(u, 2.0 * levels) < 1e-12);
}

TEST_CASE("mode-labelled product state matches the lattice") {
  auto aniso = anisotropic2_spectrum(1.0, std::sqrt(2.0), 2);
  const StateVector psi = product_coherent_state(aniso, 0.5, 0.25);
  double expect_norm = 0.0;
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) expect_norm += std::pow(0.5, 2 * m) * std::pow(0.25, 2 * n);
  }
  for (int j = 0; j < aniso->level_count(); ++j) {
    const auto label = aniso->mode_label(j);
    REQUIRE(label.has_value());
    const double expect = std::pow(0.5, (*label)[0]) * std::pow(0.25, (*label)[1]) /
                          std::sqrt(expect_norm);
    CHECK(std::abs(psi.amplitude(j) - expect) < 1e-12);
  }
}
