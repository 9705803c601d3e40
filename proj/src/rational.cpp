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

#include "apclock/rational.hpp"

#include <cstdlib>
#include <limits>

namespace apclock {

namespace {

using I128 = __int128;

std::int64_t narrow(I128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ArithmeticOverflow(std::string("rational overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

void Rational::normalise() {
  if (den_ == 0) throw ArithmeticOverflow("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(std::stoll(text));
  }
  const std::int64_t p = std::stoll(text.substr(0, slash));
  const std::int64_t q = std::stoll(text.substr(slash + 1));
  return Rational(p, q);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  const I128 n = I128(num_) * o.den_ + I128(o.num_) * den_;
  const I128 d = I128(den_) * o.den_;
  const I128 g = std::gcd(narrow(n < 0 ? -n : n, "+"), narrow(d, "+"));
  return Rational(narrow(g ? n / g : n, "+"), narrow(g ? d / g : d, "+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  const std::int64_t g1 = std::gcd(std::abs(num_), o.den_);
  const std::int64_t g2 = std::gcd(std::abs(o.num_), den_);
  const I128 n = I128(num_ / g1) * (o.num_ / g2);
  const I128 d = I128(den_ / g2) * (o.den_ / g1);
  return Rational(narrow(n, "*"), narrow(d, "*"));
}

bool Rational::operator<(const Rational& o) const {
  return I128(num_) * o.den_ < I128(o.num_) * den_;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::int64_t g = std::gcd(a, b);
  const I128 l = I128(a / g) * b;
  if (l > std::numeric_limits<std::int64_t>::max() / 4) {
    throw ArithmeticOverflow("frequency-module denominator too large");
  }
  return static_cast<std::int64_t>(l < 0 ? -l : l);
}

}  // namespace apclock
