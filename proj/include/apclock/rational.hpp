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
#include <numeric>
#include <string>

#include "apclock/errors.hpp"

namespace apclock {

/// Exact rational p/q over int64, always stored normalised (q > 0, gcd(p,q)=1).
/// Arithmetic goes through 128-bit intermediates and throws ArithmeticOverflow
/// rather than wrapping.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  explicit Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalise(); }

  /// Parses "p/q" or a plain integer "p".
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

 private:
  void normalise();
  std::int64_t num_;
  std::int64_t den_;
};

/// lcm with overflow detection.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

}  // namespace apclock
