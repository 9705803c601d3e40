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

#include <stdexcept>
#include <string>

namespace apclock {

/// Base class for all apclock errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySpectrum : public Error {
 public:
  using Error::Error;
};

class DuplicateLevel : public Error {
 public:
  using Error::Error;
};

class CommensurateFrequencies : public Error {
 public:
  using Error::Error;
};

class ModuleMismatch : public Error {
 public:
  using Error::Error;
};

class TermBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SharedResonances : public Error {
 public:
  using Error::Error;
};

class PositivityCheckFailed : public Error {
 public:
  using Error::Error;
};

class BackendInapplicable : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class DiagonalViolation : public Error {
 public:
  using Error::Error;
};

class RevivalUndefined : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace apclock
