// Copyright 2026 The qmz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMZ_ERRORS_H_
#define QMZ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qmz {

// Argument outside the mathematical domain of an operation (negative Poisson
// rate, negative Lambert W argument, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Request that the model does not cover, e.g. a lossy Wigner grid or a
// measurement distribution for a N00N probe.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed: quadrature did not converge, a density
// underflowed, a Fock truncation dropped too much weight.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmz

#endif  // QMZ_ERRORS_H_
