// Copyright 2026 The ldpq Authors
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

#ifndef LDPQ_ERRORS_H_
#define LDPQ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ldpq {

// Invalid argument, dimension mismatch or value outside a type's domain.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The operation is not available for the given object (e.g. an audit of a
// randomizer that cannot report exact output probabilities).
class UnsupportedError : public std::logic_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

// Every user of the rejection-sampling protocol returned the bottom report.
class AllUsersDroppedError : public std::runtime_error {
 public:
  explicit AllUsersDroppedError(const std::string& what)
      : std::runtime_error(what) {}
};

// An adaptive strategy produced a query outside the admissible L-inf ball.
class QueryValidationError : public DomainError {
 public:
  explicit QueryValidationError(const std::string& what) : DomainError(what) {}
};

}  // namespace ldpq

#endif  // LDPQ_ERRORS_H_
