// Copyright 2026 The valuebid Authors
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

#ifndef VALUEBID_ERRORS_HPP_
#define VALUEBID_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace valuebid {

// Error taxonomy. The CLI maps these onto its exit-code contract:
// ParseError -> 2, everything else below -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A value is outside its declared domain (bundle not in the item space,
// negative money, malformed valuation atoms).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Input exceeds the sizes the exact oracles are willing to enumerate.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(what) {}
};

// An API was called with inputs of the wrong shape (wrong market
// dimensions, non-single-minded bidders, epsilon out of range, ...).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(what) {}
};

// A stated mechanism precondition does not hold for this input
// (missing or invalid strongest-bidder designation, tied two-unit
// values where strictness is required, infeasible audited outcome).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Malformed textual input, from number literals up to whole scenario
// files; `where` addresses the offending field when one is known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace valuebid

#endif  // VALUEBID_ERRORS_HPP_
