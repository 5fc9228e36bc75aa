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

#ifndef VALUEBID_SCENARIO_HPP_
#define VALUEBID_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valuebid/market.hpp"
#include "valuebid/rat.hpp"
#include "valuebid/tape.hpp"

namespace valuebid {

// A scenario file is a JSON object:
//
//   {
//     "items": {"multiunit": 2}            // or {"heterogeneous": ["A","B"]}
//     "bidders": [{"atoms": [[1, 64], [2, 100]], "budget": 30}, ...],
//     "psb": 0,                            // optional strongest bidder
//     "epsilon": 0.1,                      // optional, for the framework
//     "seed": 42,                          // optional tape seed
//     "partition_labels": ["GRAND", ...]   // optional, one per bidder
//   }
//
// Bundles are unit counts or item-name arrays. Money fields are decimal
// numbers and are parsed from their unrounded source text, so 10.1 means
// exactly 101/10; an exact fraction may also be written as a string
// ("1/3"). Unknown or duplicate fields are rejected.
struct Scenario {
  Market market;
  std::optional<Rat> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<PartitionLabel>> partition_labels;
};

// Parses scenario text. Structural errors carry the line and column from
// the JSON reader; schema errors name the offending field path. Throws
// ParseError for malformed input; a psb designation contradicted by the
// bid profile keeps its PreconditionError.
Scenario ParseScenario(const std::string& text);

// Reads and parses one file; every error message is prefixed with the
// path.
Scenario LoadScenario(const std::string& path);

// Canonical rendering: fixed field order, one bidder per line, every
// money amount written as its shortest exact decimal (or a fraction
// string when no finite decimal exists). Parsing the result reproduces
// the scenario exactly, which is what makes emitted witnesses replayable.
std::string SerializeScenario(const Scenario& scenario);

// 64-bit FNV-1a hash of the canonical rendering, as 16 hex digits. Layout
// differences between files that parse to the same scenario do not change
// the digest.
std::string ScenarioDigest(const Scenario& scenario);

}  // namespace valuebid

#endif  // VALUEBID_SCENARIO_HPP_
