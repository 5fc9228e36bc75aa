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

#ifndef VALUEBID_AUDIT_HPP_
#define VALUEBID_AUDIT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valuebid/market.hpp"
#include "valuebid/mechanisms.hpp"
#include "valuebid/rat.hpp"
#include "valuebid/tape.hpp"

namespace valuebid {

// Scale factors applied to a whole valuation when generating misreports:
// {0, 1/2, 9/10, 11/10, 2}. Covers dropping out, shading, and overbidding.
std::vector<Rat> DefaultScaleGrid();

// Controls which misreports an audit tries for each bidder. The truthful
// valuation itself is always among them, so an audit can never report a
// violation on an empty search space.
struct DeviationOptions {
  // Each factor yields one misreport with every atom value multiplied by it.
  std::vector<Rat> scale_grid = DefaultScaleGrid();

  // Additionally try dropping each single atom from the report.
  bool zero_single_atoms = true;

  // When nonempty, also try every assignment of these values to the
  // bidder's atom bundles (full cross product). Meant for small markets;
  // the generator refuses products beyond kMaxValueGridCases.
  std::vector<Rat> value_grid;

  // When nonempty, audits repeat the truth-vs-misreport comparison with
  // every opponent's report scaled by each factor in this grid (full cross
  // product over opponents). Empty means truthful opponents only.
  std::vector<Rat> opponent_scales;
};

// Upper bound on misreports generated per bidder by the value grid.
inline constexpr long long kMaxValueGridCases = 200000;

// All candidate reports for `bidder` derived from his true valuation under
// `options`, deduplicated, with the truth itself first.
std::vector<Valuation> MisreportsFor(const Market& market, int bidder,
                                     const DeviationOptions& options);

enum class AuditStatus {
  kNoViolationFound,  // the searched grid is exhausted, not a proof
  kViolation,
};

std::string AuditStatusName(AuditStatus status);

// How utilities were compared when a violation was found.
enum class AuditMode {
  kDeterministic,  // single run, tape-independent mechanism
  kUniversal,      // fixed tape replayed for truth and deviation
  kExpectation,    // closed-form expected utilities of the randomized split
};

std::string AuditModeName(AuditMode mode);

// One profitable unilateral deviation. `base` is the market the truthful
// run used (opponents possibly rescaled), `deviated` is the same market
// with `bidder`'s report replaced; re-running the mechanism on both
// reproduces the two utilities exactly.
struct AuditWitness {
  int bidder;
  Valuation misreport;
  AuditMode mode;
  std::optional<std::uint64_t> seed;  // tape seed, for kUniversal
  std::optional<std::vector<PartitionLabel>> labels;
  Utility truthful_utility;
  Utility deviating_utility;
  Market base;
  Market deviated;
};

struct AuditVerdict {
  AuditStatus status = AuditStatus::kNoViolationFound;
  std::optional<AuditWitness> witness;
  // Deviations actually evaluated, and deviations dropped because the
  // modified market no longer met the mechanism's preconditions.
  long long cases_checked = 0;
  long long cases_skipped = 0;

  bool found() const { return status == AuditStatus::kViolation; }
};

// Checks that no bidder can strictly gain by a grid misreport while the
// others stay truthful, using the true valuation to score outcomes. The
// mechanism must be tape-independent; ids that may draw are rejected with
// ContractError, and a run that consumes a draw anyway trips the same
// error. Returns the first strict improvement in search order.
AuditVerdict AuditDeterministic(MechanismId id, const Market& market,
                                const DeviationOptions& options = {});

// Replays the deterministic audit with each tape held fixed, so a coin
// pattern profitable to deviate against on any single tape is reported.
// Tapes with explicit partition labels make the reserve-price framework
// fully deterministic per tape.
AuditVerdict AuditUniversal(MechanismId id, const Market& market,
                            const Rat& epsilon,
                            const std::vector<RandomTape>& tapes,
                            const DeviationOptions& options = {});

// Compares exact expected utilities under the randomized two-bidder
// two-unit split rule. A misreport whose payment exceeds the true value in
// an outcome of positive probability scores minus infinity, so risky
// overbids can never register as improvements.
AuditVerdict AuditExpectation2x2(const Market& market,
                                 const DeviationOptions& options = {});

// revenue / optimal revenue for one run. The randomized split rule is
// scored by its exact expected revenue and ignores the tape. A market
// whose optimum is zero has nothing to sell; its ratio is 1 by convention.
Rat MechanismRatio(MechanismId id, const Market& market, RandomTape& tape,
                   const Rat& epsilon);

}  // namespace valuebid

#endif  // VALUEBID_AUDIT_HPP_
