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

#ifndef VALUEBID_ORACLES_HPP_
#define VALUEBID_ORACLES_HPP_

#include <optional>

#include "valuebid/market.hpp"
#include "valuebid/rat.hpp"

namespace valuebid {

// Exact benchmarks with no incentive content: the revenue a seller could
// extract with full knowledge of the true valuations, its LP relaxation,
// and a Pareto-dominance check for audited outcomes.

struct OptimalSolution {
  Rat value;
  Allocation allocation;
};

// Throws CapacityError when the market is too large for exhaustive
// treatment (more than 12 heterogeneous items). Multi-unit supplies are
// already capped at 64 by the item space itself.
void RequireOracleCapacity(const Market& market);

// Maximum of the summed bundle values over all feasible allocations, with
// the lexicographically smallest maximizing allocation vector. MultiUnit
// uses a dynamic program over (bidder prefix, units left); heterogeneous
// over (bidder prefix, item subset left). Throws CapacityError beyond 12
// heterogeneous items.
OptimalSolution OptimalRevenue(const Market& market);

// Value of the fractional relaxation: lottery weights x over each bidder's
// atom bundles, at most one lottery unit per bidder, unit supply per item
// (MultiUnit: total expected units at most m). Always >= OptimalRevenue.
Rat FractionalOpt(const Market& market);

struct ParetoWitness {
  Allocation allocation;
  std::vector<Rat> payments;
};

// Searches for an outcome at least as good for the seller and for every
// bidder, strictly better somewhere. The search prices every candidate at
// the winner's full value, which loses no witnesses: lowering a payment
// never raises a value bidder's utility while it does lower revenue.
// Requires the audited outcome to be individually feasible (payment at
// most value for every bidder), else PreconditionError.
std::optional<ParetoWitness> ParetoDominated(const Market& market,
                                             const Outcome& outcome);

}  // namespace valuebid

#endif  // VALUEBID_ORACLES_HPP_
