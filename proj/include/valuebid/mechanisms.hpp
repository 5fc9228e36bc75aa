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

#ifndef VALUEBID_MECHANISMS_HPP_
#define VALUEBID_MECHANISMS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "valuebid/market.hpp"
#include "valuebid/rat.hpp"
#include "valuebid/tape.hpp"

namespace valuebid {

// The auction rules of this library. Every one of them charges pay-as-bid:
// a winner pays exactly his reported value for the bundle he receives, so
// truthful bidders never end up with negative utility.
enum class MechanismId {
  kPo,          // greedy highest-value pair auction
  kRevMax,      // revenue-maximizing allocation, pay-as-bid (manipulable)
  kSpGreedy,    // greedy for single-minded bidders
  kGolden,      // 2-bidder 2-unit rule with the golden-ratio threshold
  kRand2x2,     // randomized 2-bidder 2-unit split-or-sweep rule
  kStrongest,   // grand bundle to the highest grand-bundle bid
  kFrameworkU,  // randomized reserve-price framework
  kDemo3x4,     // fixed 3-bidder 4-unit rule, kept as a manipulable foil
};

std::string ToString(MechanismId id);
MechanismId MechanismIdFromString(std::string_view text);  // throws ParseError

// True for rules that may consume tape draws on some input.
bool UsesRandomness(MechanismId id);

struct MechanismResult {
  Outcome outcome;
  // Human-readable decision records, one step per line, with all numbers
  // rendered exactly. Equal inputs produce byte-identical traces.
  std::vector<std::string> trace;
};

// Repeatedly awards the highest-value (bidder, bundle) pair among the
// remaining bidders and items at a price equal to that value. Ties prefer
// the smaller bundle, then the lower bidder index, then the smaller bundle
// raw order.
MechanismResult PoAuction(const Market& market);

// Revenue-optimal allocation charged pay-as-bid. Not truthful; it is the
// benchmark that shading attacks are demonstrated against.
MechanismResult RevenueMaxPayAsBid(const Market& market);

// For markets where every bidder has exactly one atom (S*, v*): bidders in
// descending v* order win their S* if it is still free. Monotone in each
// bid, hence truthful for value bidders.
MechanismResult SingleParameterGreedy(const Market& market);

// Two bidders, two units, bidder 0 publicly strongest. Splits one unit
// each when the weak bidder's single-unit bid beats (sqrt(5)-1)/2 times
// the strong two-unit bid, tested via an exact quadratic; otherwise both
// units go to the strong side. A two-unit tie with both single-unit bids
// below threshold is settled by one coin draw.
MechanismResult GoldenRatio(const Market& market, RandomTape& tape);

// Two bidders, two units, strict two-unit comparison. With probability
// q = weak single-unit bid / strong two-unit bid the units are split one
// each, otherwise the strong bidder takes both.
MechanismResult Randomized2x2(const Market& market, RandomTape& tape);

// Closed-form expectation of Randomized2x2's revenue over the coin.
Rat ExactExpectedRevenue2x2(const Market& market);

// Shape shared by Randomized2x2 and its expectation-mode analysis: the
// strict strong/weak split and the one-unit-each probability
// q = weak single-unit bid / strong two-unit bid, always in [0, 1).
// Throws PreconditionError on any market outside that shape.
struct Rand2x2Profile {
  int strong;
  int weak;
  Rat split_probability;
};

Rand2x2Profile AnalyzeRand2x2(const Market& market);

// The whole supply goes to the highest grand-bundle bid (ties: lowest
// index) at that bid.
MechanismResult StrongestBidder(const Market& market);

// Randomized reserve-price framework. Phase I labels each bidder GRAND
// with probability 1-epsilon, FIXED or STAT with epsilon/2 each (explicit
// tape labels override the draws). Phase II computes the fractional
// optimum of the STAT submarket. Phase III sells the grand bundle to the
// best GRAND bidder if his bid is at least opt_star/sqrt(m). Phase IV
// otherwise serves FIXED bidders in index order at posted unit price
// epsilon*opt_star/(8m), each receiving his most valuable affordable
// bundle among the remaining items.
MechanismResult FrameworkU(const Market& market, const Rat& epsilon,
                           RandomTape& tape);

// Verbatim five-clause allocation rule for three bidders and four units.
// Deliberately manipulable; exists as the audit target showing that a
// mechanism can satisfy pay-as-bid yet reward misreports.
MechanismResult Demo3x4Rule(const Market& market);

// Dispatch by id. `epsilon` only matters for kFrameworkU; the tape is
// consulted only by rules that need it on the given input.
MechanismResult RunMechanism(MechanismId id, const Market& market,
                             RandomTape& tape, const Rat& epsilon);

}  // namespace valuebid

#endif  // VALUEBID_MECHANISMS_HPP_
