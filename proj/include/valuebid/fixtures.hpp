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

#ifndef VALUEBID_FIXTURES_HPP_
#define VALUEBID_FIXTURES_HPP_

#include <string>
#include <vector>

#include "valuebid/market.hpp"
#include "valuebid/rat.hpp"
#include "valuebid/tape.hpp"

namespace valuebid {

// Named showcase markets. Every curious corner of the mechanism zoo has
// one small market that exhibits it; the fixture suite below pins each
// market to its expected behavior, and the same markets ship as scenario
// files for the CLI.

// Two units, bidder 0 strongest with curves (64, 100) vs (55, 56): the
// golden-ratio rule sells both units to bidder 0 at 100.
Market GoldenShowcaseMarket();

// Two units, curves (10, 11) vs (10, 10): revenue maximization invites
// bidder 0 to hide his one-unit bid.
Market ShadingShowcaseMarket();

// Items {A, B}; bidder 0 wants B for 10, bidder 1 wants A for 10 or B for
// 11: revenue maximization invites bidder 1 to zero his A bid.
Market AssignmentShowcaseMarket();

// Items {A, B}; values (A:8, B:5) vs (A:7, B:6). The revenue-preferred
// and the welfare-maximizing assignments are both Pareto-undominated.
Market ParetoPairMarket();

// Three bidders, four units, two-and-four-unit bids (6,10), (6,9), (6,8):
// the five-clause rule's manipulation showcase.
Market FiveClauseShowcaseMarket();

// Three bidders over items {A, B, C, D} for the reserve-price framework:
// grand bids 50 and 40 around a pair bid of 9.
Market ReserveShowcaseMarket();
// The labeling that sends bidder 0 to the grand-bundle phase, bidder 1 to
// the posted-price phase, and bidder 2 into the statistical estimate.
std::vector<PartitionLabel> ReserveShowcaseLabels();

// Every bidder bids base + s*step for s units. The shared degradation
// family: at 2 bidders the pair auction's ratio slides toward 1/2 as step
// shrinks, at 3 bidders the strongest-bidder rule's toward 1/3.
Market UniformCurveMarket(int bidders, int units, const Rat& base,
                          const Rat& step);

// The near-golden threshold pair at x=1000: bidder 1 bids (620, 621),
// just above the golden fraction of 1000. With `shaded` bidder 0's
// one-unit bid drops from 999 to 0, which leaves the split in place but
// pushes the revenue ratio down to 31/50, inside [r, r + 1/100].
Market ThresholdPairMarket(bool shaded);

// Two bidders, three units, x=10: curves (10, 10.1, 10.3) vs
// (10, 10.1, 10.2); with `unit_bid_zeroed` bidder 1's one-unit bid is 0.
// Both variants have optimum 20.1, and every allocation that keeps bidder
// 1 at one unit or less earns at most 10.3 pay-as-bid.
Market SplitDialogueMarket(bool unit_bid_zeroed);

struct FixtureResult {
  std::string id;       // stable name, also the CLI table key
  std::string summary;  // what the fixture demonstrates
  bool passed;
  std::string detail;   // measured values, exact rationals
};

// Runs every showcase through its mechanism or audit and compares against
// the pinned expectations. Failures never throw; they come back as failed
// rows so the whole table always renders.
std::vector<FixtureResult> RunFixtureSuite();

bool AllPassed(const std::vector<FixtureResult>& results);

}  // namespace valuebid

#endif  // VALUEBID_FIXTURES_HPP_
