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

#include "valuebid/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>

#include "valuebid/audit.hpp"
#include "valuebid/errors.hpp"
#include "valuebid/mechanisms.hpp"
#include "valuebid/oracles.hpp"

namespace valuebid {
namespace {

// Multi-unit market from full per-bidder bid curves; curve[s-1] is the
// s-unit bid.
Market CurveMarket(const std::vector<std::vector<Rat>>& curves,
                   std::optional<int> psb = std::nullopt) {
  const int m = static_cast<int>(curves.front().size());
  const ItemSpace space = ItemSpace::MultiUnit(m);
  std::vector<Valuation> valuations;
  valuations.reserve(curves.size());
  for (const std::vector<Rat>& curve : curves) {
    std::vector<Atom> atoms;
    for (int s = 1; s <= m; ++s) {
      atoms.push_back({space.Units(s), curve[s - 1]});
    }
    valuations.emplace_back(space, std::move(atoms));
  }
  return Market(space, std::move(valuations), psb);
}

std::string Show(const Rat& value) {
  return value.ToString() + " (" + value.ToDecimalString() + ")";
}

// Collects expectation checks and measured values for one fixture. A
// failed expectation marks the fixture failed but never stops it, so the
// detail line always reports everything that was measured.
class Probe {
 public:
  void Require(bool condition, const std::string& claim) {
    if (condition) return;
    ok_ = false;
    Note("FAILED: " + claim);
  }

  void Note(const std::string& line) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += line;
  }

  bool ok() const { return ok_; }
  const std::string& detail() const { return detail_; }

 private:
  bool ok_ = true;
  std::string detail_;
};

FixtureResult RunOne(const char* id, const char* summary,
                     const std::function<void(Probe&)>& body) {
  Probe probe;
  try {
    body(probe);
  } catch (const std::exception& error) {
    probe.Require(false, std::string("threw: ") + error.what());
  }
  return FixtureResult{id, summary, probe.ok(), probe.detail()};
}

void GoldenGrandSale(Probe& probe) {
  const Market market = GoldenShowcaseMarket();
  RandomTape tape(0);
  const MechanismResult run = GoldenRatio(market, tape);
  probe.Require(run.outcome.allocation()[0].Count() == 2 &&
                    run.outcome.allocation()[1].IsEmpty(),
                "both units go to bidder 0");
  probe.Require(run.outcome.payments()[0] == Rat(100), "the price is 100");
  probe.Require(tape.draws() == 0, "no coin is consumed");
  const Rat opt = OptimalRevenue(market).value;
  const Rat ratio = Revenue(run.outcome) / opt;
  probe.Require(opt == Rat(119), "the optimum is 119");
  probe.Require(ratio == Rat(100, 119), "the ratio is 100/119");
  probe.Note("revenue=" + Show(Rat(100)) + " optimum=" + Show(opt) +
             " ratio=" + Show(ratio));
}

void ThresholdSplitTruthful(Probe& probe) {
  const Market market = ThresholdPairMarket(false);
  RandomTape tape(0);
  const MechanismResult run = GoldenRatio(market, tape);
  const ItemSpace& space = market.items();
  probe.Require(run.outcome.allocation()[0] == space.Units(1) &&
                    run.outcome.allocation()[1] == space.Units(1),
                "the units are split one each");
  probe.Require(run.outcome.payments() ==
                    std::vector<Rat>{Rat(999), Rat(620)},
                "each side pays its single-unit bid");
  const Rat opt = OptimalRevenue(market).value;
  probe.Require(opt == Rat(1619), "the optimum is 1619");
  probe.Require(Revenue(run.outcome) == opt, "the split revenue is optimal");
  probe.Note("revenue=" + Show(Revenue(run.outcome)) + " optimum=" +
             Show(opt));
}

void ThresholdSplitShaded(Probe& probe) {
  const Market market = ThresholdPairMarket(true);
  RandomTape tape(0);
  const MechanismResult run = GoldenRatio(market, tape);
  const ItemSpace& space = market.items();
  probe.Require(run.outcome.allocation()[0] == space.Units(1) &&
                    run.outcome.allocation()[1] == space.Units(1),
                "the split survives the shaded single-unit bid");
  probe.Require(run.outcome.payments() == std::vector<Rat>{Rat(0), Rat(620)},
                "only the rival's single-unit bid is collected");
  const Rat opt = OptimalRevenue(market).value;
  probe.Require(opt == Rat(1000), "the optimum is 1000");
  const Rat ratio = Revenue(run.outcome) / opt;
  probe.Require(ratio == Rat(31, 50), "the ratio is 31/50");
  // r = (sqrt(5)-1)/2 satisfies r*r + r = 1, so ratio >= r is the first
  // inequality and ratio <= r + 1/100 is the second.
  probe.Require(ratio * ratio + ratio >= Rat(1),
                "the ratio is at least the golden fraction");
  const Rat slack = ratio - Rat(1, 100);
  probe.Require(slack * slack + slack <= Rat(1),
                "the ratio is at most the golden fraction plus 1/100");
  probe.Note("revenue=" + Show(Revenue(run.outcome)) + " optimum=" +
             Show(opt) + " ratio=" + Show(ratio));
}

void RevmaxUnitShading(Probe& probe) {
  const Market market = ShadingShowcaseMarket();
  const AuditVerdict verdict =
      AuditDeterministic(MechanismId::kRevMax, market);
  probe.Require(verdict.found(), "the audit finds a profitable misreport");
  if (!verdict.witness) return;
  const AuditWitness& witness = *verdict.witness;
  const ItemSpace& space = market.items();
  probe.Require(witness.bidder == 0, "bidder 0 is the deviator");
  probe.Require(witness.misreport.Value(space.Units(1)) == Rat(0) &&
                    witness.misreport.Value(space.Units(2)) == Rat(11),
                "the misreport hides the single-unit bid");
  probe.Require(witness.truthful_utility == Utility(Rat(10)) &&
                    witness.deviating_utility == Utility(Rat(11)),
                "utility rises from 10 to 11");
  const MechanismResult base = RevenueMaxPayAsBid(witness.base);
  const MechanismResult deviated = RevenueMaxPayAsBid(witness.deviated);
  probe.Require(UtilityOf(base.outcome, market.valuation(0), 0) ==
                    witness.truthful_utility,
                "the truthful run replays");
  probe.Require(UtilityOf(deviated.outcome, market.valuation(0), 0) ==
                    witness.deviating_utility,
                "the deviating run replays");
  probe.Require(deviated.outcome.allocation()[0].Count() == 2,
                "the misreport wins both units");
  probe.Note("utility " + witness.truthful_utility.ToString() + " -> " +
             witness.deviating_utility.ToString() + " across " +
             std::to_string(verdict.cases_checked) + " cases");
}

void RevmaxAssignmentShading(Probe& probe) {
  const Market market = AssignmentShowcaseMarket();
  const AuditVerdict verdict =
      AuditDeterministic(MechanismId::kRevMax, market);
  probe.Require(verdict.found(), "the audit finds a profitable misreport");
  if (!verdict.witness) return;
  const AuditWitness& witness = *verdict.witness;
  const ItemSpace& space = market.items();
  probe.Require(witness.bidder == 1, "bidder 1 is the deviator");
  probe.Require(witness.misreport.Value(space.Items({"A"})) == Rat(0) &&
                    witness.misreport.Value(space.Items({"B"})) == Rat(11),
                "the misreport drops the A bid");
  probe.Require(witness.truthful_utility == Utility(Rat(10)) &&
                    witness.deviating_utility == Utility(Rat(11)),
                "utility rises from 10 to 11");
  const MechanismResult deviated = RevenueMaxPayAsBid(witness.deviated);
  probe.Require(deviated.outcome.allocation()[1] == space.Items({"B"}),
                "the misreport wins B outright");
  probe.Require(UtilityOf(deviated.outcome, market.valuation(1), 1) ==
                    witness.deviating_utility,
                "the deviating run replays");
  probe.Note("utility " + witness.truthful_utility.ToString() + " -> " +
             witness.deviating_utility.ToString() + " across " +
             std::to_string(verdict.cases_checked) + " cases");
}

void FiveClauseSwitch(Probe& probe) {
  const Market market = FiveClauseShowcaseMarket();
  const ItemSpace& space = market.items();
  const MechanismResult truthful = Demo3x4Rule(market);
  probe.Require(
      truthful.outcome.allocation() ==
          Allocation(space, {space.Empty(), space.Units(2), space.Units(2)}),
      "the truthful run allocates (0,2,2)");
  const AuditVerdict verdict =
      AuditDeterministic(MechanismId::kDemo3x4, market);
  probe.Require(verdict.found(), "the audit finds a profitable misreport");
  if (!verdict.witness) return;
  const AuditWitness& witness = *verdict.witness;
  probe.Require(witness.bidder == 0, "bidder 0 is the deviator");
  probe.Require(witness.misreport.Value(space.Units(2)) == Rat(3) &&
                    witness.misreport.Value(space.Units(4)) == Rat(5),
                "the misreport halves both bids");
  probe.Require(witness.truthful_utility == Utility(Rat(0)) &&
                    witness.deviating_utility == Utility(Rat(6)),
                "utility rises from 0 to 6");
  const MechanismResult deviated = Demo3x4Rule(witness.deviated);
  probe.Require(
      deviated.outcome.allocation() ==
          Allocation(space, {space.Units(2), space.Empty(), space.Units(2)}),
      "the misreport flips the allocation to (2,0,2)");
  probe.Require(UtilityOf(deviated.outcome, market.valuation(0), 0) ==
                    witness.deviating_utility,
                "the deviating run replays");
  probe.Note("allocation (0,2,2) -> (2,0,2), utility " +
             witness.truthful_utility.ToString() + " -> " +
             witness.deviating_utility.ToString());
}

void ParetoFrontierPair(Probe& probe) {
  const Market market = ParetoPairMarket();
  const ItemSpace& space = market.items();
  const Outcome high(
      Allocation(space, {space.Items({"A"}), space.Items({"B"})}),
      {Rat(8), Rat(6)});
  const Outcome low(
      Allocation(space, {space.Items({"B"}), space.Items({"A"})}),
      {Rat(5), Rat(7)});
  probe.Require(Revenue(high) == Rat(14) && Revenue(low) == Rat(12),
                "the assignments earn 14 and 12");
  probe.Require(!ParetoDominated(market, high).has_value(),
                "the 14-revenue assignment is undominated");
  probe.Require(!ParetoDominated(market, low).has_value(),
                "the 12-revenue assignment is undominated");
  probe.Note("revenues " + Show(Rat(14)) + " and " + Show(Rat(12)) +
             " both sit on the frontier");
}

void ReserveGrandSale(Probe& probe) {
  const Market market = ReserveShowcaseMarket();
  RandomTape tape(0, ReserveShowcaseLabels());
  const MechanismResult run = FrameworkU(market, Rat(1, 10), tape);
  probe.Require(run.outcome.allocation()[0] == market.items().Grand(),
                "the grand bundle goes to bidder 0");
  probe.Require(run.outcome.payments() ==
                    std::vector<Rat>{Rat(50), Rat(0), Rat(0)},
                "the price is the winning grand bid of 50");
  probe.Require(tape.draws() == 0, "explicit labels preempt the coin");
  // The statistical estimate comes from bidder 2 alone, so the reserve
  // test is 4 * 50^2 >= 40^2.
  probe.Note("revenue=" + Show(Revenue(run.outcome)) +
             " with the reserve cleared against an estimate of " +
             Show(Rat(40)));
}

void SplitDegradation(Probe& probe) {
  const std::vector<std::pair<Rat, Rat>> expected = {
      {Rat(1, 10), Rat(51, 101)},
      {Rat(1, 100), Rat(501, 1001)},
      {Rat(1, 1000), Rat(5001, 10001)},
  };
  Rat previous(1);
  std::string chain;
  for (const auto& [step, pinned] : expected) {
    const Market market = UniformCurveMarket(2, 2, Rat(10), step);
    RandomTape tape(0);
    const Rat ratio =
        MechanismRatio(MechanismId::kPo, market, tape, Rat(1, 10));
    probe.Require(ratio == pinned, "step " + step.ToString() +
                                       " lands at " + pinned.ToString());
    probe.Require(ratio < previous, "the ratio strictly falls");
    probe.Require(ratio > Rat(1, 2), "the ratio stays above 1/2");
    previous = ratio;
    if (!chain.empty()) chain += " > ";
    chain += Show(ratio);
  }
  probe.Note(chain + ", approaching 1/2 from above");
}

void NearThirdWitness(Probe& probe) {
  const Market market = UniformCurveMarket(3, 3, Rat(10), Rat(1, 1000));
  RandomTape tape(0);
  const Rat ratio =
      MechanismRatio(MechanismId::kStrongest, market, tape, Rat(1, 10));
  probe.Require(ratio == Rat(10003, 30003), "the ratio is 10003/30003");
  probe.Require(ratio >= Rat(1, 3), "the ratio never drops below 1/3");
  probe.Require(ratio - Rat(1, 3) <= Rat(1, 100),
                "the ratio is within 1/100 of 1/3");
  probe.Note("ratio=" + Show(ratio) + " exceeds 1/3 by " +
             Show(ratio - Rat(1, 3)));
}

void SplitDialogue(Probe& probe) {
  const Market plain = SplitDialogueMarket(false);
  const Market zeroed = SplitDialogueMarket(true);
  const ItemSpace& space = plain.items();
  const Rat opt = OptimalRevenue(plain).value;
  probe.Require(opt == Rat(201, 10), "the optimum is 201/10");
  probe.Require(OptimalRevenue(zeroed).value == opt,
                "zeroing the single-unit bid keeps the optimum");
  // Revenue cap when bidder 1 is held to at most one unit of the zeroed
  // variant, over every feasible split of the three units.
  Rat capped(0);
  for (int s0 = 0; s0 <= 3; ++s0) {
    for (int s1 = 0; s0 + s1 <= 3 && s1 <= 1; ++s1) {
      const Rat earned = zeroed.valuation(0).Value(space.Units(s0)) +
                         zeroed.valuation(1).Value(space.Units(s1));
      capped = std::max(capped, earned);
    }
  }
  probe.Require(capped == Rat(103, 10),
                "holding bidder 1 to one unit caps revenue at 103/10");
  probe.Require(capped / opt > Rat(1, 2) &&
                    capped / opt <= Rat(1, 2) + Rat(1, 50),
                "that cap sits within 1/50 above half the optimum");
  // The escape route: a two-unit award priced at the zeroed report is
  // covered by the plain-variant value, and holding two units beats the
  // truthful single unit.
  const Rat switch_price = zeroed.valuation(1).Value(space.Units(2));
  const Rat true_pair = plain.valuation(1).Value(space.Units(2));
  const Rat true_single = plain.valuation(1).Value(space.Units(1));
  probe.Require(switch_price <= true_pair,
                "the switched two-unit price is covered by the true value");
  probe.Require(true_pair > true_single,
                "two covered units beat the truthful single unit");
  probe.Note("cap/optimum=" + Show(capped / opt) + " against 1/2+1/50=" +
             Show(Rat(1, 2) + Rat(1, 50)) + "; switch utility " +
             Show(true_single) + " -> " + Show(true_pair));
}

}  // namespace

Market GoldenShowcaseMarket() {
  return CurveMarket({{Rat(64), Rat(100)}, {Rat(55), Rat(56)}}, 0);
}

Market ShadingShowcaseMarket() {
  return CurveMarket({{Rat(10), Rat(11)}, {Rat(10), Rat(10)}});
}

Market AssignmentShowcaseMarket() {
  const ItemSpace space = ItemSpace::Heterogeneous({"A", "B"});
  return Market(space,
                {Valuation(space, {{space.Items({"B"}), Rat(10)}}),
                 Valuation(space, {{space.Items({"A"}), Rat(10)},
                                   {space.Items({"B"}), Rat(11)}})});
}

Market ParetoPairMarket() {
  const ItemSpace space = ItemSpace::Heterogeneous({"A", "B"});
  return Market(space,
                {Valuation(space, {{space.Items({"A"}), Rat(8)},
                                   {space.Items({"B"}), Rat(5)}}),
                 Valuation(space, {{space.Items({"A"}), Rat(7)},
                                   {space.Items({"B"}), Rat(6)}})});
}

Market FiveClauseShowcaseMarket() {
  const ItemSpace space = ItemSpace::MultiUnit(4);
  auto pair_bids = [&](const Rat& two, const Rat& four) {
    return Valuation(space, {{space.Units(2), two}, {space.Units(4), four}});
  };
  return Market(space, {pair_bids(Rat(6), Rat(10)),
                        pair_bids(Rat(6), Rat(9)),
                        pair_bids(Rat(6), Rat(8))});
}

Market ReserveShowcaseMarket() {
  const ItemSpace space = ItemSpace::Heterogeneous({"A", "B", "C", "D"});
  return Market(space,
                {Valuation(space, {{space.Grand(), Rat(50)}}),
                 Valuation(space, {{space.Items({"A", "B"}), Rat(9)}}),
                 Valuation(space, {{space.Grand(), Rat(40)}})});
}

std::vector<PartitionLabel> ReserveShowcaseLabels() {
  return {PartitionLabel::kGrand, PartitionLabel::kFixed,
          PartitionLabel::kStat};
}

Market UniformCurveMarket(int bidders, int units, const Rat& base,
                          const Rat& step) {
  if (bidders < 1) {
    throw DomainError("a uniform-curve market needs at least one bidder");
  }
  const ItemSpace space = ItemSpace::MultiUnit(units);
  std::vector<Atom> atoms;
  for (int s = 1; s <= units; ++s) {
    atoms.push_back({space.Units(s), base + Rat(s) * step});
  }
  return Market(space,
                std::vector<Valuation>(bidders, Valuation(space, atoms)));
}

Market ThresholdPairMarket(bool shaded) {
  const Rat unit_bid = shaded ? Rat(0) : Rat(999);
  return CurveMarket({{unit_bid, Rat(1000)}, {Rat(620), Rat(621)}}, 0);
}

Market SplitDialogueMarket(bool unit_bid_zeroed) {
  const Rat unit_bid = unit_bid_zeroed ? Rat(0) : Rat(10);
  return CurveMarket({{Rat(10), Rat(101, 10), Rat(103, 10)},
                      {unit_bid, Rat(101, 10), Rat(51, 5)}});
}

std::vector<FixtureResult> RunFixtureSuite() {
  return {
      RunOne("golden-grand-sale",
             "the golden-ratio rule sweeps both units at the strong bid",
             GoldenGrandSale),
      RunOne("threshold-split-truthful",
             "a rival just above the golden fraction forces an optimal split",
             ThresholdSplitTruthful),
      RunOne("threshold-split-shaded",
             "shading the strong single-unit bid drives the split ratio "
             "down to the golden fraction",
             ThresholdSplitShaded),
      RunOne("revmax-unit-shading",
             "revenue maximization rewards hiding a single-unit bid",
             RevmaxUnitShading),
      RunOne("revmax-assignment-shading",
             "revenue maximization rewards dropping a competing item bid",
             RevmaxAssignmentShading),
      RunOne("five-clause-switch",
             "the five-clause rule rewards halving both bids",
             FiveClauseSwitch),
      RunOne("pareto-frontier-pair",
             "two assignments of the same pair market are both undominated",
             ParetoFrontierPair),
      RunOne("reserve-grand-sale",
             "the reserve-price framework sells the grand bundle above the "
             "statistical reserve",
             ReserveGrandSale),
      RunOne("split-degradation",
             "the pair auction's ratio slides toward 1/2 as bid gaps shrink",
             SplitDegradation),
      RunOne("near-third-witness",
             "flat three-bidder curves pin the strongest-bidder rule near 1/3",
             NearThirdWitness),
      RunOne("split-dialogue",
             "no single-unit cap survives both dialogue tables above half "
             "the optimum",
             SplitDialogue),
  };
}

bool AllPassed(const std::vector<FixtureResult>& results) {
  return std::all_of(
      results.begin(), results.end(),
      [](const FixtureResult& result) { return result.passed; });
}

}  // namespace valuebid
