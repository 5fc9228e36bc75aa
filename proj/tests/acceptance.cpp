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

// The release gate. Each criterion below states one headline guarantee of
// the library together with a wall-clock budget; the binary prints one
// pass/fail line per criterion and exits nonzero if any of them misses.
// Every numeric claim is checked in exact rational arithmetic.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "valuebid/audit.hpp"
#include "valuebid/fixtures.hpp"
#include "valuebid/market.hpp"
#include "valuebid/mechanisms.hpp"
#include "valuebid/oracles.hpp"
#include "valuebid/rat.hpp"
#include "valuebid/sweep.hpp"
#include "valuebid/tape.hpp"

using namespace valuebid;
using testutil::RandomHeterogeneousMarket;
using testutil::RandomMultiUnitMarket;
using testutil::RandomStrictHeterogeneousMarket;
using testutil::RandomStrictMultiUnitMarket;

namespace {

// Collects failed requirements for one criterion. Storage is capped so a
// systematic failure across a thousand instances stays readable.
class Gate {
 public:
  void Require(bool ok, const std::string& claim) {
    if (ok) return;
    ++failed_;
    if (failed_ <= 20) {
      failures_.push_back(claim);
    } else if (failed_ == 21) {
      failures_.push_back("further failures suppressed");
    }
  }

  bool ok() const { return failed_ == 0; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  long long failed_ = 0;
  std::vector<std::string> failures_;
};

// Multi-unit market from full per-bidder bid curves; curve[s-1] is the
// s-unit bid.
Market CurveMarket(const std::vector<std::vector<Rat>>& curves,
                   std::optional<int> psb = std::nullopt) {
  const int m = static_cast<int>(curves.front().size());
  const ItemSpace space = ItemSpace::MultiUnit(m);
  std::vector<Valuation> valuations;
  for (const std::vector<Rat>& curve : curves) {
    std::vector<Atom> atoms;
    for (int s = 1; s <= m; ++s) {
      atoms.push_back({space.Units(s), curve[s - 1]});
    }
    valuations.emplace_back(space, std::move(atoms));
  }
  return Market(space, std::move(valuations), psb);
}

std::vector<std::vector<PartitionLabel>> AllLabelings(int bidders) {
  static constexpr PartitionLabel kRoles[] = {
      PartitionLabel::kGrand, PartitionLabel::kFixed, PartitionLabel::kStat};
  long long total = 1;
  for (int i = 0; i < bidders; ++i) total *= 3;
  std::vector<std::vector<PartitionLabel>> labelings;
  for (long long code = 0; code < total; ++code) {
    std::vector<PartitionLabel> labels(bidders);
    long long rest = code;
    for (int i = 0; i < bidders; ++i) {
      labels[i] = kRoles[rest % 3];
      rest /= 3;
    }
    labelings.push_back(std::move(labels));
  }
  return labelings;
}

// Criterion 1: the two-bidder showcase market resolves instantly with both
// units sold to the strong side at its full two-unit bid.
void ShowcaseSale(Gate& gate) {
  const Market market = GoldenShowcaseMarket();
  RandomTape tape(0);
  const MechanismResult run = GoldenRatio(market, tape);
  gate.Require(run.outcome.allocation()[0] == market.items().Units(2),
               "bidder 0 receives both units");
  gate.Require(run.outcome.allocation()[1].IsEmpty(),
               "bidder 1 receives nothing");
  gate.Require(run.outcome.payments()[0] == Rat(100),
               "the winning payment is exactly 100");
  gate.Require(run.outcome.payments()[1].IsZero(),
               "the loser pays nothing");
}

// Criterion 2: over every monotone 2x2 market with integer bids up to 20
// and bidder 0 designated strongest, the revenue ratio never drops below
// (sqrt(5)-1)/2. Checked as ratio^2 + ratio >= 1, with no tolerance.
void GoldenFloor(Gate& gate) {
  const Golden2x2Family family(20);
  const SweepResult sweep =
      WorstCaseSweep(MechanismId::kGolden, family, Rat(0), ExecMode::kParallel);
  gate.Require(sweep.instances == family.size(), "the sweep is exhaustive");
  const Rat& min = sweep.min_ratio;
  gate.Require(min * min + min >= Rat(1),
               "the minimum ratio satisfies r^2 + r >= 1, so it is at least "
               "the golden fraction");
}

// Criterion 3: the randomized split rule's exact expected revenue is at
// least 3/4 of the optimum on the same grid, and the bound is tight both
// inside the grid and at the scaled (100, 50, 0) instance.
void SplitExpectationFloor(Gate& gate) {
  const Rand2x2Family family(20);
  const SweepResult sweep = WorstCaseSweep(MechanismId::kRand2x2, family,
                                           Rat(0), ExecMode::kParallel);
  gate.Require(sweep.min_ratio >= Rat(3, 4),
               "every expected ratio is at least 3/4");
  gate.Require(sweep.min_ratio == Rat(3, 4),
               "the 3/4 floor is attained inside the grid");
  const Market tight =
      CurveMarket({{Rat(0), Rat(100)}, {Rat(50), Rat(50)}});
  gate.Require(ExactExpectedRevenue2x2(tight) ==
                   Rat(3, 4) * OptimalRevenue(tight).value,
               "the (100, 50, 0) instance meets 3/4 with rational equality");
}

// Criterion 4: the deterministic audit finds the two textbook
// manipulations of revenue maximization, and both witnesses replay to the
// recorded utilities when the mechanism is re-run on the stored markets.
void RevmaxManipulations(Gate& gate) {
  const Market shading = ShadingShowcaseMarket();
  const AuditVerdict unit = AuditDeterministic(MechanismId::kRevMax, shading);
  gate.Require(unit.found(), "the unit-shading market is manipulable");
  if (unit.found()) {
    const AuditWitness& w = *unit.witness;
    const ItemSpace& space = shading.items();
    gate.Require(w.bidder == 0, "bidder 0 deviates");
    gate.Require(w.misreport.Value(space.Units(1)).IsZero() &&
                     w.misreport.Value(space.Units(2)) == Rat(11),
                 "the misreport is the (0, 11) curve");
    const MechanismResult base = RevenueMaxPayAsBid(w.base);
    const MechanismResult deviated = RevenueMaxPayAsBid(w.deviated);
    gate.Require(UtilityOf(base.outcome, shading.valuation(0), 0) ==
                     w.truthful_utility,
                 "the truthful utility replays exactly");
    gate.Require(UtilityOf(deviated.outcome, shading.valuation(0), 0) ==
                     w.deviating_utility,
                 "the deviating utility replays exactly");
  }

  const Market assignment = AssignmentShowcaseMarket();
  const AuditVerdict drop =
      AuditDeterministic(MechanismId::kRevMax, assignment);
  gate.Require(drop.found(), "the assignment market is manipulable");
  if (drop.found()) {
    const AuditWitness& w = *drop.witness;
    const ItemSpace& space = assignment.items();
    gate.Require(w.bidder == 1, "bidder 1 deviates");
    gate.Require(w.misreport.Value(space.Items({"A"})).IsZero() &&
                     w.misreport.Value(space.Items({"B"})) == Rat(11),
                 "the misreport zeroes the competing item bid");
    const MechanismResult base = RevenueMaxPayAsBid(w.base);
    const MechanismResult deviated = RevenueMaxPayAsBid(w.deviated);
    gate.Require(UtilityOf(base.outcome, assignment.valuation(1), 1) ==
                     w.truthful_utility,
                 "the truthful utility replays exactly");
    gate.Require(UtilityOf(deviated.outcome, assignment.valuation(1), 1) ==
                     w.deviating_utility,
                 "the deviating utility replays exactly");
  }
}

// Criterion 5: on a thousand random strict-valuation markets the pair
// auction's outcome is never Pareto dominated and the deterministic audit
// finds no profitable misreport on the default grid.
void PairAuctionProperties(Gate& gate) {
  for (int seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 rng(7919ULL * seed + 17);
    const int n = 2 + seed % 2;
    const int m = 2 + seed % 3;
    const Market market = seed % 2 == 0
                              ? RandomStrictMultiUnitMarket(rng, n, m)
                              : RandomStrictHeterogeneousMarket(rng, n, m);
    const MechanismResult run = PoAuction(market);
    gate.Require(!ParetoDominated(market, run.outcome).has_value(),
                 "the pair auction outcome is undominated (seed " +
                     std::to_string(seed) + ")");
    gate.Require(!AuditDeterministic(MechanismId::kPo, market).found(),
                 "no grid misreport profits against the pair auction (seed " +
                     std::to_string(seed) + ")");
  }
}

// Criterion 6: the strongest-bidder rule keeps at least a third of the
// optimum on the exhaustive three-bidder grid, and the flat-curve market
// with perturbation 1/1000 pins the ratio within 1/100 of that floor.
void StrongestFloor(Gate& gate) {
  const StrongestFamily family(3, 5);
  const SweepResult sweep = WorstCaseSweep(MechanismId::kStrongest, family,
                                           Rat(0), ExecMode::kParallel);
  gate.Require(sweep.instances == family.size(), "the sweep is exhaustive");
  gate.Require(sweep.min_ratio >= Rat(1, 3),
               "every ratio is at least 1/3");
  RandomTape tape(0);
  const Rat witness = MechanismRatio(
      MechanismId::kStrongest, UniformCurveMarket(3, 3, Rat(10), Rat(1, 1000)),
      tape, Rat(0));
  gate.Require(witness == Rat(10003, 30003),
               "the flat-curve witness ratio is exactly 10003/30003");
  gate.Require(witness >= Rat(1, 3) && witness <= Rat(1, 3) + Rat(1, 100),
               "the witness sits within 1/100 above the 1/3 floor");
}

// Mirrors the reserve framework's phase contract for one completed run
// with known labels: the statistical estimate decides between a grand sale
// above the reserve and posted-price service of the fixed-role bidders.
void CheckPhaseInvariants(Gate& gate, const Market& market, const Rat& epsilon,
                          const std::vector<PartitionLabel>& labels,
                          const Outcome& outcome, int seed) {
  const ItemSpace& space = market.items();
  const int n = market.bidders();
  const int m = space.size();
  const std::string tag = " (seed " + std::to_string(seed) + ")";

  std::vector<Valuation> stat;
  for (int i = 0; i < n; ++i) {
    if (labels[i] == PartitionLabel::kStat) stat.push_back(market.valuation(i));
  }
  const Rat opt_star = stat.empty() ? Rat(0) : FractionalOpt(Market(space, stat));

  int best = -1;
  for (int i = 0; i < n; ++i) {
    if (labels[i] != PartitionLabel::kGrand) continue;
    if (best < 0 || market.GrandValue(i) > market.GrandValue(best)) best = i;
  }
  const bool sells_grand =
      best >= 0 && Rat(m) * market.GrandValue(best) * market.GrandValue(best) >=
                       opt_star * opt_star;

  if (sells_grand) {
    gate.Require(outcome.allocation()[best] == space.Grand(),
                 "the top grand-label bid clears the reserve and takes the "
                 "grand bundle" + tag);
    gate.Require(outcome.payments()[best] == market.GrandValue(best),
                 "the grand winner pays his grand bid" + tag);
    for (int i = 0; i < n; ++i) {
      if (i == best) continue;
      gate.Require(outcome.allocation()[i].IsEmpty() &&
                       outcome.payments()[i].IsZero(),
                   "everyone else leaves empty-handed after a grand sale" +
                       tag);
    }
    return;
  }

  const Rat price = epsilon * opt_star / Rat(8 * m);
  std::uint64_t remaining = space.Grand().raw();
  for (int i = 0; i < n; ++i) {
    const Bundle& bundle = outcome.allocation()[i];
    if (labels[i] != PartitionLabel::kFixed) {
      gate.Require(bundle.IsEmpty() && outcome.payments()[i].IsZero(),
                   "only fixed-role bidders are served when the reserve "
                   "fails" + tag);
      continue;
    }
    const bool fits = space.IsMultiUnit()
                          ? bundle.raw() <= remaining
                          : (bundle.raw() & ~remaining) == 0;
    gate.Require(fits, "served bundles are disjoint in arrival order" + tag);
    const Rat value = market.valuation(i).Value(bundle);
    gate.Require(outcome.payments()[i] == value,
                 "a served bidder pays his reported bundle value" + tag);
    gate.Require(value >= price * Rat(bundle.Count()),
                 "a served bundle is affordable at the posted unit price" +
                     tag);
    Rat best_value;
    for (std::uint64_t raw = 0; raw <= space.Grand().raw(); ++raw) {
      const bool available = space.IsMultiUnit()
                                 ? raw <= remaining
                                 : (raw & ~remaining) == 0;
      if (!available) continue;
      const Bundle b = space.IsMultiUnit() ? space.Units(static_cast<int>(raw))
                                           : space.Subset(raw);
      const Rat v = market.valuation(i).Value(b);
      if (v >= price * Rat(b.Count()) && v > best_value) best_value = v;
    }
    gate.Require(value == best_value,
                 "a served bidder gets a most valuable affordable bundle" +
                     tag);
    remaining = space.IsMultiUnit() ? remaining - bundle.raw()
                                    : remaining & ~bundle.raw();
  }
}

// Criterion 7: with the tape fixed to any explicit partition labeling of a
// three-bidder battery, no grid misreport profits against the reserve
// framework; and the phase contract above holds on a thousand seeded runs
// over random markets and labelings.
void ReserveFramework(Gate& gate) {
  const Rat epsilon(1, 10);
  std::vector<Market> battery;
  battery.push_back(ReserveShowcaseMarket());
  battery.push_back(FiveClauseShowcaseMarket());
  battery.push_back(UniformCurveMarket(3, 3, Rat(10), Rat(1)));
  {
    std::mt19937_64 rng(2026);
    battery.push_back(RandomStrictMultiUnitMarket(rng, 3, 4));
    battery.push_back(RandomStrictHeterogeneousMarket(rng, 3, 3));
  }
  const std::vector<std::vector<PartitionLabel>> labelings = AllLabelings(3);
  for (std::size_t b = 0; b < battery.size(); ++b) {
    std::vector<RandomTape> tapes;
    for (const std::vector<PartitionLabel>& labels : labelings) {
      tapes.emplace_back(0, labels);
    }
    const AuditVerdict verdict = AuditUniversal(
        MechanismId::kFrameworkU, battery[b], epsilon, tapes);
    gate.Require(!verdict.found(),
                 "no labeling admits a profitable misreport (battery market " +
                     std::to_string(b) + ")");
  }

  for (int seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 rng(104729ULL * seed + 3);
    const int m = 2 + seed % 3;
    const Market market = seed % 2 == 0
                              ? RandomStrictMultiUnitMarket(rng, 3, m)
                              : RandomStrictHeterogeneousMarket(rng, 3, m);
    std::vector<PartitionLabel> labels;
    std::uniform_int_distribution<int> role(0, 2);
    for (int i = 0; i < 3; ++i) {
      labels.push_back(static_cast<PartitionLabel>(role(rng)));
    }
    const Rat eps = seed % 4 == 0 ? Rat(3, 10) : Rat(1, 10);
    RandomTape tape(seed, labels);
    const MechanismResult run = FrameworkU(market, eps, tape);
    CheckPhaseInvariants(gate, market, eps, labels, run.outcome, seed);
  }
}

// Criterion 8: the winner-determination oracle agrees with full
// enumeration, the fractional relaxation brackets it from above, the
// three-cycle pair market shows the exact 3/2 integrality gap, and on
// multi-unit markets the relaxation never exceeds twice the optimum.
void OracleCrossValidation(Gate& gate) {
  for (int seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const int n = 1 + seed % 4;
    const int m = 1 + seed % 6;
    const Market market = seed % 2 == 0
                              ? RandomMultiUnitMarket(rng, n, m, 50)
                              : RandomHeterogeneousMarket(rng, n, m, 3, 50);
    const OptimalSolution solved = OptimalRevenue(market);
    gate.Require(solved.value == testutil::NaiveOptimalRevenue(market).value,
                 "the oracle matches naive enumeration (seed " +
                     std::to_string(seed) + ")");
    gate.Require(FractionalOpt(market) >= solved.value,
                 "the relaxation is an upper bound (seed " +
                     std::to_string(seed) + ")");
  }

  const ItemSpace triangle = ItemSpace::Heterogeneous({"A", "B", "C"});
  const Market cycle(triangle,
                     {Valuation(triangle, {{triangle.Items({"A", "B"}), Rat(1)}}),
                      Valuation(triangle, {{triangle.Items({"B", "C"}), Rat(1)}}),
                      Valuation(triangle, {{triangle.Items({"C", "A"}), Rat(1)}})});
  gate.Require(OptimalRevenue(cycle).value == Rat(1),
               "the three-cycle pair market sells one pair integrally");
  gate.Require(FractionalOpt(cycle) == Rat(3, 2),
               "the three-cycle relaxation is exactly 3/2");

  for (int seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(5000 + seed);
    const Market market =
        RandomMultiUnitMarket(rng, 1 + seed % 4, 1 + seed % 6, 50);
    gate.Require(FractionalOpt(market) <=
                     Rat(2) * OptimalRevenue(market).value,
                 "the multi-unit relaxation stays within a factor of two "
                 "(seed " + std::to_string(seed) + ")");
  }
}

// Criterion 9: on the flat two-bidder curves with shrinking perturbation
// the pair auction's ratio strictly decreases toward one half while always
// staying above it.
void DegradationChain(Gate& gate) {
  std::vector<Rat> ratios;
  for (const Rat& step : {Rat(1, 10), Rat(1, 100), Rat(1, 1000)}) {
    RandomTape tape(0);
    ratios.push_back(MechanismRatio(MechanismId::kPo,
                                    UniformCurveMarket(2, 2, Rat(10), step),
                                    tape, Rat(0)));
  }
  gate.Require(ratios[0] == Rat(51, 101) && ratios[1] == Rat(501, 1001) &&
                   ratios[2] == Rat(5001, 10001),
               "the three ratios are exactly 51/101, 501/1001, 5001/10001");
  gate.Require(ratios[0] > ratios[1] && ratios[1] > ratios[2],
               "the ratios strictly decrease");
  gate.Require(ratios[2] > Rat(1, 2), "every ratio stays above one half");
}

// Criterion 10: the five-clause demonstration rule rewards the half-scale
// misreport that switches the allocation from (0,2,2) to (2,0,2).
void FiveClauseSwitch(Gate& gate) {
  const Market market = FiveClauseShowcaseMarket();
  const AuditVerdict verdict =
      AuditDeterministic(MechanismId::kDemo3x4, market);
  gate.Require(verdict.found(), "the five-clause rule is manipulable");
  if (!verdict.found()) return;
  const AuditWitness& w = *verdict.witness;
  const ItemSpace& space = market.items();
  gate.Require(w.bidder == 0, "bidder 0 deviates");
  const MechanismResult base = Demo3x4Rule(w.base);
  const MechanismResult deviated = Demo3x4Rule(w.deviated);
  const Allocation truthful(space,
                            {space.Units(0), space.Units(2), space.Units(2)});
  const Allocation switched(space,
                            {space.Units(2), space.Units(0), space.Units(2)});
  gate.Require(base.outcome.allocation() == truthful,
               "the truthful allocation is (0,2,2)");
  gate.Require(deviated.outcome.allocation() == switched,
               "the deviating allocation is (2,0,2)");
  gate.Require(UtilityOf(deviated.outcome, market.valuation(0), 0) >
                   UtilityOf(base.outcome, market.valuation(0), 0),
               "the switch strictly profits the deviator");
}

struct Criterion {
  const char* title;
  double limit_ms;
  std::function<void(Gate&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"two-bidder showcase: both units to the strong bid at 100", 1.0,
       ShowcaseSale},
      {"golden-fraction floor over the exhaustive 2x2 grid", 10000.0,
       GoldenFloor},
      {"randomized split expectation floor 3/4, tight twice", 10000.0,
       SplitExpectationFloor},
      {"shading manipulations found and replayed exactly", 1000.0,
       RevmaxManipulations},
      {"pair auction undominated and unmanipulable on 1000 markets", 60000.0,
       PairAuctionProperties},
      {"strongest-bidder floor 1/3 with near-tight witness", 10000.0,
       StrongestFloor},
      {"reserve framework: all labelings clean, phase contract on 1000 runs",
       120000.0, ReserveFramework},
      {"revenue oracles vs enumeration, relaxation brackets", 60000.0,
       OracleCrossValidation},
      {"pair-auction ratio slides monotonically toward one half", 1000.0,
       DegradationChain},
      {"five-clause allocation-switch misreport found", 1000.0,
       FiveClauseSwitch},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& criterion = criteria[i];
    Gate gate;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(gate);
    } catch (const std::exception& error) {
      gate.Require(false, std::string("threw: ") + error.what());
    }
    const auto stop = std::chrono::steady_clock::now();
    const double elapsed =
        std::chrono::duration<double, std::milli>(stop - start).count();
    const bool in_time = elapsed < criterion.limit_ms;
    const bool pass = gate.ok() && in_time;
    if (pass) ++passed;
    std::printf("%s %2zu/10  %-66s [%9.2f ms, limit %.0f ms]\n",
                pass ? "PASS" : "FAIL", i + 1, criterion.title, elapsed,
                criterion.limit_ms);
    for (const std::string& failure : gate.failures()) {
      std::printf("           - %s\n", failure.c_str());
    }
    if (!in_time) {
      std::printf("           - runtime limit exceeded\n");
    }
  }
  std::printf("acceptance: %d/10 criteria passed\n", passed);
  return passed == 10 ? 0 : 1;
}
