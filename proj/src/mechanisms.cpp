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

#include "valuebid/mechanisms.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>

#include "valuebid/errors.hpp"
#include "valuebid/oracles.hpp"

namespace valuebid {
namespace {

MechanismResult Finish(const Market& market, std::vector<Bundle> bundles,
                       std::vector<Rat> payments,
                       std::vector<std::string> trace) {
  return {Outcome(Allocation(market.items(), std::move(bundles)),
                  std::move(payments)),
          std::move(trace)};
}

MechanismResult EmptyResult(const Market& market,
                            std::vector<std::string> trace) {
  const int n = market.bidders();
  return Finish(market, std::vector<Bundle>(n, market.items().Empty()),
                std::vector<Rat>(n, Rat(0)), std::move(trace));
}

void RequireMultiUnitShape(const Market& market, int bidders, int units,
                           const char* who) {
  if (!market.items().IsMultiUnit() || market.items().size() != units ||
      market.bidders() != bidders) {
    throw ContractError(std::string(who) + " needs a " +
                        std::to_string(bidders) + "-bidder multi-unit market "
                        "with m=" + std::to_string(units));
  }
}

// Exact form of y > r*t for r = (sqrt(5)-1)/2: both sides nonnegative, so
// squaring the defining identity r^2 = 1 - r gives y^2 + y*t > t^2.
bool AboveGoldenFraction(const Rat& y, const Rat& t) {
  return y * y + y * t > t * t;
}

// Convenience for 2x2 rules: v(i, s) is bidder i's bid for s units.
Rat Bid(const Market& market, int i, int units) {
  return market.valuation(i).Value(market.items().Units(units));
}

struct Strong2x2 {
  int strong;
  int weak;
  Rat q;  // split probability: weak single-unit bid / strong two-unit bid
};

Strong2x2 AnalyzeStrict2x2(const Market& market, const char* who) {
  RequireMultiUnitShape(market, 2, 2, who);
  const Rat t0 = Bid(market, 0, 2);
  const Rat t1 = Bid(market, 1, 2);
  if (t0 == t1) {
    throw PreconditionError(std::string(who) +
                            " requires distinct two-unit bids, both are " +
                            t0.ToString());
  }
  const int strong = t0 > t1 ? 0 : 1;
  const int weak = 1 - strong;
  // The strong two-unit bid is positive here, since it strictly beats a
  // nonnegative one, so q is well defined; q < 1 by monotonicity.
  return {strong, weak, Bid(market, weak, 1) / Bid(market, strong, 2)};
}

}  // namespace

std::string ToString(MechanismId id) {
  switch (id) {
    case MechanismId::kPo:
      return "po";
    case MechanismId::kRevMax:
      return "revmax";
    case MechanismId::kSpGreedy:
      return "sp-greedy";
    case MechanismId::kGolden:
      return "golden";
    case MechanismId::kRand2x2:
      return "rand2x2";
    case MechanismId::kStrongest:
      return "strongest";
    case MechanismId::kFrameworkU:
      return "framework-u";
    case MechanismId::kDemo3x4:
      return "demo3x4";
  }
  throw DomainError("unknown mechanism id");
}

MechanismId MechanismIdFromString(std::string_view text) {
  for (MechanismId id :
       {MechanismId::kPo, MechanismId::kRevMax, MechanismId::kSpGreedy,
        MechanismId::kGolden, MechanismId::kRand2x2, MechanismId::kStrongest,
        MechanismId::kFrameworkU, MechanismId::kDemo3x4}) {
    if (ToString(id) == text) return id;
  }
  throw ParseError("unknown mechanism '" + std::string(text) + "'");
}

bool UsesRandomness(MechanismId id) {
  return id == MechanismId::kGolden || id == MechanismId::kRand2x2 ||
         id == MechanismId::kFrameworkU;
}

MechanismResult PoAuction(const Market& market) {
  RequireOracleCapacity(market);
  const ItemSpace& space = market.items();
  const int n = market.bidders();

  std::vector<Bundle> bundles(n, space.Empty());
  std::vector<Rat> payments(n, Rat(0));
  std::vector<std::string> trace;
  std::vector<bool> active(n, true);
  std::uint64_t remaining = space.Grand().raw();

  for (;;) {
    // Only atom bundles can win a round: any bundle's value is witnessed
    // by a contained atom of no larger cardinality or raw order.
    struct Pick {
      Rat value;
      int card;
      int bidder;
      Bundle bundle;
    };
    std::optional<Pick> best;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (const Atom& atom : market.valuation(i).atoms()) {
        const std::uint64_t raw = atom.bundle.raw();
        const bool fits = space.IsMultiUnit() ? raw <= remaining
                                              : (raw & ~remaining) == 0;
        if (!fits || atom.value.Sign() <= 0) continue;
        const Pick pick{atom.value, atom.bundle.Count(), i, atom.bundle};
        const bool better =
            !best || pick.value > best->value ||
            (pick.value == best->value &&
             (pick.card < best->card ||
              (pick.card == best->card &&
               (pick.bidder < best->bidder ||
                (pick.bidder == best->bidder &&
                 pick.bundle.raw() < best->bundle.raw())))));
        if (better) best = pick;
      }
    }
    if (!best) break;
    bundles[best->bidder] = best->bundle;
    payments[best->bidder] = best->value;
    active[best->bidder] = false;
    remaining = space.IsMultiUnit() ? remaining - best->bundle.raw()
                                    : remaining & ~best->bundle.raw();
    trace.push_back("award bidder=" + std::to_string(best->bidder) +
                    " bundle=" + space.Describe(best->bundle) +
                    " price=" + best->value.ToString());
  }
  trace.push_back("halt: no positive-value pair remains");
  return Finish(market, std::move(bundles), std::move(payments),
                std::move(trace));
}

MechanismResult RevenueMaxPayAsBid(const Market& market) {
  const OptimalSolution sol = OptimalRevenue(market);
  std::vector<Rat> payments;
  for (int i = 0; i < market.bidders(); ++i) {
    payments.push_back(market.valuation(i).Value(sol.allocation[i]));
  }
  std::vector<std::string> trace{"optimum=" + sol.value.ToString()};
  return {Outcome(sol.allocation, std::move(payments)), std::move(trace)};
}

MechanismResult SingleParameterGreedy(const Market& market) {
  RequireOracleCapacity(market);
  const int n = market.bidders();
  const ItemSpace& space = market.items();
  for (int i = 0; i < n; ++i) {
    if (market.valuation(i).atoms().size() != 1) {
      throw ContractError("bidder " + std::to_string(i) + " holds " +
                          std::to_string(market.valuation(i).atoms().size()) +
                          " atoms; the greedy rule needs single-minded bids");
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return market.valuation(a).atoms()[0].value >
           market.valuation(b).atoms()[0].value;
  });

  std::vector<Bundle> bundles(n, space.Empty());
  std::vector<Rat> payments(n, Rat(0));
  std::vector<std::string> trace;
  std::uint64_t used = 0;
  for (int i : order) {
    const Atom& atom = market.valuation(i).atoms()[0];
    const std::uint64_t raw = atom.bundle.raw();
    const bool free = space.IsMultiUnit()
                          ? used + raw <= static_cast<std::uint64_t>(space.size())
                          : (used & raw) == 0;
    if (free) {
      bundles[i] = atom.bundle;
      payments[i] = atom.value;
      used = space.IsMultiUnit() ? used + raw : used | raw;
      trace.push_back("accept bidder=" + std::to_string(i) + " bundle=" +
                      space.Describe(atom.bundle) + " price=" +
                      atom.value.ToString());
    } else {
      trace.push_back("reject bidder=" + std::to_string(i) +
                      " bundle=" + space.Describe(atom.bundle) + " taken");
    }
  }
  return Finish(market, std::move(bundles), std::move(payments),
                std::move(trace));
}

MechanismResult GoldenRatio(const Market& market, RandomTape& tape) {
  RequireMultiUnitShape(market, 2, 2, "the golden-ratio rule");
  if (!market.psb() || *market.psb() != 0) {
    throw PreconditionError(
        "the golden-ratio rule requires bidder 0 to be the designated "
        "strongest bidder");
  }
  const ItemSpace& space = market.items();
  const Rat t = Bid(market, 0, 2);
  std::vector<std::string> trace;

  auto split = [&] {
    trace.push_back("allocate one unit each, prices " +
                    Bid(market, 0, 1).ToString() + " and " +
                    Bid(market, 1, 1).ToString());
    return Finish(market, {space.Units(1), space.Units(1)},
                  {Bid(market, 0, 1), Bid(market, 1, 1)}, std::move(trace));
  };
  auto sweep = [&](int winner) {
    std::vector<Bundle> bundles{space.Empty(), space.Empty()};
    std::vector<Rat> payments{Rat(0), Rat(0)};
    bundles[winner] = space.Units(2);
    payments[winner] = Bid(market, winner, 2);
    trace.push_back("allocate both units to bidder " +
                    std::to_string(winner) + ", price " +
                    payments[winner].ToString());
    return Finish(market, std::move(bundles), std::move(payments),
                  std::move(trace));
  };

  if (t > Bid(market, 1, 2)) {
    const Rat y = Bid(market, 1, 1);
    trace.push_back("case 1: weak single-unit bid " + y.ToString() +
                    " against golden fraction of " + t.ToString());
    return AboveGoldenFraction(y, t) ? split() : sweep(0);
  }

  // Two-unit tie. The market's strongest-bidder check already rules out
  // t < the rival's bid.
  trace.push_back("case 2: two-unit bids tied at " + t.ToString());
  if (AboveGoldenFraction(Bid(market, 0, 1), t) ||
      AboveGoldenFraction(Bid(market, 1, 1), t)) {
    return split();
  }
  const Rat u = tape.Draw();
  const int winner = u < Rat(1, 2) ? 0 : 1;
  trace.push_back("coin " + u.ToString() + " picks bidder " +
                  std::to_string(winner));
  return sweep(winner);
}

MechanismResult Randomized2x2(const Market& market, RandomTape& tape) {
  const Strong2x2 s = AnalyzeStrict2x2(market, "the randomized 2x2 rule");
  const ItemSpace& space = market.items();
  std::vector<std::string> trace{"split probability q=" + s.q.ToString()};
  const Rat u = tape.Draw();
  if (u < s.q) {
    trace.push_back("draw " + u.ToString() + " < q: one unit each");
    return Finish(market, {space.Units(1), space.Units(1)},
                  {Bid(market, 0, 1), Bid(market, 1, 1)}, std::move(trace));
  }
  trace.push_back("draw " + u.ToString() + " >= q: both units to bidder " +
                  std::to_string(s.strong));
  std::vector<Bundle> bundles{space.Empty(), space.Empty()};
  std::vector<Rat> payments{Rat(0), Rat(0)};
  bundles[s.strong] = space.Units(2);
  payments[s.strong] = Bid(market, s.strong, 2);
  return Finish(market, std::move(bundles), std::move(payments),
                std::move(trace));
}

Rat ExactExpectedRevenue2x2(const Market& market) {
  const Strong2x2 s = AnalyzeStrict2x2(market, "the randomized 2x2 rule");
  return s.q * (Bid(market, 0, 1) + Bid(market, 1, 1)) +
         (Rat(1) - s.q) * Bid(market, s.strong, 2);
}

Rand2x2Profile AnalyzeRand2x2(const Market& market) {
  const Strong2x2 s = AnalyzeStrict2x2(market, "the randomized 2x2 rule");
  return {s.strong, s.weak, s.q};
}

MechanismResult StrongestBidder(const Market& market) {
  RequireOracleCapacity(market);
  const int n = market.bidders();
  int winner = 0;
  for (int i = 1; i < n; ++i) {
    if (market.GrandValue(i) > market.GrandValue(winner)) winner = i;
  }
  std::vector<Bundle> bundles(n, market.items().Empty());
  std::vector<Rat> payments(n, Rat(0));
  bundles[winner] = market.items().Grand();
  payments[winner] = market.GrandValue(winner);
  std::vector<std::string> trace{
      "grand bundle to bidder " + std::to_string(winner) + " at " +
      payments[winner].ToString()};
  return Finish(market, std::move(bundles), std::move(payments),
                std::move(trace));
}

MechanismResult FrameworkU(const Market& market, const Rat& epsilon,
                           RandomTape& tape) {
  RequireOracleCapacity(market);
  if (epsilon.Sign() <= 0 || epsilon >= Rat(1)) {
    throw ContractError("epsilon must lie strictly between 0 and 1, got " +
                        epsilon.ToString());
  }
  const ItemSpace& space = market.items();
  const int n = market.bidders();
  const int m = space.size();
  std::vector<std::string> trace;

  // Phase I: partition the bidders.
  std::vector<PartitionLabel> labels;
  if (tape.labels()) {
    labels = *tape.labels();
    if (static_cast<int>(labels.size()) != n) {
      throw ContractError("explicit partition labels cover " +
                          std::to_string(labels.size()) + " bidders, market "
                          "has " + std::to_string(n));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const Rat u = tape.Draw();
      labels.push_back(u < Rat(1) - epsilon ? PartitionLabel::kGrand
                       : u < Rat(1) - epsilon / Rat(2)
                           ? PartitionLabel::kFixed
                           : PartitionLabel::kStat);
    }
  }
  for (int i = 0; i < n; ++i) {
    trace.push_back("phase1 bidder=" + std::to_string(i) + " label=" +
                    ToString(labels[i]));
  }

  // Phase II: fractional optimum of the statistics submarket.
  Rat opt_star;
  {
    std::vector<Valuation> stat;
    for (int i = 0; i < n; ++i) {
      if (labels[i] == PartitionLabel::kStat) stat.push_back(market.valuation(i));
    }
    if (!stat.empty()) {
      opt_star = FractionalOpt(Market(space, std::move(stat)));
    }
  }
  trace.push_back("phase2 opt_star=" + opt_star.ToString());

  // Phase III: grand-bundle sale against the reserve opt_star/sqrt(m),
  // compared without radicals via m*bid^2 >= opt_star^2.
  int best_grand = -1;
  for (int i = 0; i < n; ++i) {
    if (labels[i] != PartitionLabel::kGrand) continue;
    if (best_grand < 0 || market.GrandValue(i) > market.GrandValue(best_grand)) {
      best_grand = i;
    }
  }
  if (best_grand >= 0) {
    const Rat bid = market.GrandValue(best_grand);
    if (Rat(m) * bid * bid >= opt_star * opt_star) {
      trace.push_back("phase3 award grand bundle to bidder " +
                      std::to_string(best_grand) + " at " + bid.ToString());
      std::vector<Bundle> bundles(n, space.Empty());
      std::vector<Rat> payments(n, Rat(0));
      bundles[best_grand] = space.Grand();
      payments[best_grand] = bid;
      return Finish(market, std::move(bundles), std::move(payments),
                    std::move(trace));
    }
    trace.push_back("phase3 best grand bid " + bid.ToString() +
                    " below reserve");
  } else {
    trace.push_back("phase3 no grand-label bidders");
  }

  // Phase IV: posted-price demand queries for the FIXED bidders.
  const Rat price = epsilon * opt_star / Rat(8 * m);
  trace.push_back("phase4 unit price=" + price.ToString());
  std::vector<Bundle> bundles(n, space.Empty());
  std::vector<Rat> payments(n, Rat(0));
  std::uint64_t remaining = space.Grand().raw();
  for (int i = 0; i < n; ++i) {
    if (labels[i] != PartitionLabel::kFixed) continue;
    // Demand query: the most valuable affordable bundle of what is left,
    // ties to fewer items, then smaller raw order. The empty bundle is
    // always affordable, so a best choice exists.
    Bundle chosen = space.Empty();
    Rat chosen_value;
    for (std::uint64_t raw = 0; raw <= remaining; ++raw) {
      if (!space.IsMultiUnit() && (raw & ~remaining) != 0) continue;
      const Bundle b = space.IsMultiUnit() ? space.Units(static_cast<int>(raw))
                                           : space.Subset(raw);
      const Rat value = market.valuation(i).Value(b);
      if (value < price * Rat(b.Count())) continue;
      if (value > chosen_value ||
          (value == chosen_value &&
           (b.Count() < chosen.Count() ||
            (b.Count() == chosen.Count() && b.raw() < chosen.raw())))) {
        chosen = b;
        chosen_value = value;
      }
    }
    bundles[i] = chosen;
    payments[i] = chosen_value;
    remaining = space.IsMultiUnit() ? remaining - chosen.raw()
                                    : remaining & ~chosen.raw();
    trace.push_back("phase4 bidder=" + std::to_string(i) + " takes " +
                    space.Describe(chosen) + " at " + chosen_value.ToString());
  }
  return Finish(market, std::move(bundles), std::move(payments),
                std::move(trace));
}

MechanismResult Demo3x4Rule(const Market& market) {
  RequireMultiUnitShape(market, 3, 4, "the 3x4 demonstration rule");
  const ItemSpace& space = market.items();
  const Rat g0 = Bid(market, 0, 4), g1 = Bid(market, 1, 4),
            g2 = Bid(market, 2, 4);
  const Rat h0 = Bid(market, 0, 2), h1 = Bid(market, 1, 2),
            h2 = Bid(market, 2, 2);

  auto result = [&](int clause, std::vector<int> counts) {
    std::vector<Bundle> bundles;
    std::vector<Rat> payments;
    for (int i = 0; i < 3; ++i) {
      bundles.push_back(space.Units(counts[i]));
      payments.push_back(counts[i] == 0 ? Rat(0) : Bid(market, i, counts[i]));
    }
    std::vector<std::string> trace{"clause " + std::to_string(clause)};
    return Finish(market, std::move(bundles), std::move(payments),
                  std::move(trace));
  };

  if (g0 > g1 && g0 > g2 && g0 > h1 + h2) return result(1, {4, 0, 0});
  if (g1 > g0 && g1 > g2 && g1 > h0 + h2) return result(2, {0, 4, 0});
  if (g2 > g0 && g2 > g1) return result(3, {0, 0, 4});
  if (g0 > g1 && g0 > g2) return result(4, {0, 2, 2});
  if (g1 > g0 && g1 > g2) return result(5, {2, 0, 2});
  return EmptyResult(market, {"no clause applies"});
}

MechanismResult RunMechanism(MechanismId id, const Market& market,
                             RandomTape& tape, const Rat& epsilon) {
  switch (id) {
    case MechanismId::kPo:
      return PoAuction(market);
    case MechanismId::kRevMax:
      return RevenueMaxPayAsBid(market);
    case MechanismId::kSpGreedy:
      return SingleParameterGreedy(market);
    case MechanismId::kGolden:
      return GoldenRatio(market, tape);
    case MechanismId::kRand2x2:
      return Randomized2x2(market, tape);
    case MechanismId::kStrongest:
      return StrongestBidder(market);
    case MechanismId::kFrameworkU:
      return FrameworkU(market, epsilon, tape);
    case MechanismId::kDemo3x4:
      return Demo3x4Rule(market);
  }
  throw DomainError("unknown mechanism id");
}

}  // namespace valuebid
