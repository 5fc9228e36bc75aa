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

#include "valuebid/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "valuebid/errors.hpp"
#include "valuebid/simplex.hpp"

namespace valuebid {
namespace {

constexpr int kMaxOracleItems = 12;
constexpr std::uint64_t kMaxParetoCombinations = std::uint64_t{1} << 24;

OptimalSolution OptimalRevenueMultiUnit(const Market& market) {
  const int n = market.bidders();
  const int m = market.items().size();

  // vals[i][s]: bidder i's closure value for s units.
  std::vector<std::vector<Rat>> vals(n, std::vector<Rat>(m + 1));
  for (int i = 0; i < n; ++i) {
    for (const Atom& atom : market.valuation(i).atoms()) {
      const int s = atom.bundle.Count();
      if (atom.value > vals[i][s]) vals[i][s] = atom.value;
    }
    for (int s = 1; s <= m; ++s) {
      if (vals[i][s - 1] > vals[i][s]) vals[i][s] = vals[i][s - 1];
    }
  }

  // dp[i][u]: best summed value for bidders i.. with u units left.
  std::vector<std::vector<Rat>> dp(n + 1, std::vector<Rat>(m + 1));
  for (int i = n - 1; i >= 0; --i) {
    for (int u = 0; u <= m; ++u) {
      Rat best = dp[i + 1][u];
      for (int s = 1; s <= u; ++s) {
        Rat cand = vals[i][s] + dp[i + 1][u - s];
        if (cand > best) best = cand;
      }
      dp[i][u] = std::move(best);
    }
  }

  // Walking forward and taking the fewest units that still reach dp[i][u]
  // yields the lexicographically smallest maximizing vector.
  std::vector<Bundle> bundles;
  bundles.reserve(n);
  int left = m;
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s <= left; ++s) {
      if (vals[i][s] + dp[i + 1][left - s] == dp[i][left]) {
        bundles.push_back(market.items().Units(s));
        left -= s;
        break;
      }
    }
  }
  return {dp[0][m], Allocation(market.items(), std::move(bundles))};
}

OptimalSolution OptimalRevenueHeterogeneous(const Market& market) {
  const int n = market.bidders();
  const int m = market.items().size();
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;

  // vals[i][mask]: closure value, spread upward from the atoms one bit at
  // a time.
  std::vector<std::vector<Rat>> vals(n, std::vector<Rat>(full + 1));
  for (int i = 0; i < n; ++i) {
    for (const Atom& atom : market.valuation(i).atoms()) {
      Rat& cell = vals[i][atom.bundle.raw()];
      if (atom.value > cell) cell = atom.value;
    }
    for (int j = 0; j < m; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      for (std::uint64_t mask = 0; mask <= full; ++mask) {
        if ((mask & bit) && vals[i][mask ^ bit] > vals[i][mask]) {
          vals[i][mask] = vals[i][mask ^ bit];
        }
      }
    }
  }

  // dp[i][mask]: best summed value for bidders i.. with item set `mask`.
  std::vector<std::vector<Rat>> dp(n + 1, std::vector<Rat>(full + 1));
  for (int i = n - 1; i >= 0; --i) {
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      Rat best = vals[i][mask] + dp[i + 1][0];
      for (std::uint64_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
        Rat cand = vals[i][sub] + dp[i + 1][mask ^ sub];
        if (cand > best) best = cand;
        if (sub == 0) break;
      }
      dp[i][mask] = std::move(best);
    }
  }

  std::vector<Bundle> bundles;
  bundles.reserve(n);
  std::uint64_t left = full;
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t sub = 0; sub <= left; ++sub) {
      if (sub & ~left) continue;
      if (vals[i][sub] + dp[i + 1][left ^ sub] == dp[i][left]) {
        bundles.push_back(market.items().Subset(sub));
        left ^= sub;
        break;
      }
    }
  }
  return {dp[0][full], Allocation(market.items(), std::move(bundles))};
}

// Distinct candidate bundles for one bidder: the empty bundle plus every
// atom bundle, each priced at its closure value, sorted ascending.
struct Candidate {
  Bundle bundle;
  Rat value;
};

std::vector<Candidate> CandidatesFor(const Market& market, int i) {
  std::map<std::uint64_t, Candidate> by_raw;
  const ItemSpace& space = market.items();
  by_raw.emplace(0, Candidate{space.Empty(), Rat(0)});
  for (const Atom& atom : market.valuation(i).atoms()) {
    by_raw.insert_or_assign(
        atom.bundle.raw(),
        Candidate{atom.bundle, market.valuation(i).Value(atom.bundle)});
  }
  std::vector<Candidate> out;
  out.reserve(by_raw.size());
  for (auto& [raw, cand] : by_raw) out.push_back(std::move(cand));
  return out;
}

}  // namespace

void RequireOracleCapacity(const Market& market) {
  if (!market.items().IsMultiUnit() &&
      market.items().size() > kMaxOracleItems) {
    throw CapacityError("exact oracles handle at most " +
                        std::to_string(kMaxOracleItems) +
                        " heterogeneous items, got " +
                        std::to_string(market.items().size()));
  }
}

OptimalSolution OptimalRevenue(const Market& market) {
  RequireOracleCapacity(market);
  return market.items().IsMultiUnit() ? OptimalRevenueMultiUnit(market)
                                      : OptimalRevenueHeterogeneous(market);
}

Rat FractionalOpt(const Market& market) {
  RequireOracleCapacity(market);
  const int n = market.bidders();
  const int m = market.items().size();

  struct Var {
    int bidder;
    Bundle bundle;
    Rat value;
  };
  std::vector<Var> vars;
  for (int i = 0; i < n; ++i) {
    for (const Candidate& c : CandidatesFor(market, i)) {
      if (c.value.Sign() > 0) vars.push_back({i, c.bundle, c.value});
    }
  }
  if (vars.empty()) return Rat(0);

  LinearProgram lp;
  lp.objective.reserve(vars.size());
  for (const Var& v : vars) lp.objective.push_back(v.value);

  auto add_row = [&](auto&& coeff, Rat bound) {
    std::vector<Rat> row;
    row.reserve(vars.size());
    for (const Var& v : vars) row.push_back(coeff(v));
    lp.rows.push_back(std::move(row));
    lp.bounds.push_back(std::move(bound));
  };

  for (int i = 0; i < n; ++i) {
    add_row([&](const Var& v) { return Rat(v.bidder == i ? 1 : 0); }, Rat(1));
  }
  if (market.items().IsMultiUnit()) {
    add_row([&](const Var& v) { return Rat(v.bundle.Count()); }, Rat(m));
  } else {
    for (int j = 0; j < m; ++j) {
      add_row(
          [&](const Var& v) { return Rat(v.bundle.raw() >> j & 1 ? 1 : 0); },
          Rat(1));
    }
  }
  return SolveMax(lp).value;
}

std::optional<ParetoWitness> ParetoDominated(const Market& market,
                                             const Outcome& outcome) {
  RequireOracleCapacity(market);
  const int n = market.bidders();
  if (outcome.allocation().size() != n) {
    throw ContractError("outcome and market disagree on the bidder count");
  }

  std::vector<Rat> base_value(n);
  Rat base_revenue;
  for (int i = 0; i < n; ++i) {
    base_value[i] = market.valuation(i).Value(outcome.allocation()[i]);
    if (outcome.payments()[i] > base_value[i]) {
      throw PreconditionError(
          "audited outcome charges bidder " + std::to_string(i) +
          " above his bundle value; only individually feasible outcomes "
          "have finite utilities to compare");
    }
    base_revenue += outcome.payments()[i];
  }

  std::vector<std::vector<Candidate>> candidates(n);
  std::uint64_t combinations = 1;
  for (int i = 0; i < n; ++i) {
    candidates[i] = CandidatesFor(market, i);
    if (combinations > kMaxParetoCombinations / candidates[i].size()) {
      throw CapacityError("dominance search space exceeds " +
                          std::to_string(kMaxParetoCombinations) +
                          " allocations");
    }
    combinations *= candidates[i].size();
  }

  // Depth-first product over per-bidder candidates in ascending bundle
  // order, so the first witness found is the lexicographically smallest.
  // `used` is the unit total or the item mask taken so far.
  std::vector<const Candidate*> chosen(n);
  const bool multi = market.items().IsMultiUnit();
  const std::uint64_t supply = market.items().Grand().raw();

  auto search = [&](auto&& self, int i, std::uint64_t used, const Rat& sum,
                    bool strict) -> bool {
    if (i == n) {
      return sum > base_revenue || (strict && sum == base_revenue);
    }
    for (const Candidate& c : candidates[i]) {
      if (c.value < base_value[i]) continue;
      const std::uint64_t raw = c.bundle.raw();
      if (multi ? used + raw > supply : (used & raw) != 0) continue;
      chosen[i] = &c;
      if (self(self, i + 1, multi ? used + raw : used | raw, sum + c.value,
               strict || c.value > base_value[i])) {
        return true;
      }
    }
    return false;
  };
  if (!search(search, 0, 0, Rat(0), false)) return std::nullopt;

  std::vector<Bundle> bundles;
  std::vector<Rat> payments;
  for (int i = 0; i < n; ++i) {
    bundles.push_back(chosen[i]->bundle);
    payments.push_back(chosen[i]->value);
  }
  return ParetoWitness{Allocation(market.items(), std::move(bundles)),
                       std::move(payments)};
}

}  // namespace valuebid
