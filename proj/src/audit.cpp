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

#include "valuebid/audit.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "valuebid/errors.hpp"
#include "valuebid/oracles.hpp"

namespace valuebid {

namespace {

// Joint opponent rescalings are a cross product; this bounds it so an
// audit cannot silently explode on a large market.
constexpr long long kMaxOpponentProfiles = 10000;

// Functional fingerprint of a report: the maximal positive atom value per
// bundle. Budget caps are already folded into the atom values at
// construction, so two valuations with equal fingerprints answer every
// value query identically.
std::string ValuationKey(const Valuation& v) {
  std::map<std::uint64_t, Rat> best;
  for (const Atom& atom : v.atoms()) {
    if (atom.value.Sign() <= 0) continue;
    auto [it, inserted] = best.emplace(atom.bundle.raw(), atom.value);
    if (!inserted && atom.value > it->second) it->second = atom.value;
  }
  std::string key;
  for (const auto& [raw, value] : best) {
    key += std::to_string(raw) + ":" + value.ToString() + ";";
  }
  return key;
}

Valuation ScaleValuation(const ItemSpace& space, const Valuation& v,
                         const Rat& factor) {
  std::vector<Atom> atoms;
  atoms.reserve(v.atoms().size());
  for (const Atom& atom : v.atoms()) {
    atoms.push_back({atom.bundle, atom.value * factor});
  }
  return Valuation(space, std::move(atoms));
}

Valuation WithoutAtom(const ItemSpace& space, const Valuation& v,
                      std::size_t drop) {
  std::vector<Atom> atoms;
  atoms.reserve(v.atoms().size() - 1);
  for (std::size_t k = 0; k < v.atoms().size(); ++k) {
    if (k != drop) atoms.push_back(v.atoms()[k]);
  }
  return Valuation(space, std::move(atoms));
}

// Number of opponent report profiles tried per audited bidder: the
// truthful profile plus one per assignment of grid factors to opponents.
long long ProfileCount(const std::vector<Rat>& grid, int bidders) {
  if (grid.empty()) return 1;
  long long count = 1;
  for (int j = 1; j < bidders; ++j) {
    count *= static_cast<long long>(grid.size());
    if (count > kMaxOpponentProfiles) {
      throw CapacityError("opponent scale grid spans more than " +
                          std::to_string(kMaxOpponentProfiles) +
                          " joint profiles");
    }
  }
  return count + 1;
}

bool DecodesToIdentity(const std::vector<Rat>& grid, long long code,
                       int opponents) {
  const Rat one(1);
  for (int j = 0; j < opponents; ++j) {
    if (grid[code % grid.size()] != one) return false;
    code /= static_cast<long long>(grid.size());
  }
  return true;
}

// Profile 0 is the market as given; profile p >= 1 rescales each opponent
// of `bidder` by the grid factor decoded from p-1 (ascending bidder
// order). PreconditionError from a broken psb designation propagates to
// the caller, which skips the profile.
Market OpponentProfile(const Market& market, int bidder,
                       const std::vector<Rat>& grid, long long profile) {
  if (profile == 0) return market;
  Market shaped = market;
  long long code = profile - 1;
  const Rat one(1);
  for (int j = 0; j < market.bidders(); ++j) {
    if (j == bidder) continue;
    const Rat& factor = grid[code % grid.size()];
    code /= static_cast<long long>(grid.size());
    if (factor == one) continue;
    shaped = shaped.WithValuation(
        j, ScaleValuation(market.items(), market.valuation(j), factor));
  }
  return shaped;
}

// Scores bidder `i`'s outcome on a reported market with his TRUE
// valuation. May throw PreconditionError when the reported market falls
// outside the mechanism's domain.
using Evaluator = std::function<Utility(const Market& reported, int bidder)>;

AuditVerdict DriveAudit(const Market& market, const DeviationOptions& options,
                        AuditMode mode, std::optional<std::uint64_t> seed,
                        const std::optional<std::vector<PartitionLabel>>& labels,
                        const Evaluator& evaluate) {
  AuditVerdict verdict;
  const int n = market.bidders();
  const std::vector<Rat>& grid = options.opponent_scales;
  const long long profiles = ProfileCount(grid, n);
  for (int i = 0; i < n; ++i) {
    const std::vector<Valuation> misreports = MisreportsFor(market, i, options);
    for (long long p = 0; p < profiles; ++p) {
      if (p > 0 && DecodesToIdentity(grid, p - 1, n - 1)) continue;
      std::optional<Market> base;
      try {
        base = OpponentProfile(market, i, grid, p);
      } catch (const PreconditionError&) {
        ++verdict.cases_skipped;
        continue;
      }
      std::optional<Utility> truthful;
      try {
        truthful = evaluate(*base, i);
      } catch (const PreconditionError&) {
        // The scenario as given must satisfy the mechanism's
        // preconditions; only rescaled profiles may be dropped.
        if (p == 0) throw;
        ++verdict.cases_skipped;
        continue;
      }
      for (const Valuation& report : misreports) {
        std::optional<Market> deviated;
        std::optional<Utility> deviating;
        try {
          deviated = base->WithValuation(i, report);
          deviating = evaluate(*deviated, i);
        } catch (const PreconditionError&) {
          ++verdict.cases_skipped;
          continue;
        }
        ++verdict.cases_checked;
        if (*deviating > *truthful) {
          verdict.status = AuditStatus::kViolation;
          verdict.witness =
              AuditWitness{i,      report,    mode,       seed,      labels,
                           *truthful, *deviating, *base, *deviated};
          return verdict;
        }
      }
    }
  }
  return verdict;
}

// Expected utility of `bidder` under the randomized split rule applied to
// `reported`, scored with `truth`. With probability q both bidders get one
// unit at their own one-unit bids; otherwise the strong bidder takes both
// at his two-unit bid. An infeasible payment in any positive-probability
// branch sinks the whole expectation to minus infinity.
Utility ExpectedUtility2x2(const Market& reported, const Valuation& truth,
                           int bidder) {
  const Rand2x2Profile profile = AnalyzeRand2x2(reported);
  const ItemSpace& space = reported.items();
  const Rat& q = profile.split_probability;
  Rat expected(0);
  if (q.Sign() > 0) {
    const Rat pay = reported.valuation(bidder).Value(space.Units(1));
    const Rat value = truth.Value(space.Units(1));
    if (pay > value) return Utility::NegInf();
    expected += q * value;
  }
  // q < 1 always, so the sweep branch has positive probability.
  if (bidder == profile.strong) {
    const Rat pay = reported.valuation(bidder).Value(space.Units(2));
    const Rat value = truth.Value(space.Units(2));
    if (pay > value) return Utility::NegInf();
    expected += (Rat(1) - q) * value;
  }
  return Utility(expected);
}

}  // namespace

std::vector<Rat> DefaultScaleGrid() {
  return {Rat(0), Rat(1, 2), Rat(9, 10), Rat(11, 10), Rat(2)};
}

std::string AuditStatusName(AuditStatus status) {
  switch (status) {
    case AuditStatus::kNoViolationFound:
      return "no_violation_found";
    case AuditStatus::kViolation:
      return "violation";
  }
  throw ContractError("unknown audit status");
}

std::string AuditModeName(AuditMode mode) {
  switch (mode) {
    case AuditMode::kDeterministic:
      return "deterministic";
    case AuditMode::kUniversal:
      return "universal";
    case AuditMode::kExpectation:
      return "expectation";
  }
  throw ContractError("unknown audit mode");
}

std::vector<Valuation> MisreportsFor(const Market& market, int bidder,
                                     const DeviationOptions& options) {
  const Valuation& truth = market.valuation(bidder);
  const ItemSpace& space = market.items();
  std::vector<Valuation> out;
  std::set<std::string> seen;
  auto push = [&](Valuation v) {
    if (seen.insert(ValuationKey(v)).second) out.push_back(std::move(v));
  };
  push(truth);
  for (const Rat& factor : options.scale_grid) {
    push(ScaleValuation(space, truth, factor));
  }
  if (options.zero_single_atoms) {
    for (std::size_t k = 0; k < truth.atoms().size(); ++k) {
      push(WithoutAtom(space, truth, k));
    }
  }
  if (!options.value_grid.empty() && !truth.atoms().empty()) {
    std::set<std::uint64_t> raws;
    std::vector<Bundle> bundles;
    for (const Atom& atom : truth.atoms()) {
      if (raws.insert(atom.bundle.raw()).second) bundles.push_back(atom.bundle);
    }
    long long cases = 1;
    for (std::size_t k = 0; k < bundles.size(); ++k) {
      cases *= static_cast<long long>(options.value_grid.size());
      if (cases > kMaxValueGridCases) {
        throw CapacityError("value grid spans more than " +
                            std::to_string(kMaxValueGridCases) +
                            " misreports for one bidder");
      }
    }
    for (long long code = 0; code < cases; ++code) {
      std::vector<Atom> atoms;
      atoms.reserve(bundles.size());
      long long rest = code;
      for (const Bundle& bundle : bundles) {
        const std::size_t pick =
            static_cast<std::size_t>(rest %
                                     static_cast<long long>(options.value_grid.size()));
        rest /= static_cast<long long>(options.value_grid.size());
        atoms.push_back({bundle, options.value_grid[pick]});
      }
      push(Valuation(space, std::move(atoms)));
    }
  }
  return out;
}

AuditVerdict AuditDeterministic(MechanismId id, const Market& market,
                                const DeviationOptions& options) {
  if (UsesRandomness(id)) {
    throw ContractError("mechanism " + ToString(id) +
                        " may consult the random tape; audit it in universal "
                        "or expectation mode");
  }
  const Evaluator evaluate = [id, &market](const Market& reported, int bidder) {
    RandomTape tape(0);
    const MechanismResult result = RunMechanism(id, reported, tape, Rat(0));
    if (tape.draws() != 0) {
      throw ContractError("mechanism " + ToString(id) +
                          " consumed the tape inside a deterministic audit");
    }
    return UtilityOf(result.outcome, market.valuation(bidder), bidder);
  };
  return DriveAudit(market, options, AuditMode::kDeterministic, std::nullopt,
                    std::nullopt, evaluate);
}

AuditVerdict AuditUniversal(MechanismId id, const Market& market,
                            const Rat& epsilon,
                            const std::vector<RandomTape>& tapes,
                            const DeviationOptions& options) {
  if (tapes.empty()) {
    throw ContractError("universal audit needs at least one tape");
  }
  AuditVerdict total;
  for (const RandomTape& tape : tapes) {
    const Evaluator evaluate = [&](const Market& reported, int bidder) {
      RandomTape replay = tape;
      const MechanismResult result =
          RunMechanism(id, reported, replay, epsilon);
      return UtilityOf(result.outcome, market.valuation(bidder), bidder);
    };
    AuditVerdict verdict = DriveAudit(market, options, AuditMode::kUniversal,
                                      tape.seed(), tape.labels(), evaluate);
    total.cases_checked += verdict.cases_checked;
    total.cases_skipped += verdict.cases_skipped;
    if (verdict.found()) {
      verdict.cases_checked = total.cases_checked;
      verdict.cases_skipped = total.cases_skipped;
      return verdict;
    }
  }
  return total;
}

AuditVerdict AuditExpectation2x2(const Market& market,
                                 const DeviationOptions& options) {
  const Evaluator evaluate = [&market](const Market& reported, int bidder) {
    return ExpectedUtility2x2(reported, market.valuation(bidder), bidder);
  };
  return DriveAudit(market, options, AuditMode::kExpectation, std::nullopt,
                    std::nullopt, evaluate);
}

Rat MechanismRatio(MechanismId id, const Market& market, RandomTape& tape,
                   const Rat& epsilon) {
  const Rat optimum = OptimalRevenue(market).value;
  if (optimum.IsZero()) return Rat(1);
  if (id == MechanismId::kRand2x2) {
    return ExactExpectedRevenue2x2(market) / optimum;
  }
  const MechanismResult result = RunMechanism(id, market, tape, epsilon);
  return Revenue(result.outcome) / optimum;
}

}  // namespace valuebid
