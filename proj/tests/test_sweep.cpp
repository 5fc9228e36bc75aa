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

#include "valuebid/sweep.hpp"

#include <array>
#include <set>
#include <vector>

#include "doctest.h"
#include "testutil.hpp"
#include "valuebid/audit.hpp"
#include "valuebid/errors.hpp"

using namespace valuebid;

namespace {

// The four curve values of a two-bidder two-unit instance.
std::array<int, 4> Tuple2x2(const Market& market) {
  const ItemSpace& space = market.items();
  auto at = [&](int i, int s) {
    return static_cast<int>(
        market.valuation(i).Value(space.Units(s)).ToDouble());
  };
  return {at(0, 1), at(0, 2), at(1, 1), at(1, 2)};
}

}  // namespace

TEST_CASE("execution mode names round-trip") {
  CHECK(ExecModeName(ExecMode::kSerial) == "serial");
  CHECK(ExecModeName(ExecMode::kParallel) == "parallel");
  CHECK(ExecModeFromString("serial") == ExecMode::kSerial);
  CHECK(ExecModeFromString("parallel") == ExecMode::kParallel);
  CHECK_THROWS_AS(ExecModeFromString("threads"), ParseError);
}

TEST_CASE("the golden grid family enumerates its tuples exactly once") {
  const Golden2x2Family family(5);
  std::set<std::array<int, 4>> seen;
  for (long long i = 0; i < family.size(); ++i) {
    const Market market = family.Instance(i);
    CHECK(market.psb() == 0);
    const auto [a1, b1, a2, b2] = Tuple2x2(market);
    CHECK(a1 <= b1);
    CHECK(a2 <= b2);
    CHECK(b2 <= b1);
    CHECK(b1 <= 5);
    CHECK(seen.insert({a1, b1, a2, b2}).second);
  }
  long long expected = 0;
  for (int b1 = 0; b1 <= 5; ++b1) {
    expected += (b1 + 1) * ((b1 + 1) * (b1 + 2) / 2);
  }
  CHECK(static_cast<long long>(seen.size()) == expected);
  CHECK(family.size() == expected);
  CHECK(Golden2x2Family(20).size() == 28336);
  CHECK_THROWS_AS(family.Instance(family.size()), DomainError);
  CHECK_THROWS_AS(family.Instance(-1), DomainError);
  CHECK_THROWS_AS(Golden2x2Family(-1), DomainError);
}

TEST_CASE("the strict-split family excludes two-unit ties") {
  const Rand2x2Family family(5);
  std::set<std::array<int, 4>> seen;
  for (long long i = 0; i < family.size(); ++i) {
    const Market market = family.Instance(i);
    CHECK_FALSE(market.psb().has_value());
    const auto [a1, b1, a2, b2] = Tuple2x2(market);
    CHECK(a1 <= b1);
    CHECK(a2 <= b2);
    CHECK(b2 < b1);
    CHECK(seen.insert({a1, b1, a2, b2}).second);
  }
  long long expected = 0;
  for (int b1 = 1; b1 <= 5; ++b1) {
    expected += (b1 + 1) * (b1 * (b1 + 1) / 2);
  }
  CHECK(family.size() == expected);
}

TEST_CASE("the strongest-bidder family decodes nondecreasing curves") {
  const StrongestFamily family(2, 3);
  // 10 nondecreasing two-value curves over {0..3}, squared.
  CHECK(family.size() == 100);
  std::set<std::array<int, 4>> seen;
  for (long long i = 0; i < family.size(); ++i) {
    const Market market = family.Instance(i);
    const auto [a1, b1, a2, b2] = Tuple2x2(market);
    CHECK(a1 <= b1);
    CHECK(a2 <= b2);
    CHECK(b1 <= 3);
    CHECK(seen.insert({a1, b1, a2, b2}).second);
  }
  CHECK(seen.size() == 100);

  // Bidder 0 varies slowest; the first instance is all zeros, the last
  // pins every curve at the grid maximum.
  const auto first = Tuple2x2(family.Instance(0));
  const auto last = Tuple2x2(family.Instance(family.size() - 1));
  CHECK(first == std::array<int, 4>{0, 0, 0, 0});
  CHECK(last == std::array<int, 4>{3, 3, 3, 3});

  CHECK(StrongestFamily(3, 2).size() == 1000);
  CHECK_THROWS_AS(StrongestFamily(0, 3), DomainError);
}

TEST_CASE("sweeping an empty family is a contract error") {
  const Rand2x2Family empty(0);
  CHECK(empty.size() == 0);
  CHECK_THROWS_AS(WorstCaseSweep(MechanismId::kRand2x2, empty, Rat(0),
                                 ExecMode::kSerial),
                  ContractError);
}

TEST_CASE("golden sweep stays above the golden fraction") {
  const Golden2x2Family family(8);
  const SweepResult result = WorstCaseSweep(MechanismId::kGolden, family,
                                            Rat(0), ExecMode::kSerial);
  CHECK(result.instances == family.size());
  // ratio > (sqrt(5)-1)/2 exactly when ratio^2 + ratio > 1.
  CHECK(result.min_ratio * result.min_ratio + result.min_ratio > Rat(1));
}

TEST_CASE("randomized split sweep bottoms out at exactly 3/4") {
  const Rand2x2Family family(8);
  const SweepResult result = WorstCaseSweep(MechanismId::kRand2x2, family,
                                            Rat(0), ExecMode::kSerial);
  CHECK(result.min_ratio == Rat(3, 4));
  RandomTape tape(0);
  CHECK(MechanismRatio(MechanismId::kRand2x2, result.witness, tape, Rat(0)) ==
        Rat(3, 4));
}

TEST_CASE("strongest sweep agrees with a direct scan") {
  const StrongestFamily family(2, 4);
  const SweepResult result = WorstCaseSweep(MechanismId::kStrongest, family,
                                            Rat(0), ExecMode::kSerial);
  CHECK(result.min_ratio >= Rat(1, 2));

  Rat best;
  long long best_index = -1;
  for (long long i = 0; i < family.size(); ++i) {
    RandomTape tape(0);
    const Rat ratio =
        MechanismRatio(MechanismId::kStrongest, family.Instance(i), tape, Rat(0));
    if (best_index < 0 || ratio < best) {
      best = ratio;
      best_index = i;
    }
  }
  CHECK(result.min_ratio == best);
  CHECK(result.witness_index == best_index);
}

TEST_CASE("ratio ties resolve toward the lowest instance index") {
  // Every instance of the k=1 golden grid sells at the full optimum, so
  // the minimum is a maximal tie and the witness must be instance 0.
  const Golden2x2Family family(1);
  const SweepResult result = WorstCaseSweep(MechanismId::kGolden, family,
                                            Rat(0), ExecMode::kSerial);
  CHECK(result.min_ratio == Rat(1));
  CHECK(result.witness_index == 0);
}

TEST_CASE("parallel sweeps match the serial reference") {
  struct Case {
    MechanismId id;
    const InstanceFamily* family;
  };
  const Golden2x2Family golden(6);
  const Rand2x2Family split(6);
  const StrongestFamily strongest(2, 4);
  const std::vector<Case> cases{{MechanismId::kGolden, &golden},
                                {MechanismId::kRand2x2, &split},
                                {MechanismId::kStrongest, &strongest}};
  for (const Case& c : cases) {
    std::vector<std::pair<long long, Rat>> serial_rows;
    std::vector<std::pair<long long, Rat>> parallel_rows;
    const SweepResult serial = WorstCaseSweep(
        c.id, *c.family, Rat(0), ExecMode::kSerial,
        [&](long long i, const Rat& r) { serial_rows.emplace_back(i, r); });
    const SweepResult parallel = WorstCaseSweep(
        c.id, *c.family, Rat(0), ExecMode::kParallel,
        [&](long long i, const Rat& r) { parallel_rows.emplace_back(i, r); });

    CHECK(serial.min_ratio == parallel.min_ratio);
    CHECK(serial.witness_index == parallel.witness_index);
    CHECK(serial.instances == parallel.instances);
    REQUIRE(serial_rows.size() == parallel_rows.size());
    CHECK(serial_rows == parallel_rows);
    CHECK(serial_rows.front().first == 0);
    CHECK(serial_rows.back().first == c.family->size() - 1);
  }
}
