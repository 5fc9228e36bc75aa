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

#include "valuebid/simplex.hpp"

#include "doctest.h"
#include "valuebid/errors.hpp"

using valuebid::LinearProgram;
using valuebid::Rat;
using valuebid::SolveMax;

TEST_CASE("box constraints solve at the corner") {
  LinearProgram lp;
  lp.objective = {Rat(1), Rat(1)};
  lp.rows = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  lp.bounds = {Rat(3), Rat(4)};
  const auto sol = SolveMax(lp);
  CHECK(sol.value == Rat(7));
  CHECK(sol.x == std::vector<Rat>{Rat(3), Rat(4)});
}

TEST_CASE("a two-constraint program picks the profitable vertex") {
  // max 3x + 2y st x + y <= 4, x + 3y <= 6.
  LinearProgram lp;
  lp.objective = {Rat(3), Rat(2)};
  lp.rows = {{Rat(1), Rat(1)}, {Rat(1), Rat(3)}};
  lp.bounds = {Rat(4), Rat(6)};
  const auto sol = SolveMax(lp);
  CHECK(sol.value == Rat(12));
  CHECK(sol.x == std::vector<Rat>{Rat(4), Rat(0)});
}

TEST_CASE("fractional vertices come out exact") {
  // max x + y st 2x + y <= 2, x + 2y <= 2; optimum at x = y = 2/3.
  LinearProgram lp;
  lp.objective = {Rat(1), Rat(1)};
  lp.rows = {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}};
  lp.bounds = {Rat(2), Rat(2)};
  const auto sol = SolveMax(lp);
  CHECK(sol.value == Rat(4, 3));
  CHECK(sol.x == std::vector<Rat>{Rat(2, 3), Rat(2, 3)});
}

TEST_CASE("the classic cycling instance terminates under Bland") {
  // Degenerate program that cycles forever under the largest-coefficient
  // rule; its optimum is 1/20 at x = (1/25, 0, 1, 0).
  LinearProgram lp;
  lp.objective = {Rat(3, 4), Rat(-150), Rat(1, 50), Rat(-6)};
  lp.rows = {{Rat(1, 4), Rat(-60), Rat(-1, 25), Rat(9)},
             {Rat(1, 2), Rat(-90), Rat(-1, 50), Rat(3)},
             {Rat(0), Rat(0), Rat(1), Rat(0)}};
  lp.bounds = {Rat(0), Rat(0), Rat(1)};
  CHECK(SolveMax(lp).value == Rat(1, 20));
}

TEST_CASE("solutions satisfy their own constraints") {
  LinearProgram lp;
  lp.objective = {Rat(5), Rat(4), Rat(3)};
  lp.rows = {{Rat(2), Rat(3), Rat(1)},
             {Rat(4), Rat(1), Rat(2)},
             {Rat(3), Rat(4), Rat(2)}};
  lp.bounds = {Rat(5), Rat(11), Rat(8)};
  const auto sol = SolveMax(lp);
  CHECK(sol.value == Rat(13));
  for (std::size_t k = 0; k < lp.rows.size(); ++k) {
    Rat lhs;
    for (std::size_t j = 0; j < sol.x.size(); ++j) {
      lhs += lp.rows[k][j] * sol.x[j];
    }
    CHECK(lhs <= lp.bounds[k]);
  }
  for (const Rat& xi : sol.x) CHECK(xi.Sign() >= 0);
}

TEST_CASE("empty objective is legal and worth zero") {
  LinearProgram lp;
  lp.rows = {{}};
  lp.bounds = {Rat(1)};
  CHECK(SolveMax(lp).value == Rat(0));
}

TEST_CASE("malformed or unbounded programs are rejected") {
  LinearProgram unbounded;
  unbounded.objective = {Rat(1)};
  CHECK_THROWS_AS(SolveMax(unbounded), valuebid::ContractError);

  LinearProgram negative;
  negative.objective = {Rat(1)};
  negative.rows = {{Rat(1)}};
  negative.bounds = {Rat(-1)};
  CHECK_THROWS_AS(SolveMax(negative), valuebid::ContractError);

  LinearProgram ragged;
  ragged.objective = {Rat(1), Rat(1)};
  ragged.rows = {{Rat(1)}};
  ragged.bounds = {Rat(1)};
  CHECK_THROWS_AS(SolveMax(ragged), valuebid::ContractError);

  LinearProgram missing_bound;
  missing_bound.objective = {Rat(1)};
  missing_bound.rows = {{Rat(1)}};
  CHECK_THROWS_AS(SolveMax(missing_bound), valuebid::ContractError);
}
