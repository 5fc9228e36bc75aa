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

#ifndef VALUEBID_SIMPLEX_HPP_
#define VALUEBID_SIMPLEX_HPP_

#include <vector>

#include "valuebid/rat.hpp"

namespace valuebid {

// maximize objective . x  subject to  rows[k] . x <= bounds[k],  x >= 0.
// Every bound must be nonnegative, which makes the all-slack basis feasible.
struct LinearProgram {
  std::vector<Rat> objective;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> bounds;
};

struct SimplexSolution {
  Rat value;
  std::vector<Rat> x;
};

// Dense tableau simplex over exact rationals with Bland's pivot rule, so it
// terminates on every input. Throws ContractError on shape errors, negative
// bounds, or an unbounded objective.
SimplexSolution SolveMax(const LinearProgram& lp);

}  // namespace valuebid

#endif  // VALUEBID_SIMPLEX_HPP_
