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

#ifndef VALUEBID_SWEEP_HPP_
#define VALUEBID_SWEEP_HPP_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "valuebid/market.hpp"
#include "valuebid/mechanisms.hpp"
#include "valuebid/rat.hpp"

namespace valuebid {

// Whether a sweep runs on one thread or fans instances out with OpenMP.
// Both paths reduce by (ratio, lowest index), so they return identical
// results; the serial path doubles as the reference the parallel one is
// benchmarked and tested against.
enum class ExecMode {
  kSerial,
  kParallel,
};

std::string ExecModeName(ExecMode mode);
ExecMode ExecModeFromString(std::string_view text);

// A finite grid of markets addressed by index. Instances are decoded on
// demand, so a family description stays O(1) in memory no matter how many
// markets it spans. Decoding is pure; concurrent calls are safe.
class InstanceFamily {
 public:
  virtual ~InstanceFamily() = default;

  virtual std::string name() const = 0;
  virtual long long size() const = 0;

  // The market at `index` in [0, size()). Throws DomainError outside.
  virtual Market Instance(long long index) const = 0;
};

// Every two-bidder two-unit market with integer bid curves in [0, k],
// monotone per bidder, bidder 0's two-unit bid weakly highest, and
// bidder 0 designated strongest. This is the domain of the golden-ratio
// rule, ties included.
class Golden2x2Family : public InstanceFamily {
 public:
  explicit Golden2x2Family(int k);

  std::string name() const override;
  long long size() const override;
  Market Instance(long long index) const override;

 private:
  int k_;
  // offsets_[b] = number of instances with bidder 0's two-unit bid < b.
  std::vector<long long> offsets_;
};

// Same grid restricted to strictly distinct two-unit bids (bidder 0's
// higher) and without the strongest-bidder designation: the domain of the
// randomized split rule.
class Rand2x2Family : public InstanceFamily {
 public:
  explicit Rand2x2Family(int k);

  std::string name() const override;
  long long size() const override;
  Market Instance(long long index) const override;

 private:
  int k_;
  std::vector<long long> offsets_;
};

// Every `bidders`-bidder multi-unit market with as many units as bidders
// and integer nondecreasing bid curves in [0, k]. The grid the
// strongest-bidder rule's 1/n bound is swept over.
class StrongestFamily : public InstanceFamily {
 public:
  StrongestFamily(int bidders, int k);

  std::string name() const override;
  long long size() const override;
  Market Instance(long long index) const override;

 private:
  std::vector<int> CurveFromRank(long long rank) const;

  int n_;
  int k_;
  long long per_curve_;  // nondecreasing curves per bidder
  std::vector<std::vector<long long>> binomial_;
};

// Receives every (index, ratio) pair of a sweep in ascending index order,
// regardless of execution mode.
using SweepRowSink = std::function<void(long long index, const Rat& ratio)>;

struct SweepResult {
  Rat min_ratio;
  long long witness_index;
  long long instances;
  Market witness;
};

// Evaluates MechanismRatio on every instance and returns the minimum,
// breaking ratio ties toward the lower index. Each instance is scored
// with a fresh seed-0 tape, so the result is a pure function of the
// arguments. Throws ContractError on an empty family.
SweepResult WorstCaseSweep(MechanismId id, const InstanceFamily& family,
                           const Rat& epsilon, ExecMode mode,
                           const SweepRowSink& sink = {});

}  // namespace valuebid

#endif  // VALUEBID_SWEEP_HPP_
