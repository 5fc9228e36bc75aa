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

#include <algorithm>
#include <atomic>
#include <climits>
#include <exception>
#include <utility>

#include "valuebid/audit.hpp"
#include "valuebid/errors.hpp"
#include "valuebid/tape.hpp"

namespace valuebid {

namespace {

// Instances handed to one thread between reductions; also the emission
// granularity of the ordered row sink in parallel mode.
constexpr long long kChunk = 1024;

// Pairs (b, a) with 0 <= a <= b <= top, ordered by b then a.
long long TrianglePairs(int top) {
  return static_cast<long long>(top + 1) * (top + 2) / 2;
}

// Decodes a triangular rank back into (b, a).
std::pair<int, int> UnrankTriangle(long long rank) {
  int b = 0;
  while (TrianglePairs(b) <= rank) ++b;
  const long long before = b == 0 ? 0 : TrianglePairs(b - 1);
  return {b, static_cast<int>(rank - before)};
}

Valuation TwoUnitCurve(const ItemSpace& space, int one, int two) {
  return Valuation(space, {{space.Units(1), Rat(one)},
                           {space.Units(2), Rat(two)}});
}

void CheckIndex(long long index, long long size, const std::string& name) {
  if (index < 0 || index >= size) {
    throw DomainError("instance " + std::to_string(index) +
                      " outside family " + name + " of size " +
                      std::to_string(size));
  }
}

}  // namespace

std::string ExecModeName(ExecMode mode) {
  switch (mode) {
    case ExecMode::kSerial:
      return "serial";
    case ExecMode::kParallel:
      return "parallel";
  }
  throw ContractError("unknown execution mode");
}

ExecMode ExecModeFromString(std::string_view text) {
  if (text == "serial") return ExecMode::kSerial;
  if (text == "parallel") return ExecMode::kParallel;
  throw ParseError("unknown execution mode \"" + std::string(text) +
                   "\", expected serial or parallel");
}

Golden2x2Family::Golden2x2Family(int k) : k_(k) {
  if (k < 0) throw DomainError("bid grid maximum must be nonnegative");
  offsets_.assign(static_cast<std::size_t>(k) + 2, 0);
  for (int b1 = 0; b1 <= k_; ++b1) {
    // b1+1 one-unit bids for bidder 0 times every weaker monotone curve.
    offsets_[b1 + 1] = offsets_[b1] + (b1 + 1) * TrianglePairs(b1);
  }
}

std::string Golden2x2Family::name() const {
  return "golden2x2-k" + std::to_string(k_);
}

long long Golden2x2Family::size() const { return offsets_.back(); }

Market Golden2x2Family::Instance(long long index) const {
  CheckIndex(index, size(), name());
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const int b1 = static_cast<int>(it - offsets_.begin()) - 1;
  const long long local = index - offsets_[b1];
  const long long pairs = TrianglePairs(b1);
  const int a1 = static_cast<int>(local / pairs);
  const auto [b2, a2] = UnrankTriangle(local % pairs);
  const ItemSpace space = ItemSpace::MultiUnit(2);
  return Market(space, {TwoUnitCurve(space, a1, b1), TwoUnitCurve(space, a2, b2)},
                0);
}

Rand2x2Family::Rand2x2Family(int k) : k_(k) {
  if (k < 0) throw DomainError("bid grid maximum must be nonnegative");
  offsets_.assign(static_cast<std::size_t>(k) + 2, 0);
  for (int b1 = 0; b1 <= k_; ++b1) {
    // Strictly weaker curves only: b2 ranges over [0, b1).
    const long long weaker = b1 == 0 ? 0 : TrianglePairs(b1 - 1);
    offsets_[b1 + 1] = offsets_[b1] + (b1 + 1) * weaker;
  }
}

std::string Rand2x2Family::name() const {
  return "rand2x2-k" + std::to_string(k_);
}

long long Rand2x2Family::size() const { return offsets_.back(); }

Market Rand2x2Family::Instance(long long index) const {
  CheckIndex(index, size(), name());
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const int b1 = static_cast<int>(it - offsets_.begin()) - 1;
  const long long local = index - offsets_[b1];
  const long long pairs = TrianglePairs(b1 - 1);
  const int a1 = static_cast<int>(local / pairs);
  const auto [b2, a2] = UnrankTriangle(local % pairs);
  const ItemSpace space = ItemSpace::MultiUnit(2);
  return Market(space,
                {TwoUnitCurve(space, a1, b1), TwoUnitCurve(space, a2, b2)});
}

StrongestFamily::StrongestFamily(int bidders, int k) : n_(bidders), k_(k) {
  if (bidders < 1 || bidders > 64) {
    throw DomainError("bidder count must be in 1..64");
  }
  if (k < 0) throw DomainError("bid grid maximum must be nonnegative");
  const int top = k_ + n_;
  binomial_.assign(top + 1, std::vector<long long>(top + 1, 0));
  for (int a = 0; a <= top; ++a) {
    binomial_[a][0] = 1;
    for (int b = 1; b <= a; ++b) {
      binomial_[a][b] = binomial_[a - 1][b - 1] +
                        (b <= a - 1 ? binomial_[a - 1][b] : 0);
    }
  }
  per_curve_ = binomial_[k_ + n_][n_];
  long long total = 1;
  for (int i = 0; i < n_; ++i) {
    if (total > LLONG_MAX / per_curve_) {
      throw CapacityError("family " + name() + " has too many instances to index");
    }
    total *= per_curve_;
  }
}

std::string StrongestFamily::name() const {
  return "strongest-n" + std::to_string(n_) + "-k" + std::to_string(k_);
}

long long StrongestFamily::size() const {
  long long total = 1;
  for (int i = 0; i < n_; ++i) total *= per_curve_;
  return total;
}

// Lexicographic unranking of the nondecreasing curves (c_1 <= ... <= c_m)
// over {0..k}: fix each position to the smallest value whose completion
// count still exceeds the remaining rank.
std::vector<int> StrongestFamily::CurveFromRank(long long rank) const {
  const int m = n_;
  std::vector<int> curve(m);
  int floor = 0;
  for (int pos = 0; pos < m; ++pos) {
    const int rest = m - pos - 1;
    for (int v = floor; v <= k_; ++v) {
      const long long completions = binomial_[(k_ - v) + rest][rest];
      if (rank < completions) {
        curve[pos] = v;
        floor = v;
        break;
      }
      rank -= completions;
    }
  }
  return curve;
}

Market StrongestFamily::Instance(long long index) const {
  CheckIndex(index, size(), name());
  std::vector<long long> ranks(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    ranks[i] = index % per_curve_;
    index /= per_curve_;
  }
  const ItemSpace space = ItemSpace::MultiUnit(n_);
  std::vector<Valuation> vals;
  vals.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    const std::vector<int> curve = CurveFromRank(ranks[i]);
    std::vector<Atom> atoms;
    atoms.reserve(n_);
    for (int s = 1; s <= n_; ++s) {
      atoms.push_back({space.Units(s), Rat(curve[s - 1])});
    }
    vals.emplace_back(space, std::move(atoms));
  }
  return Market(space, std::move(vals));
}

SweepResult WorstCaseSweep(MechanismId id, const InstanceFamily& family,
                           const Rat& epsilon, ExecMode mode,
                           const SweepRowSink& sink) {
  const long long count = family.size();
  if (count == 0) {
    throw ContractError("instance family " + family.name() + " is empty");
  }
  auto score = [&](long long index) {
    RandomTape tape(0);
    const Market market = family.Instance(index);
    return MechanismRatio(id, market, tape, epsilon);
  };

  Rat best_ratio;
  long long best_index = -1;
  auto consider = [&](const Rat& ratio, long long index) {
    if (best_index < 0 || ratio < best_ratio ||
        (ratio == best_ratio && index < best_index)) {
      best_ratio = ratio;
      best_index = index;
    }
  };

  if (mode == ExecMode::kSerial) {
    for (long long i = 0; i < count; ++i) {
      const Rat ratio = score(i);
      if (sink) sink(i, ratio);
      consider(ratio, i);
    }
  } else {
    const long long chunks = (count + kChunk - 1) / kChunk;
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
#pragma omp parallel
    {
      Rat local_ratio;
      long long local_index = -1;
      std::vector<std::pair<long long, Rat>> rows;
#pragma omp for schedule(dynamic) ordered
      for (long long c = 0; c < chunks; ++c) {
        rows.clear();
        if (!failed.load(std::memory_order_relaxed)) {
          try {
            const long long lo = c * kChunk;
            const long long hi = std::min(count, lo + kChunk);
            for (long long i = lo; i < hi; ++i) {
              const Rat ratio = score(i);
              if (sink) rows.emplace_back(i, ratio);
              if (local_index < 0 || ratio < local_ratio ||
                  (ratio == local_ratio && i < local_index)) {
                local_ratio = ratio;
                local_index = i;
              }
            }
          } catch (...) {
#pragma omp critical(valuebid_sweep_failure)
            {
              if (!failure) failure = std::current_exception();
            }
            failed.store(true, std::memory_order_relaxed);
            rows.clear();
          }
        }
        if (sink) {
          // The ordered region serializes chunk emission by chunk index,
          // so rows reach the sink in the same order as the serial path.
#pragma omp ordered
          {
            for (const auto& [i, ratio] : rows) sink(i, ratio);
          }
        }
      }
#pragma omp critical(valuebid_sweep_reduce)
      {
        if (local_index >= 0) consider(local_ratio, local_index);
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return SweepResult{best_ratio, best_index, count, family.Instance(best_index)};
}

}  // namespace valuebid
