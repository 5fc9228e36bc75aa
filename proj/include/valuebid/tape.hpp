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

#ifndef VALUEBID_TAPE_HPP_
#define VALUEBID_TAPE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "valuebid/rat.hpp"

namespace valuebid {

// Phase-I role of a bidder in the reserve-price framework.
enum class PartitionLabel { kGrand, kFixed, kStat };

std::string ToString(PartitionLabel label);
PartitionLabel PartitionLabelFromString(std::string_view text);

// Deterministic source of randomness for the mechanisms. Identical seeds
// give identical draw sequences; the tape is copyable so a run can be
// replayed. Optional explicit partition labels override the Phase-I coin
// flips of the framework mechanism.
class RandomTape {
 public:
  explicit RandomTape(std::uint64_t seed) : seed_(seed), gen_(seed) {}
  RandomTape(std::uint64_t seed, std::vector<PartitionLabel> labels)
      : seed_(seed), gen_(seed), labels_(std::move(labels)) {}

  // Next uniform dyadic rational in [0,1) with 53 random bits, exact.
  Rat Draw();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }
  const std::optional<std::vector<PartitionLabel>>& labels() const {
    return labels_;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  std::uint64_t draws_ = 0;
  std::optional<std::vector<PartitionLabel>> labels_;
};

}  // namespace valuebid

#endif  // VALUEBID_TAPE_HPP_
