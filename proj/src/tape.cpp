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

#include "valuebid/tape.hpp"

#include "valuebid/errors.hpp"

namespace valuebid {

std::string ToString(PartitionLabel label) {
  switch (label) {
    case PartitionLabel::kGrand:
      return "GRAND";
    case PartitionLabel::kFixed:
      return "FIXED";
    case PartitionLabel::kStat:
      return "STAT";
  }
  throw DomainError("unknown partition label");
}

PartitionLabel PartitionLabelFromString(std::string_view text) {
  if (text == "GRAND") return PartitionLabel::kGrand;
  if (text == "FIXED") return PartitionLabel::kFixed;
  if (text == "STAT") return PartitionLabel::kStat;
  throw ParseError("unknown partition label '" + std::string(text) +
                   "', expected GRAND, FIXED or STAT");
}

Rat RandomTape::Draw() {
  ++draws_;
  // 53 random bits over 2^53, assembled without any floating-point step.
  const long bits = static_cast<long>(gen_() >> 11);
  return Rat(bits, long{1} << 53);
}

}  // namespace valuebid
