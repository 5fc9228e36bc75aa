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

#include "valuebid/market.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "valuebid/errors.hpp"

namespace valuebid {
namespace {

constexpr int kMaxMultiUnits = 64;
constexpr int kMaxHeterogeneousItems = 63;

}  // namespace

int Bundle::Count() const {
  if (kind_ == ItemKind::kMultiUnit) return static_cast<int>(raw_);
  return std::popcount(raw_);
}

bool Bundle::Contains(const Bundle& other) const {
  if (kind_ != other.kind_) {
    throw DomainError("bundle containment across item kinds");
  }
  if (kind_ == ItemKind::kMultiUnit) return raw_ >= other.raw_;
  return (other.raw_ & ~raw_) == 0;
}

ItemSpace ItemSpace::MultiUnit(int units) {
  if (units < 1 || units > kMaxMultiUnits) {
    throw CapacityError("multi-unit supply must be between 1 and " +
                        std::to_string(kMaxMultiUnits) + ", got " +
                        std::to_string(units));
  }
  return ItemSpace(ItemKind::kMultiUnit, units, {});
}

ItemSpace ItemSpace::Heterogeneous(std::vector<std::string> names) {
  if (names.empty() || names.size() > kMaxHeterogeneousItems) {
    throw CapacityError("heterogeneous item count must be between 1 and " +
                        std::to_string(kMaxHeterogeneousItems) + ", got " +
                        std::to_string(names.size()));
  }
  std::unordered_set<std::string> seen;
  for (const std::string& name : names) {
    if (name.empty()) throw DomainError("item names must be nonempty");
    if (!seen.insert(name).second) {
      throw DomainError("duplicate item name: " + name);
    }
  }
  const int count = static_cast<int>(names.size());
  return ItemSpace(ItemKind::kHeterogeneous, count, std::move(names));
}

Bundle ItemSpace::Grand() const {
  if (kind_ == ItemKind::kMultiUnit) {
    return Bundle(kind_, static_cast<std::uint64_t>(size_));
  }
  return Bundle(kind_, (std::uint64_t{1} << size_) - 1);
}

Bundle ItemSpace::Units(int count) const {
  if (kind_ != ItemKind::kMultiUnit) {
    throw DomainError("Units() on a heterogeneous item space");
  }
  if (count < 0 || count > size_) {
    throw DomainError("unit count " + std::to_string(count) +
                      " outside [0, " + std::to_string(size_) + "]");
  }
  return Bundle(kind_, static_cast<std::uint64_t>(count));
}

Bundle ItemSpace::Subset(std::uint64_t mask) const {
  if (kind_ != ItemKind::kHeterogeneous) {
    throw DomainError("Subset() on a multi-unit item space");
  }
  if (mask >> size_) {
    throw DomainError("item mask uses indices beyond the item count");
  }
  return Bundle(kind_, mask);
}

Bundle ItemSpace::Items(const std::vector<std::string>& items) const {
  std::uint64_t mask = 0;
  for (const std::string& item : items) {
    auto it = std::find(names_.begin(), names_.end(), item);
    if (it == names_.end()) throw DomainError("unknown item name: " + item);
    mask |= std::uint64_t{1} << (it - names_.begin());
  }
  return Subset(mask);
}

bool ItemSpace::Holds(const Bundle& b) const {
  if (b.kind() != kind_) return false;
  if (kind_ == ItemKind::kMultiUnit) {
    return b.raw() <= static_cast<std::uint64_t>(size_);
  }
  return (b.raw() >> size_) == 0;
}

std::string ItemSpace::Describe(const Bundle& b) const {
  if (!Holds(b)) throw DomainError("bundle outside this item space");
  if (kind_ == ItemKind::kMultiUnit) {
    return std::to_string(b.Count()) + (b.Count() == 1 ? " unit" : " units");
  }
  if (b.IsEmpty()) return "{}";
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int j = 0; j < size_; ++j) {
    if (!(b.raw() >> j & 1)) continue;
    if (!first) out << ',';
    out << names_[j];
    first = false;
  }
  out << '}';
  return out.str();
}

Valuation::Valuation(const ItemSpace& space, std::vector<Atom> atoms,
                     std::optional<Rat> budget)
    : kind_(space.kind()),
      space_size_(space.size()),
      atoms_(std::move(atoms)),
      budget_(std::move(budget)) {
  if (budget_ && budget_->Sign() < 0) {
    throw DomainError("budget must be nonnegative");
  }
  for (Atom& atom : atoms_) {
    if (!space.Holds(atom.bundle)) {
      throw DomainError("atom bundle outside the item space");
    }
    if (atom.value.Sign() < 0) {
      throw DomainError("atom values must be nonnegative");
    }
    if (atom.bundle.IsEmpty() && atom.value.Sign() > 0) {
      throw DomainError("the empty bundle cannot carry positive value");
    }
    if (budget_ && atom.value > *budget_) atom.value = *budget_;
  }
}

Rat Valuation::Value(const Bundle& s) const {
  if (s.kind() != kind_ ||
      (kind_ == ItemKind::kMultiUnit
           ? s.raw() > static_cast<std::uint64_t>(space_size_)
           : (s.raw() >> space_size_) != 0)) {
    throw DomainError("value query outside the valuation's item space");
  }
  Rat best;
  for (const Atom& atom : atoms_) {
    if (s.Contains(atom.bundle) && atom.value > best) best = atom.value;
  }
  return best;
}

Market::Market(ItemSpace items, std::vector<Valuation> valuations,
               std::optional<int> psb)
    : items_(std::move(items)), valuations_(std::move(valuations)), psb_(psb) {
  if (valuations_.empty()) throw DomainError("a market needs bidders");
  for (const Valuation& v : valuations_) {
    if (v.kind() != items_.kind() || v.space_size() != items_.size()) {
      throw DomainError("valuation built for a different item space");
    }
  }
  if (psb_) {
    if (*psb_ < 0 || *psb_ >= bidders()) {
      throw DomainError("psb index out of range");
    }
    const Rat top = GrandValue(*psb_);
    for (int i = 0; i < bidders(); ++i) {
      if (GrandValue(i) > top) {
        throw PreconditionError(
            "designated strongest bidder " + std::to_string(*psb_) +
            " is beaten on the grand bundle by bidder " + std::to_string(i));
      }
    }
  }
}

const Valuation& Market::valuation(int i) const {
  if (i < 0 || i >= bidders()) throw DomainError("bidder index out of range");
  return valuations_[i];
}

Market Market::WithValuation(int i, Valuation v) const {
  if (i < 0 || i >= bidders()) throw DomainError("bidder index out of range");
  std::vector<Valuation> next = valuations_;
  next[i] = std::move(v);
  return Market(items_, std::move(next), psb_);
}

Allocation::Allocation(const ItemSpace& space, std::vector<Bundle> bundles)
    : bundles_(std::move(bundles)) {
  std::uint64_t used = 0;
  for (const Bundle& b : bundles_) {
    if (!space.Holds(b)) throw DomainError("allocated bundle outside space");
    if (space.IsMultiUnit()) {
      used += b.raw();
    } else {
      if (used & b.raw()) throw DomainError("allocation assigns an item twice");
      used |= b.raw();
    }
  }
  if (space.IsMultiUnit() && used > static_cast<std::uint64_t>(space.size())) {
    throw DomainError("allocation exceeds the unit supply");
  }
}

Outcome::Outcome(Allocation allocation, std::vector<Rat> payments)
    : allocation_(std::move(allocation)), payments_(std::move(payments)) {
  if (payments_.size() != static_cast<std::size_t>(allocation_.size())) {
    throw DomainError("one payment per bidder required");
  }
  for (int i = 0; i < allocation_.size(); ++i) {
    if (payments_[i].Sign() < 0) {
      throw DomainError("payments must be nonnegative");
    }
    if (allocation_[i].IsEmpty() && payments_[i].Sign() != 0) {
      throw DomainError("losing bidders pay nothing");
    }
  }
}

const Rat& Utility::value() const {
  if (!finite_) throw DomainError("no finite value in a -inf utility");
  return value_;
}

bool operator==(const Utility& a, const Utility& b) {
  if (a.finite_ != b.finite_) return false;
  return !a.finite_ || a.value_ == b.value_;
}

bool operator<(const Utility& a, const Utility& b) {
  if (!a.finite_) return b.finite_;
  if (!b.finite_) return false;
  return a.value_ < b.value_;
}

std::string Utility::ToString() const {
  return finite_ ? value_.ToString() : std::string("-inf");
}

Utility UtilityOf(const Outcome& outcome, const Valuation& truth, int bidder) {
  if (bidder < 0 || bidder >= outcome.allocation().size()) {
    throw DomainError("bidder index out of range");
  }
  const Bundle& got = outcome.allocation()[bidder];
  const Rat& paid = outcome.payments()[bidder];
  const Rat worth = truth.Value(got);
  if (paid > worth) return Utility::NegInf();
  return Utility(worth);
}

Rat Revenue(const Outcome& outcome) {
  Rat total;
  for (const Rat& p : outcome.payments()) total += p;
  return total;
}

}  // namespace valuebid
