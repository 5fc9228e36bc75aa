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

#ifndef VALUEBID_MARKET_HPP_
#define VALUEBID_MARKET_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valuebid/rat.hpp"

namespace valuebid {

enum class ItemKind { kMultiUnit, kHeterogeneous };

class ItemSpace;

// A set of goods within one item space. For a multi-unit space the payload
// is a unit count; for a heterogeneous space it is a bitmask over the item
// indices. Bundles are created through ItemSpace so they are always within
// range.
class Bundle {
 public:
  ItemKind kind() const { return kind_; }
  std::uint64_t raw() const { return raw_; }
  bool IsEmpty() const { return raw_ == 0; }

  // Unit count, or number of distinct items.
  int Count() const;

  // Set containment (multi-unit: count comparison).
  bool Contains(const Bundle& other) const;

  // Total order used by every deterministic tie-break: unit count for
  // multi-unit spaces, bitmask value for heterogeneous ones.
  friend bool operator<(const Bundle& a, const Bundle& b) {
    return a.raw_ < b.raw_;
  }
  friend bool operator==(const Bundle& a, const Bundle& b) {
    return a.kind_ == b.kind_ && a.raw_ == b.raw_;
  }
  friend bool operator!=(const Bundle& a, const Bundle& b) { return !(a == b); }

 private:
  friend class ItemSpace;
  Bundle(ItemKind kind, std::uint64_t raw) : kind_(kind), raw_(raw) {}

  ItemKind kind_;
  std::uint64_t raw_;
};

// Either m identical units of one good or an ordered set of m distinct,
// uniquely named items.
class ItemSpace {
 public:
  static ItemSpace MultiUnit(int units);
  static ItemSpace Heterogeneous(std::vector<std::string> names);

  ItemKind kind() const { return kind_; }
  bool IsMultiUnit() const { return kind_ == ItemKind::kMultiUnit; }
  int size() const { return size_; }  // m
  const std::vector<std::string>& names() const { return names_; }

  Bundle Empty() const { return Bundle(kind_, 0); }
  Bundle Grand() const;

  // Multi-unit bundle of `count` units; throws DomainError out of range.
  Bundle Units(int count) const;
  // Heterogeneous bundle from an item-index bitmask.
  Bundle Subset(std::uint64_t mask) const;
  // Heterogeneous bundle from item names.
  Bundle Items(const std::vector<std::string>& items) const;

  bool Holds(const Bundle& b) const;
  std::string Describe(const Bundle& b) const;

  friend bool operator==(const ItemSpace& a, const ItemSpace& b) {
    return a.kind_ == b.kind_ && a.size_ == b.size_ && a.names_ == b.names_;
  }

 private:
  ItemSpace(ItemKind kind, int size, std::vector<std::string> names)
      : kind_(kind), size_(size), names_(std::move(names)) {}

  ItemKind kind_;
  int size_;
  std::vector<std::string> names_;  // empty for multi-unit
};

struct Atom {
  Bundle bundle;
  Rat value;
};

// An XOR valuation: a finite list of (bundle, value) atoms, closed under
// free disposal. The value of any bundle S is the best single atom
// contained in S, so v is monotone and v(empty) = 0. An optional budget
// cap trims every atom at construction; the cap is never modelled
// separately afterwards.
class Valuation {
 public:
  Valuation(const ItemSpace& space, std::vector<Atom> atoms,
            std::optional<Rat> budget = std::nullopt);

  // Value query under free-disposal closure. Throws DomainError if the
  // bundle is outside this valuation's item space.
  Rat Value(const Bundle& s) const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<Rat>& budget() const { return budget_; }
  ItemKind kind() const { return kind_; }
  int space_size() const { return space_size_; }

 private:
  ItemKind kind_;
  int space_size_;
  std::vector<Atom> atoms_;  // values already budget-trimmed
  std::optional<Rat> budget_;
};

// items + an ordered list of bidder valuations. `psb` optionally names the
// bidder publicly known to be weakly strongest on the grand bundle; the
// claim is checked here, so a constructed Market with psb set always
// satisfies it.
class Market {
 public:
  Market(ItemSpace items, std::vector<Valuation> valuations,
         std::optional<int> psb = std::nullopt);

  const ItemSpace& items() const { return items_; }
  int bidders() const { return static_cast<int>(valuations_.size()); }
  const Valuation& valuation(int i) const;
  const std::vector<Valuation>& valuations() const { return valuations_; }
  std::optional<int> psb() const { return psb_; }

  Rat GrandValue(int i) const { return valuation(i).Value(items_.Grand()); }

  // Copy with bidder i's valuation replaced (used for misreports);
  // revalidates the psb designation against the new profile.
  Market WithValuation(int i, Valuation v) const;

 private:
  ItemSpace items_;
  std::vector<Valuation> valuations_;
  std::optional<int> psb_;
};

// A feasible assignment of disjoint bundles to bidders. Construction
// rejects overlapping bundles (multi-unit: total units above m).
class Allocation {
 public:
  Allocation(const ItemSpace& space, std::vector<Bundle> bundles);

  const std::vector<Bundle>& bundles() const { return bundles_; }
  const Bundle& operator[](int i) const { return bundles_[i]; }
  int size() const { return static_cast<int>(bundles_.size()); }

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.bundles_ == b.bundles_;
  }

 private:
  std::vector<Bundle> bundles_;
};

// Allocation plus per-bidder payments. Payments are nonnegative and a
// bidder with an empty bundle pays nothing.
class Outcome {
 public:
  Outcome(Allocation allocation, std::vector<Rat> payments);

  const Allocation& allocation() const { return allocation_; }
  const std::vector<Rat>& payments() const { return payments_; }

 private:
  Allocation allocation_;
  std::vector<Rat> payments_;
};

// Value-bidder utility: the bundle's true value when the payment is
// covered, and minus infinity otherwise.
class Utility {
 public:
  static Utility NegInf() { return Utility(); }
  explicit Utility(Rat value) : finite_(true), value_(std::move(value)) {}

  bool IsNegInf() const { return !finite_; }
  const Rat& value() const;  // requires !IsNegInf()

  friend bool operator==(const Utility& a, const Utility& b);
  friend bool operator<(const Utility& a, const Utility& b);
  friend bool operator>(const Utility& a, const Utility& b) { return b < a; }
  friend bool operator<=(const Utility& a, const Utility& b) { return !(b < a); }
  friend bool operator>=(const Utility& a, const Utility& b) { return !(a < b); }

  std::string ToString() const;

 private:
  Utility() : finite_(false) {}

  bool finite_;
  Rat value_;
};

Utility UtilityOf(const Outcome& outcome, const Valuation& truth, int bidder);

// Seller revenue: the payment total.
Rat Revenue(const Outcome& outcome);

}  // namespace valuebid

#endif  // VALUEBID_MARKET_HPP_
