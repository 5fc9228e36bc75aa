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

#ifndef VALUEBID_RAT_HPP_
#define VALUEBID_RAT_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace valuebid {

// Exact rational number. All money amounts, probabilities and ratios in
// this library are Rats, so every mechanism decision and every reported
// ratio is bit-stable. Backed by GMP so simplex pivots and long products
// never overflow.
//
// Construction from floating point is deliberately deleted: decimals
// enter the system only through FromDecimal, which parses them exactly.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long n) : q_(n) {}  // NOLINT(runtime/explicit): ints are exact
  Rat(int n) : q_(static_cast<long>(n)) {}  // NOLINT(runtime/explicit)
  Rat(long num, long den);
  Rat(double) = delete;

  // Parses a decimal literal ("12", "-0.25", "10.3") into the exact
  // rational it denotes. Throws ParseError on anything else.
  static Rat FromDecimal(std::string_view text);

  // Parses "n", "n.d" or "n/d".
  static Rat FromString(std::string_view text);

  int Sign() const { return sgn(q_); }
  bool IsZero() const { return Sign() == 0; }
  bool IsInteger() const { return q_.get_den() == 1; }

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);  // throws DomainError on /0

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  // "3", "-7/2".
  std::string ToString() const;
  // Fixed-point rendering with `digits` decimals, rounded half away from
  // zero: Rat(103,10).ToDecimalString(6) == "10.300000".
  std::string ToDecimalString(int digits = 6) const;
  // Approximate double value; for diagnostics only.
  double ToDouble() const { return q_.get_d(); }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class q_;
};

inline Rat Abs(const Rat& r) { return r.Sign() < 0 ? -r : r; }

}  // namespace valuebid

#endif  // VALUEBID_RAT_HPP_
