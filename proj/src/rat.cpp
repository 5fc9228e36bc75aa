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

#include "valuebid/rat.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "valuebid/errors.hpp"

namespace valuebid {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat::Rat(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::FromDecimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view whole = s;
  std::string_view frac;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    whole = s.substr(0, dot);
    frac = s.substr(dot + 1);
  }
  if (whole.empty() && frac.empty()) {
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  }
  if ((!whole.empty() && !AllDigits(whole)) ||
      (!frac.empty() && !AllDigits(frac))) {
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  }
  mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  mpz_class den(1);
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  Rat r;
  r.q_ = mpq_class(negative ? -num : num, den);
  r.q_.canonicalize();
  return r;
}

Rat Rat::FromString(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rat num = FromDecimal(text.substr(0, slash));
    Rat den = FromDecimal(text.substr(slash + 1));
    if (den.IsZero()) {
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return num / den;
  }
  return FromDecimal(text);
}

Rat Rat::operator-() const {
  Rat r;
  r.q_ = -q_;
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  q_ += o.q_;
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  q_ -= o.q_;
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  q_ *= o.q_;
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.IsZero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rat::ToString() const {
  std::ostringstream os;
  os << q_;
  return os.str();
}

std::string Rat::ToDecimalString(int digits) const {
  mpz_class scale(1);
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round(|n|*scale / d) with ties away from zero, using integers only.
  mpz_class num = abs(q_.get_num()) * scale;
  const mpz_class& den = q_.get_den();
  mpz_class quot = (2 * num + den) / (2 * den);
  mpz_class whole = quot / scale;
  std::string out;
  if (Sign() < 0 && quot != 0) out += '-';
  out += whole.get_str();
  if (digits > 0) {
    std::string frac = mpz_class(quot % scale).get_str();
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    out += '.';
    out += frac;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.q_; }

}  // namespace valuebid
