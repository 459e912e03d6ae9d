// Copyright 2026 The mpgsolve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpg/rational.hpp"

#include <cctype>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mpg {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = INT64_MAX;

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits(i128 v) { return v >= -kMax && v <= kMax; }

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class mpz_from_i64(std::int64_t v) {
  return mpz_class(static_cast<long>(v));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  *this = from_i128(num, den);
}

Rational::Rational(const mpz_class& v) { set_from_mpq(mpq_class(v)); }

Rational::Rational(const mpq_class& v) {
  mpq_class q(v);
  q.canonicalize();
  set_from_mpq(std::move(q));
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  set_from_mpq(std::move(q));
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
  return *this;
}

void Rational::promote_min() {
  big_ = std::make_unique<mpq_class>(mpz_from_i64(INT64_MIN));
  num_ = 0;
  den_ = 1;
}

void Rational::set_from_mpq(mpq_class&& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != INT64_MIN) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

Rational Rational::from_i128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const u128 an = uabs(num);
  const u128 ad = static_cast<u128>(den);
  u128 g = (an >> 64) == 0 && (ad >> 64) == 0
               ? gcd_u64(static_cast<std::uint64_t>(an), static_cast<std::uint64_t>(ad))
               : gcd_u128(an, ad);
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  Rational r;
  if (fits(num) && den <= kMax) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
  } else {
    r.big_ = std::make_unique<mpq_class>(to_mpz(num), to_mpz(den));
  }
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      mpz_class n(s.substr(0, slash), 10);
      mpz_class d(s.substr(slash + 1), 10);
      if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      return Rational(n, d);
    }
    if (s.find_first_of(".eE") == std::string::npos) {
      if (s[0] == '+') s = s.substr(1);
      return Rational(mpz_class(s, 10));
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  // Decimal with optional exponent, parsed exactly.
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw std::invalid_argument("malformed rational literal '" + s + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i]);
      any = true;
      if (seen_dot) ++frac;
    } else {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  }
  if (!any) throw std::invalid_argument("malformed rational literal '" + s + "'");
  long exp10 = 0;
  if (i < s.size()) {
    try {
      std::size_t used = 0;
      exp10 = std::stol(s.substr(i + 1), &used);
      if (used != s.size() - i - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  }
  mpz_class n(digits, 10);
  if (neg) n = -n;
  long shift = exp10 - frac;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(mpz_class(n * p)) : Rational(n, p);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  return big_ ? big_->get_den() == 1 : den_ == 1;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_from_i64(num_), mpz_from_i64(den_));
}

mpz_class Rational::numerator() const {
  return big_ ? big_->get_num() : mpz_from_i64(num_);
}

mpz_class Rational::denominator() const {
  return big_ ? big_->get_den() : mpz_from_i64(den_);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

mpz_class Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && num_ < 0) --q;
    return mpz_from_i64(q);
  }
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && num_ > 0) ++q;
    return mpz_from_i64(q);
  }
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  if (!big_) return from_i128(den_, num_);
  return Rational(mpq_class(1 / *big_));
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(mpq_class(-*big_));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) {
      return Rational::from_i128(static_cast<i128>(a.num_) + b.num_, a.den_);
    }
    std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(a.den_),
                              static_cast<std::uint64_t>(b.den_));
    i128 da = a.den_ / static_cast<std::int64_t>(g);
    i128 db = b.den_ / static_cast<std::int64_t>(g);
    i128 num = static_cast<i128>(a.num_) * db + static_cast<i128>(b.num_) * da;
    i128 den = da * b.den_;
    return Rational::from_i128(num, den);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    Rational nb;
    nb.num_ = -b.num_;
    nb.den_ = b.den_;
    return a + nb;
  }
  return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    std::int64_t g1 = static_cast<std::int64_t>(
        gcd_u64(static_cast<std::uint64_t>(a.num_ < 0 ? -a.num_ : a.num_),
                static_cast<std::uint64_t>(b.den_)));
    std::int64_t g2 = static_cast<std::int64_t>(
        gcd_u64(static_cast<std::uint64_t>(b.num_ < 0 ? -b.num_ : b.num_),
                static_cast<std::uint64_t>(a.den_)));
    i128 num = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
    i128 den = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
    if (fits(num) && den <= kMax) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(num);
      r.den_ = static_cast<std::int64_t>(den);
      return r;
    }
    Rational r;
    r.big_ = std::make_unique<mpq_class>(to_mpz(num), to_mpz(den));
    return r;
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  return a * b.inverse();
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical forms differ in representation class
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

mpz_class round_half_even(const Rational& r) {
  mpz_class f = r.floor();
  const Rational twice_frac = (r - Rational(f)) * Rational(2);
  if (twice_frac < Rational(1)) return f;
  if (twice_frac > Rational(1)) return f + 1;
  return (mpz_odd_p(f.get_mpz_t()) != 0) ? mpz_class(f + 1) : f;
}

}  // namespace mpg
