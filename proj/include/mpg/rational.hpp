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

#ifndef MPG_RATIONAL_HPP_
#define MPG_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mpg {

// Exact rational number. Values whose reduced numerator and denominator fit
// in int64 are kept inline; everything else lives in an mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}  // NOLINT(runtime/explicit)
  Rational(long v) : num_(v) { if (v == INT64_MIN) promote_min(); }  // NOLINT
  Rational(long long v) : num_(v) { if (v == INT64_MIN) promote_min(); }  // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpz_class& v);
  explicit Rational(const mpq_class& v);
  Rational(const mpz_class& num, const mpz_class& den);

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "p", "p/q", "-p/q" and plain decimals like "0.25" or "-1.5e-3".
  static Rational parse(std::string_view text);

  bool is_small() const { return !big_; }
  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;
  double to_double() const;
  std::string str() const;

  // Small-case accessors; only meaningful when is_small().
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  mpz_class floor() const;
  mpz_class ceil() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  void promote_min();
  void set_from_mpq(mpq_class&& q);
  static Rational from_i128(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// Integer power of a rational, exponent >= 0.
Rational pow(const Rational& base, unsigned exponent);

// Nearest integer to r, ties to the even integer.
mpz_class round_half_even(const Rational& r);

}  // namespace mpg

#endif  // MPG_RATIONAL_HPP_
