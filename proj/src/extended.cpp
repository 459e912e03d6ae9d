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

#include "mpg/extended.hpp"

#include <sstream>
#include <stdexcept>

namespace mpg {

ExtendedScalar ExtendedScalar::parse(const std::string& text) {
  if (text == "-inf" || text == "-Infinity" || text == "NEG_INF") return neg_inf();
  return ExtendedScalar(Rational::parse(text));
}

const Rational& ExtendedScalar::value() const {
  if (neg_inf_) throw std::domain_error("value() of -inf");
  return value_;
}

std::string ExtendedScalar::str() const { return neg_inf_ ? "-inf" : value_.str(); }

ExtendedScalar operator+(const ExtendedScalar& a, const ExtendedScalar& b) {
  if (a.neg_inf_ || b.neg_inf_) return ExtendedScalar::neg_inf();
  return ExtendedScalar(a.value_ + b.value_);
}

ExtendedScalar operator-(const ExtendedScalar& a, const Rational& b) {
  if (a.neg_inf_) return a;
  return ExtendedScalar(a.value_ - b);
}

ExtendedScalar scale(const Rational& c, const ExtendedScalar& a) {
  if (c.sign() < 0) throw std::domain_error("negative scaling of an extended scalar");
  if (c.is_zero()) return ExtendedScalar(0);
  if (a.neg_inf_) return a;
  return ExtendedScalar(c * a.value_);
}

bool operator==(const ExtendedScalar& a, const ExtendedScalar& b) {
  if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedScalar& a, const ExtendedScalar& b) {
  if (a.neg_inf_ || b.neg_inf_) {
    return static_cast<int>(b.neg_inf_) <=> static_cast<int>(a.neg_inf_);
  }
  return a.value_ <=> b.value_;
}

ExtendedScalar max(const ExtendedScalar& a, const ExtendedScalar& b) { return a < b ? b : a; }
ExtendedScalar min(const ExtendedScalar& a, const ExtendedScalar& b) { return b < a ? b : a; }

bool ExtendedVec::all_finite() const {
  for (const auto& e : data_) {
    if (e.is_neg_inf()) return false;
  }
  return true;
}

std::string ExtendedVec::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (i) os << ", ";
    os << data_[i].str();
  }
  os << ')';
  return os.str();
}

ExtendedScalar top(const ExtendedVec& x) {
  if (x.empty()) throw std::invalid_argument("top of an empty vector");
  ExtendedScalar r = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (r < x[i]) r = x[i];
  }
  return r;
}

ExtendedScalar bottom(const ExtendedVec& x) {
  if (x.empty()) throw std::invalid_argument("bottom of an empty vector");
  ExtendedScalar r = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < r) r = x[i];
  }
  return r;
}

Rational hilbert_seminorm(const ExtendedVec& x) {
  if (!x.all_finite()) throw std::domain_error("Hilbert seminorm of a vector with -inf");
  return top(x).value() - bottom(x).value();
}

ExtendedVec shift(const Rational& c, const ExtendedVec& x) {
  ExtendedVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + ExtendedScalar(c);
  return r;
}

namespace {
void check_sizes(const ExtendedVec& a, const ExtendedVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector index sets differ");
}
}  // namespace

ExtendedVec join(const ExtendedVec& a, const ExtendedVec& b) {
  check_sizes(a, b);
  ExtendedVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = max(a[i], b[i]);
  return r;
}

ExtendedVec meet(const ExtendedVec& a, const ExtendedVec& b) {
  check_sizes(a, b);
  ExtendedVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = min(a[i], b[i]);
  return r;
}

bool leq(const ExtendedVec& x, const ExtendedVec& y) {
  check_sizes(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] < x[i]) return false;
  }
  return true;
}

Rational sup_distance(const ExtendedVec& x, const ExtendedVec& y) {
  check_sizes(x, y);
  Rational d(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_neg_inf() != y[i].is_neg_inf()) {
      throw std::domain_error("sup distance between different -inf patterns");
    }
    if (x[i].is_finite()) d = max(d, (x[i].value() - y[i].value()).abs());
  }
  return d;
}

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw std::invalid_argument("interval with lo > hi");
}

std::string RationalInterval::str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("empty interval");
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_in_interval(-hi, -lo);
  const mpz_class fl = lo.floor();
  const Rational fl_q(fl);
  if (fl_q == lo) return lo;
  if (Rational(mpz_class(fl + 1)) <= hi) return Rational(mpz_class(fl + 1));
  // lo, hi lie strictly inside (fl, fl + 1).
  return fl_q + simplest_in_interval((hi - fl_q).inverse(), (lo - fl_q).inverse()).inverse();
}

namespace {

// Inverse of a modulo m (m >= 2, gcd = 1), in [0, m).
mpz_class mod_inverse(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::logic_error("no modular inverse");
  }
  return r;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Farey neighbours of a/b in F_N.
Rational farey_successor(const mpz_class& a, const mpz_class& b, const mpz_class& n) {
  if (b == 1) return Rational(mpz_class(a * n + 1), n);
  mpz_class d0 = mod(mpz_class(-mod_inverse(mod(a, b), b)), b);
  mpz_class d = d0 + b * ((n - d0) / b);
  mpz_class c = (1 + a * d) / b;
  return Rational(c, d);
}

Rational farey_predecessor(const mpz_class& a, const mpz_class& b, const mpz_class& n) {
  if (b == 1) return Rational(mpz_class(a * n - 1), n);
  mpz_class d0 = mod_inverse(mod(a, b), b);
  mpz_class d = d0 + b * ((n - d0) / b);
  mpz_class c = (a * d - 1) / b;
  return Rational(c, d);
}

}  // namespace

RationalSearchResult rational_in_interval(const RationalInterval& iv, const mpz_class& qmax) {
  if (qmax < 1) throw std::invalid_argument("qmax must be >= 1");
  RationalSearchResult res;
  Rational s = simplest_in_interval(iv.lo, iv.hi);
  mpz_class a = s.numerator(), b = s.denominator();
  if (b > qmax) {
    res.status = SearchStatus::NotFound;
    return res;
  }
  if (farey_successor(a, b, qmax) <= iv.hi || farey_predecessor(a, b, qmax) >= iv.lo) {
    res.status = SearchStatus::NotUnique;
    return res;
  }
  res.status = SearchStatus::Found;
  res.value = s;
  return res;
}

}  // namespace mpg
