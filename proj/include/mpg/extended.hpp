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

#ifndef MPG_EXTENDED_HPP_
#define MPG_EXTENDED_HPP_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mpg/rational.hpp"

namespace mpg {

// An element of Q u {-inf}.
class ExtendedScalar {
 public:
  ExtendedScalar() = default;
  ExtendedScalar(Rational v) : value_(std::move(v)) {}  // NOLINT
  ExtendedScalar(int v) : value_(v) {}                  // NOLINT

  static ExtendedScalar neg_inf() {
    ExtendedScalar s;
    s.neg_inf_ = true;
    return s;
  }
  // Accepts "-inf" in addition to the Rational::parse forms.
  static ExtendedScalar parse(const std::string& text);

  bool is_finite() const { return !neg_inf_; }
  bool is_neg_inf() const { return neg_inf_; }
  // Throws std::domain_error on -inf.
  const Rational& value() const;
  std::string str() const;

  // -inf absorbs addition of finite or -inf terms.
  friend ExtendedScalar operator+(const ExtendedScalar& a, const ExtendedScalar& b);
  // a - b requires b finite.
  friend ExtendedScalar operator-(const ExtendedScalar& a, const Rational& b);
  // Scaling by c >= 0 with 0 * (-inf) = 0; negative c is a contract violation.
  friend ExtendedScalar scale(const Rational& c, const ExtendedScalar& a);

  friend bool operator==(const ExtendedScalar& a, const ExtendedScalar& b);
  friend std::strong_ordering operator<=>(const ExtendedScalar& a,
                                          const ExtendedScalar& b);

 private:
  bool neg_inf_ = false;
  Rational value_;
};

ExtendedScalar max(const ExtendedScalar& a, const ExtendedScalar& b);
ExtendedScalar min(const ExtendedScalar& a, const ExtendedScalar& b);

// State-indexed vector over Q u {-inf}. Index sets are positional; callers
// keep identifier maps on the game side.
class ExtendedVec {
 public:
  ExtendedVec() = default;
  explicit ExtendedVec(std::size_t n) : data_(n) {}
  ExtendedVec(std::size_t n, const ExtendedScalar& fill) : data_(n, fill) {}
  ExtendedVec(std::initializer_list<ExtendedScalar> init) : data_(init) {}
  explicit ExtendedVec(std::vector<ExtendedScalar> v) : data_(std::move(v)) {}

  static ExtendedVec zeros(std::size_t n) { return ExtendedVec(n); }
  static ExtendedVec constant(std::size_t n, const Rational& c) {
    return ExtendedVec(n, ExtendedScalar(c));
  }

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  ExtendedScalar& operator[](std::size_t i) { return data_[i]; }
  const ExtendedScalar& operator[](std::size_t i) const { return data_[i]; }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  const std::vector<ExtendedScalar>& entries() const { return data_; }

  bool all_finite() const;
  bool any_neg_inf() const { return !all_finite(); }
  std::string str() const;

  friend bool operator==(const ExtendedVec& a, const ExtendedVec& b) {
    return a.data_ == b.data_;
  }

 private:
  std::vector<ExtendedScalar> data_;
};

ExtendedScalar top(const ExtendedVec& x);
ExtendedScalar bottom(const ExtendedVec& x);
Rational hilbert_seminorm(const ExtendedVec& x);

// c + x entrywise.
ExtendedVec shift(const Rational& c, const ExtendedVec& x);
// Entrywise max / min; sizes must agree.
ExtendedVec join(const ExtendedVec& a, const ExtendedVec& b);
ExtendedVec meet(const ExtendedVec& a, const ExtendedVec& b);
// x <= y entrywise.
bool leq(const ExtendedVec& x, const ExtendedVec& y);
// Sup-norm distance between two vectors with identical -inf patterns.
Rational sup_distance(const ExtendedVec& x, const ExtendedVec& y);

struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h);
  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool overlaps(const RationalInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  std::string str() const;
  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

enum class SearchStatus { Found, NotFound, NotUnique };

struct RationalSearchResult {
  SearchStatus status = SearchStatus::NotFound;
  Rational value;  // valid when status == Found
};

// Unique rational with denominator <= qmax inside iv.
RationalSearchResult rational_in_interval(const RationalInterval& iv,
                                          const mpz_class& qmax);

// Simplest rational (least denominator, then least |numerator|) in [lo, hi].
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

}  // namespace mpg

#endif  // MPG_EXTENDED_HPP_
