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

#include "doctest.h"
#include "mpg/extended.hpp"
#include "support.hpp"

using namespace mpg;
using mpg::test::q;
using mpg::test::vec;

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("3/6") == q(1, 2));
  CHECK(Rational::parse("-0.25") == q(-1, 4));
  CHECK(Rational::parse("1e-3") == q(1, 1000));
  CHECK(q(-6, 4).str() == "-3/2");
  CHECK(q(4, 2).str() == "2");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("rational arithmetic leaves the int64 fast path on overflow") {
  const Rational big(INT64_MAX);
  const Rational sum = big + big;
  CHECK_FALSE(sum.is_small());
  CHECK(sum - big == big);
  CHECK((sum / Rational(2)).is_small());
  CHECK(Rational(INT64_MIN) - Rational(1) < Rational(INT64_MIN));
  CHECK(pow(q(2, 3), 5) == q(32, 243));
  CHECK(round_half_even(q(5, 2)) == 2);
  CHECK(round_half_even(q(7, 2)) == 4);
  CHECK(round_half_even(q(-5, 2)) == -2);
}

TEST_CASE("extended scalars") {
  const auto ninf = ExtendedScalar::neg_inf();
  CHECK((ninf + ExtendedScalar(q(5))).is_neg_inf());
  CHECK(ninf < ExtendedScalar(q(-1000000)));
  CHECK(scale(q(0), ninf) == ExtendedScalar(0));
  CHECK(scale(q(2), ninf).is_neg_inf());
  CHECK(ExtendedScalar::parse("-inf").is_neg_inf());
  CHECK(ExtendedScalar::parse("-7/2") == ExtendedScalar(q(-7, 2)));
  CHECK_THROWS(ninf.value());
}

TEST_CASE("top and bottom") {
  CHECK(top(vec({1, -2, 3})) == ExtendedScalar(3));
  CHECK(top(vec({0, 0})) == ExtendedScalar(0));
  CHECK(top(vec({ExtendedScalar::neg_inf(), 5})) == ExtendedScalar(5));
  CHECK(bottom(vec({1, -2, 3})) == ExtendedScalar(-2));
  CHECK(bottom(vec({0, 0})) == ExtendedScalar(0));
  CHECK(bottom(vec({ExtendedScalar::neg_inf(), 5})).is_neg_inf());
}

TEST_CASE("hilbert seminorm") {
  CHECK(hilbert_seminorm(vec({5, 5, 5})) == q(0));
  CHECK(hilbert_seminorm(vec({2, 0})) == q(2));
  CHECK(hilbert_seminorm(vec({1, -2, 3})) == q(5));
  CHECK_THROWS(hilbert_seminorm(vec({ExtendedScalar::neg_inf(), 1})));
}

TEST_CASE("rational_in_interval examples") {
  auto r = rational_in_interval({q(3, 10), q(7, 20)}, 3);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.value == q(1, 3));
  r = rational_in_interval({q(28, 100), q(29, 100)}, 7);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.value == q(2, 7));
  CHECK(rational_in_interval({q(0), q(1)}, 2).status == SearchStatus::NotUnique);
  CHECK(rational_in_interval({q(1, 10), q(1, 9)}, 5).status == SearchStatus::NotFound);
}

TEST_CASE("rational_in_interval agrees with an exhaustive scan") {
  // Every p/q with q <= qmax inside a window of width < 1/qmax^2 is recovered.
  for (std::int64_t qmax = 1; qmax <= 50; ++qmax) {
    const Rational half_width(1, 2 * qmax * qmax + 1);
    for (std::int64_t d = 1; d <= qmax; ++d) {
      for (std::int64_t p = -d; p <= 2 * d; ++p) {
        const Rational x(p, d);
        for (const Rational& off : {Rational(0), half_width / Rational(3), -half_width / Rational(2)}) {
          const RationalInterval iv{x - half_width + off, x + half_width + off};
          if (!iv.contains(x)) continue;
          const auto r = rational_in_interval(iv, qmax);
          REQUIRE(r.status == SearchStatus::Found);
          CHECK(r.value == x);
        }
      }
    }
  }
}

TEST_CASE("rational_in_interval status matches the number of candidates") {
  for (std::int64_t a = -20; a <= 20; ++a) {
    for (std::int64_t b = a; b <= a + 7; ++b) {
      const Rational lo(a, 13), hi(b, 11);
      if (hi < lo) continue;
      for (std::int64_t qmax : {1, 2, 5, 9}) {
        const auto cands = test::fractions_in(lo, hi, qmax);
        const auto r = rational_in_interval({lo, hi}, qmax);
        if (cands.empty()) {
          CHECK(r.status == SearchStatus::NotFound);
        } else if (cands.size() == 1) {
          REQUIRE(r.status == SearchStatus::Found);
          CHECK(r.value == cands.front());
        } else {
          CHECK(r.status == SearchStatus::NotUnique);
        }
      }
    }
  }
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_in_interval(q(3, 10), q(7, 20)) == q(1, 3));
  CHECK(simplest_in_interval(q(-1, 2), q(1, 2)) == q(0));
  CHECK(simplest_in_interval(q(5, 2), q(5, 2)) == q(5, 2));
}

TEST_CASE("seminorm is shift invariant and join/meet commute with top/bottom") {
  const ExtendedVec x = vec({q(1, 3), q(-2), q(7, 5)});
  const ExtendedVec y = vec({q(4), q(-5, 2), q(0)});
  for (const Rational& c : {q(0), q(-3, 7), q(11)}) {
    CHECK(hilbert_seminorm(shift(c, x)) == hilbert_seminorm(x));
  }
  CHECK(top(join(x, y)) == max(top(x), top(y)));
  CHECK(bottom(meet(x, y)) == min(bottom(x), bottom(y)));
  CHECK(sup_distance(x, y) == q(11, 3));
  CHECK(leq(meet(x, y), join(x, y)));
}
