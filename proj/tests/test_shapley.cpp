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

#include <memory>

#include "doctest.h"
#include "mpg/shapley.hpp"
#include "mpg/stochastic_game.hpp"
#include "support.hpp"

using namespace mpg;
using mpg::test::q;
using mpg::test::vec;

namespace {

OraclePtr swap_plus_one() {
  return std::make_shared<FunctionOracle>(2, [](const ExtendedVec& x) {
    return vec({x[1] + ExtendedScalar(1), x[0] + ExtendedScalar(1)});
  });
}

OraclePtr max_first() {
  return std::make_shared<FunctionOracle>(
      2, [](const ExtendedVec& x) { return vec({max(x[0], x[1]), x[1]}); });
}

OraclePtr game_oracle(StochasticGame g) {
  return std::make_shared<StochasticExactOracle>(std::make_shared<StochasticGame>(std::move(g)));
}

}  // namespace

TEST_CASE("restriction to the full set is the identity restriction") {
  const OraclePtr f = swap_plus_one();
  const OraclePtr r = restrict(f, {0, 1});
  for (const auto& x : {vec({0, 0}), vec({q(3, 2), -4}), vec({ExtendedScalar::neg_inf(), 2})}) {
    CHECK(r->eval(x, 0) == f->eval(x, 0));
  }
}

TEST_CASE("restriction pads with -inf") {
  CHECK(restrict(swap_plus_one(), {0})->eval(vec({0}), 0)[0].is_neg_inf());
  CHECK(restrict(max_first(), {0})->eval(vec({0}), 0) == vec({0}));
  CHECK_THROWS(restrict(max_first(), {}));
}

TEST_CASE("is_dominion") {
  CHECK(is_dominion(swap_plus_one(), {0, 1}));
  const OraclePtr leak = game_oracle(test::leak_game());
  CHECK(is_dominion(leak, {0}));
  CHECK_FALSE(is_dominion(leak, {1}));
  CHECK(is_dominion(leak, {0, 1}));
}

TEST_CASE("counting oracle enforces its limit") {
  auto counting = std::make_shared<CountingOracle>(swap_plus_one(), 2);
  counting->eval(vec({0, 0}), 0);
  counting->eval(vec({0, 0}), 0);
  CHECK(counting->calls() == 2);
  CHECK_THROWS_AS(counting->eval(vec({0, 0}), 0), BudgetExceeded);
}

TEST_CASE("default check_inequality uses the exact evaluation") {
  const OraclePtr f = swap_plus_one();
  CHECK(f->check_inequality(vec({0, 0}), 1, Direction::Sub).ok);
  const auto bad = f->check_inequality(vec({0, 0}), 2, Direction::Sub);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violated);
  CHECK(*bad.violated == 0);
  CHECK(f->check_inequality(vec({0, 0}), 1, Direction::Super).ok);
}

TEST_CASE("restriction is monotone in the subset") {
  // (F^{S1})^l(0) <= (F^{S2})^l(0) on S1 for S1 in S2.
  const OraclePtr f = game_oracle(test::three_state_game());
  const std::vector<std::vector<std::size_t>> chain = {{0}, {0, 1}, {0, 1, 2}};
  for (std::size_t a = 0; a + 1 < chain.size(); ++a) {
    const OraclePtr small = restrict(f, chain[a]);
    const OraclePtr large = restrict(f, chain[a + 1]);
    ExtendedVec us(chain[a].size()), ul(chain[a + 1].size());
    for (int l = 1; l <= 5; ++l) {
      us = small->eval(us, 0);
      ul = large->eval(ul, 0);
      for (std::size_t k = 0; k < chain[a].size(); ++k) CHECK(us[k] <= ul[k]);
    }
  }
}
