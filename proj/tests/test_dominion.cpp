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

#include <algorithm>
#include <memory>

#include "doctest.h"
#include "mpg/dominion.hpp"
#include "mpg/stochastic_game.hpp"
#include "support.hpp"

using namespace mpg;
using mpg::test::q;
using mpg::test::vec;

namespace {

OraclePtr game_oracle(StochasticGame g) {
  return std::make_shared<StochasticExactOracle>(std::make_shared<StochasticGame>(std::move(g)));
}

// Loops j1, j2 (payoffs 1, 0) and j3 whose only move leads to `target`.
StochasticGame feeder_game(const std::string& target) {
  StochasticGame g = test::loops({1, 0});
  g.add_state(Owner::Min, "j3");
  g.add_state(Owner::Max, "i3");
  g.add_state(Owner::Nature, "k3");
  g.add_edge("j3", "i3", 0);
  g.add_edge("i3", "k3", 0);
  g.add_edge("k3", target, 1);
  return g;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("top_class_call_budget examples") {
  CHECK(top_class_call_budget(1, SepParams(1, 1)) == 9);
  CHECK(top_class_call_budget(2, SepParams(q(1, 2), 2)) == 68);
  CHECK(top_class_call_budget(3, SepParams(q(1, 16), 8)) == 3081);
  CHECK_THROWS(SepParams(0, 1));
  CHECK_THROWS(SepParams(1, 0));
}

TEST_CASE("decide_constant_value examples") {
  FunctionOracle shift1(1, [](const ExtendedVec& x) { return vec({x[0] + ExtendedScalar(1)}); });
  CHECK(decide_constant_value(shift1, SepParams(1, 1)).constant);

  FunctionOracle ergodic(2, [](const ExtendedVec& x) {
    return vec({x[1] + ExtendedScalar(3), x[0] + ExtendedScalar(-1)});
  });
  CHECK(decide_constant_value(ergodic, SepParams(q(1, 2), 2)).constant);

  // chi = (5, 0): separation 5, so delta = 1 is admissible.
  const OraclePtr absorbing = game_oracle(test::absorbing_game());
  const auto dec = decide_constant_value(*absorbing, SepParams(1, 1));
  CHECK_FALSE(dec.constant);
  CHECK(dec.low_set == std::vector<std::size_t>{1});
}

TEST_CASE("extend examples") {
  const OraclePtr f = game_oracle(feeder_game("j1"));
  CHECK(sorted(extend(f, Dominion{{0, 1, 2}}, {0, 1, 2})) == std::vector<std::size_t>{0, 1, 2});
  // j3 only reaches the seed, so it is forced in.
  CHECK(sorted(extend(f, Dominion{{0, 1, 2}}, {0, 1})) == std::vector<std::size_t>{0, 1, 2});
  CHECK(sorted(extend(f, Dominion{{0, 1, 2}}, {0})) == std::vector<std::size_t>{0, 2});
  // j2 absorbs; a seed disjoint from {j2} stays disjoint from it.
  const OraclePtr g = game_oracle(feeder_game("j2"));
  const auto ext = sorted(extend(g, Dominion{{0, 1, 2}}, {0}));
  CHECK(ext == std::vector<std::size_t>{0});
  CHECK_THROWS(extend(g, Dominion{{0, 1, 2}}, {}));
}

TEST_CASE("top_class examples") {
  const auto all = top_class(game_oracle(test::cycle_game()), SepParams(1, 1));
  CHECK(all.top.states == std::vector<std::size_t>{0});
  const auto abs = top_class(game_oracle(test::absorbing_game()), SepParams(1, 1));
  CHECK(abs.top.states == std::vector<std::size_t>{0});
  const OraclePtr three = game_oracle(test::three_state_game());
  const auto tc = top_class(three, SepParams(1, 1));
  CHECK(sorted(tc.top.states) == std::vector<std::size_t>{0, 1});
  // Every set of the chain is a dominion containing the top class.
  for (const auto& d : tc.chain) {
    CHECK(is_dominion(three, d.states));
    for (auto s : tc.top.states) CHECK(std::count(d.states.begin(), d.states.end(), s) == 1);
  }
}

TEST_CASE("top_class stays within the call budget") {
  const SepParams params(1, 1);
  for (const auto& g : {test::absorbing_game(), test::three_state_game(), test::half_half_game()}) {
    auto counting = std::make_shared<CountingOracle>(game_oracle(g));
    top_class(counting, params);
    CHECK(mpz_class(counting->calls()) <= top_class_call_budget(g.count(Owner::Min), params));
  }
}
