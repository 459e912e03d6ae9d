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
#include "mpg/random_games.hpp"
#include "mpg/stochastic_game.hpp"
#include "support.hpp"

using namespace mpg;
using mpg::test::q;
using mpg::test::vec;

namespace {

const ExtendedScalar kNegInf = ExtendedScalar::neg_inf();

// Nature k1 splits 1/2, 1/2 over j1, j2; k2 returns to j1 surely.
StochasticGame split_game() {
  StochasticGame g(2);
  g.add_state(Owner::Min, "j1");
  g.add_state(Owner::Min, "j2");
  g.add_state(Owner::Max, "i1");
  g.add_state(Owner::Max, "i2");
  g.add_state(Owner::Nature, "k1");
  g.add_state(Owner::Nature, "k2");
  g.add_edge("j1", "i1", 0);
  g.add_edge("j2", "i2", 0);
  g.add_edge("i1", "k1", 0);
  g.add_edge("i2", "k2", 0);
  g.add_edge("k1", "j1", 1);
  g.add_edge("k1", "j2", 1);
  g.add_edge("k2", "j1", 2);
  return g;
}

GameStats stats(std::size_t n, std::int64_t m, std::int64_t w, std::size_t s) {
  GameStats st;
  st.n = n;
  st.m = m;
  st.w = w;
  st.s = s;
  st.mu = mpz_class(static_cast<unsigned long>(n)) * st.m_power();
  return st;
}

bool all_finite_and_denominator_at_most(const std::vector<Rational>& v, const mpz_class& mu) {
  return std::all_of(v.begin(), v.end(), [&](const Rational& r) { return r.denominator() <= mu; });
}

}  // namespace

TEST_CASE("game validation") {
  StochasticGame g(2);
  g.add_state(Owner::Min, "j");
  g.add_state(Owner::Max, "i");
  g.add_state(Owner::Nature, "k");
  g.add_edge("j", "i", 0);
  g.add_edge("i", "k", 0);
  g.add_edge("k", "j", 1);
  CHECK_THROWS_AS(g.validate(), GameFormatError);  // numerators sum to 1, not 2
  CHECK_THROWS_AS(g.add_state(Owner::Max, "j"), GameFormatError);
  CHECK_THROWS_AS(g.add_edge("j", "k", 0), GameFormatError);
  CHECK_THROWS_AS(g.add_edge("nope", "i", 0), GameFormatError);
  StochasticGame h(1);
  h.add_state(Owner::Min, "j");
  CHECK_THROWS_AS(h.validate(), GameFormatError);
}

TEST_CASE("shapley_eval examples") {
  const StochasticGame cyc = test::cycle_game();
  CHECK(shapley_eval(cyc, vec({q(5, 3)})) == vec({q(11, 3)}));
  StochasticGame two(1);
  two.add_state(Owner::Min, "j");
  two.add_state(Owner::Max, "i");
  two.add_state(Owner::Nature, "k1");
  two.add_state(Owner::Nature, "k2");
  two.add_edge("j", "i", 0);
  two.add_edge("i", "k1", 1);
  two.add_edge("i", "k2", 3);
  two.add_edge("k1", "j", 1);
  two.add_edge("k2", "j", 1);
  CHECK(shapley_eval(two, vec({q(-4)})) == vec({q(-1)}));
  const auto f = shapley_eval(split_game(), vec({0, kNegInf}));
  CHECK(f[0].is_neg_inf());
  CHECK(f[1] == ExtendedScalar(0));
  CHECK_THROWS(shapley_eval(cyc, vec({0, 0})));
}

TEST_CASE("rounding oracle") {
  auto g = std::make_shared<StochasticGame>(test::cycle_game());
  CHECK(rounding_oracle(g, 1)->eval(vec({0}), 1) == vec({2}));
  const auto r = rounding_oracle(g, 2)->eval(vec({q(1, 3)}), q(1, 4));
  CHECK(r == vec({q(5, 2)}));
  CHECK((r[0].value() - q(7, 3)).abs() <= q(1, 4));
  auto s = std::make_shared<StochasticGame>(split_game());
  const auto e = rounding_oracle(s, 3)->eval(vec({q(1, 7), kNegInf}), q(1, 6));
  CHECK(e[0].is_neg_inf());
  CHECK(e[1] == ExtendedScalar(0));
  // Ties go to the even numerator: 1/4 on the grid 1/2 lies between 0 and 1/2.
  CHECK(rounding_oracle(g, 2)->eval(vec({q(-7, 4)}), q(1, 4)) == vec({0}));
}

TEST_CASE("bounds") {
  CHECK(separation_bound(stats(2, 2, 1, 1)) == q(1, 16));
  CHECK(separation_bound(stats(3, 1, 1, 0)) == q(1, 9));
  CHECK(separation_bound(stats(2, 3, 1, 5)) == q(1, 36));
  CHECK(bias_norm_bound(stats(2, 2, 3, 1)) == 96);
  CHECK(bias_norm_bound(stats(1, 1, 0, 0)) == 0);
  CHECK(bias_norm_bound(stats(3, 1, 1, 0)) == 24);
  CHECK(winner_iteration_bound(stats(2, 2, 3, 1)) == 8 * 4 * 3 * 4);
  CHECK(constant_value_call_bound(stats(2, 2, 3, 1)) == 128 * 8 * 3 * 8);
  CHECK(top_class_call_bound(stats(2, 2, 3, 1)) == 65 * 16 * 3 * 8);
}

TEST_CASE("game_stats") {
  const GameStats a = game_stats(test::min_choice_game());
  CHECK(a.n == 1);
  CHECK(a.w == 1);
  CHECK(a.s == 0);
  CHECK(a.mu == 1);
  const GameStats b = game_stats(split_game());
  CHECK(b.n == 2);
  CHECK(b.m == 2);
  CHECK(b.s == 1);
  CHECK(b.mu == 4);
}

TEST_CASE("winner examples") {
  CHECK(winner(test::cycle_game()).outcome == Verdict::MaxWinsAll);
  StochasticGame g(1);
  g.add_state(Owner::Min, "j");
  g.add_state(Owner::Max, "i");
  g.add_state(Owner::Nature, "k");
  g.add_edge("j", "i", 3);
  g.add_edge("i", "k", 2);
  g.add_edge("k", "j", 1);
  CHECK(winner(g).outcome == Verdict::MinWinsAll);
  // F(x) = x: the non-strict top test holds at once.
  const auto zero = winner(test::loops({0}));
  CHECK(zero.outcome == Verdict::MinWinsAll);
  CHECK(zero.iterations == 1);
  // Values +1 and -1: no verdict within the bound.
  CHECK(winner(test::loops({1, -1})).outcome == Verdict::Exhausted);
}

TEST_CASE("solve_constant_value examples") {
  const StochasticGame cyc = test::cycle_game();
  const auto a = solve_constant_value(cyc);
  CHECK(a.value == 2);
  StochasticExactOracle exact(std::make_shared<StochasticGame>(cyc));
  CHECK(verify_certificate(exact, a.sub).ok);
  CHECK(verify_certificate(exact, a.sup).ok);

  const StochasticGame mc = test::min_choice_game();
  const auto b = solve_constant_value(mc);
  CHECK(b.value == -1);
  CHECK(mc.id(Owner::Max, b.strategies.sigma[0]) == "i2");

  const StochasticGame hh = test::half_half_game();
  const auto c = solve_constant_value(hh);
  CHECK(c.value == q(3, 2));
  CHECK(c.value.denominator() <= game_stats(hh).mu);
  CHECK(c.oracle_calls <= constant_value_call_bound(game_stats(hh)));

  CHECK_THROWS_AS(solve_constant_value(test::absorbing_game()), PreconditionViolated);
}

TEST_CASE("solve_top_class examples") {
  CHECK(solve_top_class(test::half_half_game()).top.states == std::vector<std::size_t>{0, 1});
  CHECK(solve_top_class(test::absorbing_game()).top.states == std::vector<std::size_t>{0});
  auto tc = solve_top_class(test::three_state_game()).top.states;
  std::sort(tc.begin(), tc.end());
  CHECK(tc == std::vector<std::size_t>{0, 1});
}

TEST_CASE("recession_eval examples") {
  const StochasticGame g = test::three_state_game();
  CHECK(recession_eval(g, vec({0, 0, 0})) == vec({0, 0, 0}));
  CHECK(recession_eval(g, vec({q(7, 2), q(7, 2), q(7, 2)})) == vec({q(7, 2), q(7, 2), q(7, 2)}));
  CHECK(recession_eval(test::absorbing_game(), vec({5, 0})) == vec({5, 0}));
  CHECK(recession_eval(g, vec({2, 2, -1})) == vec({2, 2, -1}));
}

TEST_CASE("brute_force_values examples") {
  CHECK(brute_force_values(test::cycle_game()).chi == std::vector<Rational>{2});
  const auto mc = brute_force_values(test::min_choice_game());
  CHECK(mc.chi == std::vector<Rational>{-1});
  REQUIRE(mc.pairs.size() == 2);
  CHECK(mc.pairs[0].gains == std::vector<Rational>{1});
  CHECK(mc.pairs[1].gains == std::vector<Rational>{-1});
  CHECK(brute_force_values(test::half_half_game()).chi == std::vector<Rational>{q(3, 2), q(3, 2)});
  CHECK(brute_force_values(test::three_state_game()).chi == std::vector<Rational>{2, 2, -1});
  CHECK_THROWS_AS(brute_force_values(test::three_state_game(), 1), BudgetExceeded);
}

TEST_CASE("pair_gains handles transient states") {
  // j2 feeds the loop at j1 (payoff 1) after paying 0 once.
  const StochasticGame g = test::leak_game();
  const StrategyPair p{{0, 1}, {0, 1}};
  CHECK(pair_gains(g, p) == std::vector<Rational>{1, 1});
  // Random walk: stationary distribution of the split game is (2/3, 1/3).
  StochasticGame w = split_game();
  CHECK(pair_gains(w, {{0, 1}, {0, 1}}) == std::vector<Rational>{0, 0});
}

TEST_CASE("brute force on a chain with payoffs uses the stationary law") {
  // Same walk as split_game, payoff 3 on leaving j1 and 0 on leaving j2:
  // pi = (2/3, 1/3), gain 2.
  StochasticGame g(2);
  g.add_state(Owner::Min, "j1");
  g.add_state(Owner::Min, "j2");
  g.add_state(Owner::Max, "i1");
  g.add_state(Owner::Max, "i2");
  g.add_state(Owner::Nature, "k1");
  g.add_state(Owner::Nature, "k2");
  g.add_edge("j1", "i1", 0);
  g.add_edge("j2", "i2", 0);
  g.add_edge("i1", "k1", 3);
  g.add_edge("i2", "k2", 0);
  g.add_edge("k1", "j1", 1);
  g.add_edge("k1", "j2", 1);
  g.add_edge("k2", "j1", 2);
  CHECK(brute_force_values(g).chi == std::vector<Rational>{2, 2});
  CHECK(solve_constant_value(g).value == 2);
}

TEST_CASE("dominion characterization by graph closure") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const StochasticGame g = random_smpg(rng);
    const auto oracle = std::make_shared<StochasticExactOracle>(std::make_shared<StochasticGame>(g));
    const std::size_t n = g.count(Owner::Min);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> d;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1u) d.push_back(j);
      }
      auto in_d = [&](std::size_t j) { return (mask >> j & 1u) != 0; };
      // Nature states whose support stays in D, Max states with such a move.
      auto nat_ok = [&](std::size_t k) {
        const auto& out = g.out(Owner::Nature, k);
        return std::all_of(out.begin(), out.end(), [&](const WeightedEdge& e) { return in_d(e.to); });
      };
      auto max_ok = [&](std::size_t i) {
        const auto& out = g.out(Owner::Max, i);
        return std::any_of(out.begin(), out.end(), [&](const WeightedEdge& e) { return nat_ok(e.to); });
      };
      bool expected = true;
      for (auto j : d) {
        for (const auto& e : g.out(Owner::Min, j)) expected = expected && max_ok(e.to);
      }
      CHECK(is_dominion(oracle, d) == expected);
    }
  }
}

TEST_CASE("extracted strategies are optimal when frozen") {
  Rng rng(11);
  int checked = 0;
  for (int trial = 0; trial < 80 && checked < 25; ++trial) {
    const StochasticGame g = random_smpg(rng);
    const auto chi = brute_force_values(g).chi;
    if (!std::all_of(chi.begin(), chi.end(), [&](const Rational& v) { return v == chi[0]; })) continue;
    ++checked;
    const auto sol = solve_constant_value(g);
    CHECK(sol.value == chi[0]);
    CHECK(all_finite_and_denominator_at_most(chi, game_stats(g).mu));
    for (const auto& v : brute_force_values(freeze_min(g, sol.strategies.sigma)).chi) {
      CHECK(v == sol.value);
    }
    for (const auto& v : brute_force_values(freeze_max(g, sol.strategies.tau)).chi) {
      CHECK(v == sol.value);
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("induced subgame on a dominion") {
  const StochasticGame g = test::three_state_game();
  const StochasticGame sub = induced_subgame(g, {0, 1});
  CHECK(sub.count(Owner::Min) == 2);
  CHECK(brute_force_values(sub).chi == std::vector<Rational>{2, 2});
}

TEST_CASE("turn-based normalization keeps the per-move value") {
  // Max at a picks reward 1 (to b) or 4 (to c); b returns to a with reward 0,
  // c returns with -5. Cycles a-b (1/2 per move) and a-c (-1/2 per move).
  TurnBasedGame tb;
  tb.states = {{"a", Owner::Max}, {"b", Owner::Min}, {"c", Owner::Min}};
  tb.edges = {{"a", "b", 1}, {"a", "c", 4}, {"b", "a", 0}, {"c", "a", -5}};
  const NormalizedGame ng = normalize_turn_based(tb);
  CHECK(ng.stages_per_move == 3);
  const auto chi = brute_force_values(ng.game).chi;
  CHECK(chi[ng.entry.at("a")] == q(1, 2));
  CHECK(chi[ng.entry.at("b")] == q(1, 2));
  CHECK(chi[ng.entry.at("c")] == q(1, 2));
}
