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

#include <cmath>
#include <memory>

#include "doctest.h"
#include "mpg/counterexample.hpp"
#include "mpg/entropy_game.hpp"
#include "mpg/random_games.hpp"
#include "support.hpp"

using namespace mpg;
using mpg::test::q;
using mpg::test::vec;

namespace {

const ExtendedScalar kNegInf = ExtendedScalar::neg_inf();

// d1 loops with weight 3; d2 may loop with weight 2 (via t2) or move to d1
// (via t3). Values (3, 2).
EntropyGame two_block_game() {
  EntropyGame g;
  for (const char* s : {"d1", "d2"}) g.add_state(Role::Despot, s);
  for (const char* s : {"t1", "t2", "t3"}) g.add_state(Role::Tribune, s);
  for (const char* s : {"p1", "p2", "p3"}) g.add_state(Role::People, s);
  g.add_edge("d1", "t1");
  g.add_edge("d2", "t2");
  g.add_edge("d2", "t3");
  g.add_edge("t1", "p1");
  g.add_edge("t2", "p2");
  g.add_edge("t3", "p3");
  g.add_edge("p1", "d1", 3);
  g.add_edge("p2", "d2", 2);
  g.add_edge("p3", "d1", 1);
  return g;
}

// d1 -> p with successors (d1, d2), multiplicities 1, 1; d2 loops.
EntropyGame fan_game() {
  EntropyGame g;
  g.add_state(Role::Despot, "d1");
  g.add_state(Role::Despot, "d2");
  g.add_state(Role::Tribune, "t1");
  g.add_state(Role::Tribune, "t2");
  g.add_state(Role::People, "p1");
  g.add_state(Role::People, "p2");
  g.add_edge("d1", "t1");
  g.add_edge("d2", "t2");
  g.add_edge("t1", "p1");
  g.add_edge("t2", "p2");
  g.add_edge("p1", "d1", 1);
  g.add_edge("p1", "d2", 1);
  g.add_edge("p2", "d2", 1);
  return g;
}

// Closed form of log(sum m_i exp(x_i)) in long double.
long double lse(const std::vector<std::pair<long double, long double>>& terms) {
  long double s = 0;
  for (const auto& [m, x] : terms) s += m * std::exp(x);
  return std::log(s);
}

bool contains_sqrt(const RationalInterval& iv, const Rational& c, std::int64_t d) {
  // c + sqrt(d) in [lo, hi], with lo, hi >= c.
  const Rational a = iv.lo - c, b = iv.hi - c;
  return a * a <= Rational(d) && b * b >= Rational(d);
}

}  // namespace

TEST_CASE("entropy game validation") {
  EntropyGame g;
  g.add_state(Role::Despot, "d");
  g.add_state(Role::Tribune, "t");
  g.add_state(Role::People, "p");
  g.add_edge("d", "t");
  CHECK_THROWS_AS(g.add_edge("d", "p"), GameFormatError);
  CHECK_THROWS_AS(g.add_edge("t", "p", 2), GameFormatError);
  CHECK_THROWS_AS(g.add_edge("p", "d", 0), GameFormatError);
  CHECK_THROWS_AS(g.validate(), GameFormatError);
  g.add_edge("t", "p");
  g.add_edge("p", "d", 4);
  CHECK_NOTHROW(g.validate());
  CHECK(g.max_multiplicity() == 4);
}

TEST_CASE("multiplicative_eval examples") {
  CHECK(multiplicative_eval(test::entropy_loop(2), {q(3, 7)}) == std::vector<Rational>{q(6, 7)});
  CHECK(multiplicative_eval(fan_game(), {1, 1}) == std::vector<Rational>{2, 1});
  EntropyGame g;
  g.add_state(Role::Despot, "d");
  g.add_state(Role::Tribune, "t");
  g.add_state(Role::People, "p2");
  g.add_state(Role::People, "p5");
  g.add_edge("d", "t");
  g.add_edge("t", "p2");
  g.add_edge("t", "p5");
  g.add_edge("p2", "d", 2);
  g.add_edge("p5", "d", 5);
  CHECK(multiplicative_eval(g, {1}) == std::vector<Rational>{5});
  CHECK_THROWS(multiplicative_eval(g, {0}));
  CHECK_THROWS(multiplicative_eval(g, {-1}));
}

TEST_CASE("log-domain oracle examples") {
  const OraclePtr fan = log_domain_oracle(std::make_shared<EntropyGame>(fan_game()));
  const Rational eps(1, 1000000000);
  const auto y = fan->eval(vec({0, 0}), eps);
  CHECK(std::fabs(y[0].value().to_double() - std::log(2.0)) <= 1e-9);
  CHECK(y[1] == ExtendedScalar(0));
  const auto z = fan->eval(vec({0, kNegInf}), eps);
  CHECK(z[0] == ExtendedScalar(0));
  CHECK(z[1].is_neg_inf());
  const OraclePtr loop = log_domain_oracle(std::make_shared<EntropyGame>(test::entropy_loop(2)));
  const auto w = loop->eval(vec({q(5, 4)}), eps);
  CHECK(std::fabs(w[0].value().to_double() - (1.25 + std::log(2.0))) <= 2e-9);
}

TEST_CASE("log-domain oracle accuracy against a closed form") {
  Rng rng(3);
  std::uniform_int_distribution<int> num(-40, 40);
  for (int trial = 0; trial < 200; ++trial) {
    const EntropyGame g = random_entropy(rng);
    const auto oracle = log_domain_oracle(std::make_shared<EntropyGame>(g));
    ExtendedVec x(g.count(Role::Despot));
    for (auto& e : x) e = Rational(num(rng), 8);
    const Rational eps(1, 1 << 20);
    const auto y = oracle->eval(x, eps);
    for (std::size_t d = 0; d < g.count(Role::Despot); ++d) {
      long double best_t = 1e300;
      for (const auto& dt : g.out(Role::Despot, d)) {
        long double best_p = -1e300;
        for (const auto& tp : g.out(Role::Tribune, dt.to)) {
          std::vector<std::pair<long double, long double>> terms;
          for (const auto& pd : g.out(Role::People, tp.to)) {
            terms.emplace_back(static_cast<long double>(pd.weight), x[pd.to].value().to_double());
          }
          best_p = std::max(best_p, lse(terms));
        }
        best_t = std::min(best_t, best_p);
      }
      CHECK(std::fabs(static_cast<double>(best_t) - y[d].value().to_double()) <= eps.to_double() + 1e-12);
    }
  }
}

TEST_CASE("log-domain certificate checks") {
  const auto oracle = log_domain_oracle(std::make_shared<EntropyGame>(test::entropy_loop(2)));
  // F(v) = v + log 2 with log 2 in (0.6931, 0.6932).
  CHECK(oracle->check_inequality(vec({0}), q(6931, 10000), Direction::Sub).ok);
  CHECK_FALSE(oracle->check_inequality(vec({0}), q(6932, 10000), Direction::Sub).ok);
  CHECK(oracle->check_inequality(vec({0}), q(6932, 10000), Direction::Super).ok);
  CHECK_FALSE(oracle->check_inequality(vec({0}), q(6931, 10000), Direction::Super).ok);
}

TEST_CASE("ambiguity matrices") {
  CHECK(ambiguity_matrix(test::entropy_loop(2), {{0}, {0}}) == IntMatrix{{2}});
  EntropyGame g;
  g.add_state(Role::Despot, "d1");
  g.add_state(Role::Despot, "d2");
  g.add_state(Role::Tribune, "t");
  g.add_state(Role::People, "p");
  g.add_edge("d1", "t");
  g.add_edge("d2", "t");
  g.add_edge("t", "p");
  g.add_edge("p", "d1");
  g.add_edge("p", "d2");
  const StrategyPair pair{{0, 0}, {0}};
  CHECK(ambiguity_matrix(g, pair) == IntMatrix{{1, 1}, {1, 1}});
  CHECK(matrix_rank(ambiguity_matrix(g, pair)) == 1);
  CHECK(pair_value(g, pair, q(1, 1000000))[0].contains(2));
  CHECK_THROWS(ambiguity_matrix(g, {{1, 0}, {0}}));
}

TEST_CASE("perron_root examples") {
  CHECK(perron_root({{2}}, q(1, 100)) == RationalInterval(2, 2));
  const auto ones = perron_root({{1, 1}, {1, 1}}, q(1, 1000));
  CHECK(ones.contains(2));
  CHECK(ones.width() <= q(1, 1000));
  const Rational tol(1, 1000000000);
  const auto c = perron_root({{10, 10}, {1, 0}}, tol);
  CHECK(c.width() <= tol);
  CHECK(contains_sqrt(c, 5, 35));
  CHECK(test::brackets_largest_root({{10, 10}, {1, 0}}, c));
  CHECK_THROWS_AS(perron_root({{1, 1}, {0, 1}}, tol), std::invalid_argument);
  CHECK_THROWS_AS(perron_root({{0}}, tol), std::invalid_argument);
}

TEST_CASE("pair_value examples") {
  CHECK(pair_value(test::entropy_loop(2), {{0}, {0}}, q(1, 1000))[0] == RationalInterval(2, 2));
  // Components with radii 2 and 3; both reachable from d1.
  EntropyGame g;
  g.add_state(Role::Despot, "d1");
  g.add_state(Role::Despot, "d2");
  g.add_state(Role::Tribune, "t1");
  g.add_state(Role::Tribune, "t2");
  g.add_state(Role::People, "p1");
  g.add_state(Role::People, "p2");
  g.add_edge("d1", "t1");
  g.add_edge("d2", "t2");
  g.add_edge("t1", "p1");
  g.add_edge("t2", "p2");
  g.add_edge("p1", "d1", 2);
  g.add_edge("p1", "d2", 1);
  g.add_edge("p2", "d2", 3);
  const auto v = pair_value(g, {{0, 1}, {0, 1}}, q(1, 1000));
  CHECK(v[0].contains(3));
  CHECK(v[1].contains(3));
  CHECK(v[0].width() <= q(1, 1000));
}

TEST_CASE("rank and separation bounds") {
  CHECK(matrix_rank({{10, 10}, {1, 0}}) == 2);
  CHECK(matrix_rank({{1, 1}, {1, 1}}) == 1);
  const Rational e = e_upper();
  CHECK(e > Rational(2718281828, 1000000000));
  CHECK(separation_nu(2, 1, 1) == pow(Rational(2), 13) * pow(e, 4));
  CHECK(std::fabs(separation_nu(2, 1, 1).to_double() / 4.473e5 - 1) < 1e-3);
  const RankProfile rp = rank_profile(test::entropy_loop(2));
  CHECK(rp.r == 1);
  CHECK(rp.enumerated);
  CHECK(rp.nu == separation_nu(1, 1, 2));
  CHECK(rp.nu_hat == rp.nu * Rational(2));
  const RankProfile fallback = rank_profile(two_block_game(), 1, true);
  CHECK_FALSE(fallback.enumerated);
  CHECK(fallback.r == 2);
  CHECK_THROWS_AS(rank_profile(two_block_game(), 1, false), BudgetExceeded);
}

TEST_CASE("cw_norm_bound examples") {
  CHECK(cw_norm_bound(1, 2, q(1, 2)) == 2400);
  CHECK(cw_norm_bound(2, 2, q(1, 4)) == 19200);
  Rational prev = 0;
  for (std::int64_t k = 1; k < 40; k += 3) {
    const Rational b = cw_norm_bound(3, 5, Rational(1, std::int64_t{1} << k));
    CHECK(b >= prev);
    prev = b;
  }
  CHECK_THROWS(cw_norm_bound(1, 2, 1));
  CHECK_THROWS(cw_norm_bound(1, 0, q(1, 2)));
}

TEST_CASE("brute_force_entropy_values examples") {
  const auto single = brute_force_entropy_values(test::entropy_loop(2));
  CHECK(single.chi[0] == RationalInterval(2, 2));
  const auto trib = brute_force_entropy_values(test::tribune_choice_game());
  CHECK(trib.chi[0].contains(3));
  const auto desp = brute_force_entropy_values(test::despot_choice_game());
  CHECK(desp.chi[0].contains(2));
  const auto two = brute_force_entropy_values(two_block_game());
  CHECK(two.chi[0].contains(3));
  CHECK(two.chi[1].contains(2));
  CHECK(two.width <= two.rank.nu_hat.inverse() / Rational(4));
}

TEST_CASE("solve_entropy_game examples") {
  const auto a = solve_entropy_game(test::entropy_loop(2));
  CHECK(a.values[0].contains(2));
  const auto b = solve_entropy_game(test::tribune_choice_game());
  CHECK(b.values[0].contains(3));
  CHECK(b.strategies.tau[0] == 1);
  const auto c = solve_entropy_game(test::despot_choice_game());
  CHECK(c.values[0].contains(2));
  CHECK(c.strategies.sigma[0] == 0);
}

TEST_CASE("solve_entropy_game decomposes into blocks") {
  const EntropyGame g = two_block_game();
  EntropySolveOptions opts;
  // log 3 - log 2 > 1/4; each block has a constant bias.
  opts.params = SepParams(q(1, 4), 1);
  const auto sol = solve_entropy_game(g, opts);
  REQUIRE(sol.blocks.size() == 2);
  CHECK(sol.blocks[0].states == std::vector<std::size_t>{0});
  CHECK(sol.blocks[1].states == std::vector<std::size_t>{1});
  CHECK(sol.blocks[1].context == std::vector<std::vector<std::size_t>>{{0}});
  CHECK(sol.values[0].contains(3));
  CHECK(sol.values[1].contains(2));
  for (const auto& blk : sol.blocks) {
    CHECK(verify_block_certificate(g, blk, blk.sub).ok);
    CHECK(verify_block_certificate(g, blk, blk.sup).ok);
    CHECK(blk.sub.lam == blk.log_value.lo);
    CHECK(blk.sup.lam == blk.log_value.hi);
  }
  // Despot stays on its own loop at d2.
  CHECK(g.id(Role::Tribune, sol.strategies.sigma[1]) == "t2");
  const auto pv = pair_value(g, sol.strategies, q(1, 1000000000));
  CHECK(pv[0].contains(3));
  CHECK(pv[1].contains(2));
  CHECK(recession_eval(g, vec({3, 2})) == vec({3, 2}));
}

TEST_CASE("solve_entropy_game respects its oracle budget") {
  EntropySolveOptions opts;
  opts.max_oracle_calls = 50;
  CHECK_THROWS_AS(solve_entropy_game(two_block_game(), opts), BudgetExceeded);
}

TEST_CASE("entropy dominions") {
  const EntropyGame g = two_block_game();
  CHECK(is_entropy_dominion(g, {0}));
  CHECK(is_entropy_dominion(g, {0, 1}));
  // d2 can be forced out only through t3, which the Despot controls.
  CHECK_FALSE(is_entropy_dominion(g, {1}));
  const auto top = induced_on_dominion(g, {0});
  CHECK(top.game.count(Role::Despot) == 1);
  CHECK(top.despot == std::vector<std::size_t>{0});
  const auto rest = remove_top_class(g, {0});
  CHECK(rest.despot == std::vector<std::size_t>{1});
  CHECK(rest.game.count(Role::Tribune) == 1);
}

TEST_CASE("recession operator examples") {
  const EntropyGame g = fan_game();
  CHECK(recession_eval(g, vec({q(5, 2), q(5, 2)})) == vec({q(5, 2), q(5, 2)}));
  CHECK(recession_eval(test::entropy_loop(7), vec({q(-3)})) == vec({q(-3)}));
  CHECK(recession_eval(g, vec({0, 4})) == vec({4, 4}));
}

TEST_CASE("original two-move model conversion") {
  AsarinGame a;
  a.despot = {"D1", "D2"};
  a.tribune = {"T"};
  a.transitions = {{"D1", "a", "T"}, {"D2", "a", "T"}, {"T", "x", "D1"}, {"T", "x", "D2"}};
  const ConvertedAsarin conv = convert_asarin(a);
  CHECK_NOTHROW(conv.game.validate());
  CHECK(conv.game.count(Role::Despot) == 3);
  const auto bf = brute_force_entropy_values(conv.game);
  // Two People choices per original turn, so each converted turn grows by sqrt 2.
  CHECK(asarin_value(conv, bf.chi).contains(2));
  for (const auto& v : bf.chi) CHECK(contains_sqrt(v, 0, 2));
}

TEST_CASE("values lie in [1, nW]") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const EntropyGame g = random_entropy(rng);
    const auto bf = brute_force_entropy_values(g);
    const Rational nw(static_cast<long long>(g.count(Role::Despot)) * g.max_multiplicity());
    for (const auto& v : bf.chi) {
      CHECK(v.hi >= 1);
      CHECK(v.lo <= nw);
    }
  }
}
