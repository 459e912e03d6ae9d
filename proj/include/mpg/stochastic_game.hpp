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

#ifndef MPG_STOCHASTIC_GAME_HPP_
#define MPG_STOCHASTIC_GAME_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpg/dominion.hpp"
#include "mpg/game_graph.hpp"
#include "mpg/value_iteration.hpp"

namespace mpg {

// Thrown when a solver precondition (e.g. constant value) does not hold.
class PreconditionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Owner { Min, Max, Nature };

// Tripartite stochastic mean-payoff game. Per turn Max receives -A + B.
// Edge weights: A on Min->Max, B on Max->Nature, numerator on Nature->Min.
// Strategies: sigma picks a Max state per Min state, tau a Nature state per
// Max state.
class StochasticGame {
 public:
  explicit StochasticGame(std::int64_t denominator = 1);

  std::size_t add_state(Owner owner, const std::string& id);
  // Weight is A, B or the probability numerator depending on the source owner.
  void add_edge(const std::string& from, const std::string& to, std::int64_t weight);
  void add_edge(Owner from_owner, std::size_t from, std::size_t to, std::int64_t weight);

  // Throws GameFormatError naming the offending state.
  void validate() const;

  std::int64_t denominator() const { return denominator_; }
  std::size_t count(Owner o) const { return ids_[idx(o)].size(); }
  const std::string& id(Owner o, std::size_t i) const { return ids_[idx(o)][i]; }
  const std::vector<std::string>& ids(Owner o) const { return ids_[idx(o)]; }
  const std::vector<WeightedEdge>& out(Owner o, std::size_t i) const { return out_[idx(o)][i]; }
  // Owner and index of an identifier; throws GameFormatError if unknown.
  std::pair<Owner, std::size_t> lookup(const std::string& id) const;

  friend bool operator==(const StochasticGame&, const StochasticGame&) = default;

 private:
  static std::size_t idx(Owner o) { return static_cast<std::size_t>(o); }

  std::int64_t denominator_;
  std::vector<std::string> ids_[3];
  std::vector<std::vector<WeightedEdge>> out_[3];
  std::map<std::string, std::pair<Owner, std::size_t>> index_;
};

struct GameStats {
  std::size_t n = 0;
  std::int64_t m = 1;
  std::int64_t w = 0;
  std::size_t s = 0;
  mpz_class mu;  // n * M^min(s, n-1)

  // M^min(s, n-1)
  mpz_class m_power() const;
};

GameStats game_stats(const StochasticGame& game);

ExtendedVec shapley_eval(const StochasticGame& game, const ExtendedVec& x);
ExtendedVec recession_eval(const StochasticGame& game, const ExtendedVec& x);

using GamePtr = std::shared_ptr<const StochasticGame>;

class StochasticExactOracle final : public ShapleyOracle {
 public:
  explicit StochasticExactOracle(GamePtr game) : game_(std::move(game)) {}
  std::size_t dimension() const override { return game_->count(Owner::Min); }
  ExtendedVec eval(const ExtendedVec& x, const Rational&) const override {
    return shapley_eval(*game_, x);
  }
  bool exact() const override { return true; }

 private:
  GamePtr game_;
};

// Exact evaluation followed by rounding of finite coordinates to the grid
// 1/q (nearest, ties to even numerator); error <= 1/(2q).
class StochasticRoundingOracle final : public ShapleyOracle {
 public:
  StochasticRoundingOracle(GamePtr game, mpz_class q);
  std::size_t dimension() const override { return game_->count(Owner::Min); }
  ExtendedVec eval(const ExtendedVec& x, const Rational& eps) const override;
  // Certificates are checked against the exact operator.
  InequalityCheck check_inequality(const ExtendedVec& v, const Rational& lam, Direction dir,
                                   const std::vector<std::size_t>* only = nullptr) const override;
  const mpz_class& q() const { return q_; }

 private:
  bool eval_fast(const ExtendedVec& x, ExtendedVec& out) const;

  GamePtr game_;
  mpz_class q_;
  Rational half_step_;
  std::int64_t q_small_ = 0;  // 0 when q does not fit the fast path
};

OraclePtr rounding_oracle(GamePtr game, const mpz_class& q);

Rational separation_bound(const GameStats& stats);
Rational bias_norm_bound(const GameStats& stats);
// 8 n^2 W M^(2 min(s, n-1)).
mpz_class winner_iteration_bound(const GameStats& stats);
// 128 n^3 W M^(3 min(s, n-1)).
mpz_class constant_value_call_bound(const GameStats& stats);
// 65 n^4 W M^(3 min(s, n-1)).
mpz_class top_class_call_bound(const GameStats& stats);

WinnerVerdict winner(const StochasticGame& game);

struct StochasticValueSolution {
  Rational value;
  RationalInterval interval;
  StrategyPair strategies;
  Certificate sub;
  Certificate sup;
  std::uint64_t oracle_calls = 0;
};

StochasticValueSolution solve_constant_value(const StochasticGame& game);

struct StochasticTopClass {
  Dominion top;
  std::vector<Dominion> chain;
  std::uint64_t oracle_calls = 0;
};

StochasticTopClass solve_top_class(const StochasticGame& game);

// sigma = argmin at the Super vector, tau = argmax at the Sub vector, ties
// to the smallest index.
StrategyPair extract_strategies(const StochasticGame& game, const ExtendedVec& sub_vec,
                                const ExtendedVec& super_vec);

// Subgame on the Min states `states` (a dominion): Max successors of the
// states, and Nature actions whose support stays inside `states`.
StochasticGame induced_subgame(const StochasticGame& game, const std::vector<std::size_t>& states);

// Restricts Min (resp. Max) to the single action given by the strategy.
StochasticGame freeze_min(const StochasticGame& game, const std::vector<std::size_t>& sigma);
StochasticGame freeze_max(const StochasticGame& game, const std::vector<std::size_t>& tau);

struct PairGains {
  StrategyPair pair;
  std::vector<Rational> gains;  // per Min state
};

struct BruteForceValues {
  std::vector<Rational> chi;
  std::vector<PairGains> pairs;
};

inline constexpr std::uint64_t kDefaultPairBudget = 1000000;

// Enumerates positional pairs; throws BudgetExceeded above `budget` pairs.
BruteForceValues brute_force_values(const StochasticGame& game,
                                    std::uint64_t budget = kDefaultPairBudget,
                                    unsigned jobs = 1, bool keep_pairs = true);

// Mean payoff per Min state of the Markov reward chain induced by a pair.
std::vector<Rational> pair_gains(const StochasticGame& game, const StrategyPair& pair);

std::uint64_t strategy_pair_count(const StochasticGame& game);

// One-move-per-turn game: each state has one owner and moves along edges
// carrying a reward (controller states) or a probability numerator (Nature).
struct TurnBasedGame {
  struct State {
    std::string id;
    Owner owner;
  };
  struct Edge {
    std::string from, to;
    std::int64_t weight;  // reward paid to Max, or numerator for Nature sources
  };
  std::vector<State> states;
  std::vector<Edge> edges;
  std::int64_t denominator = 1;
};

struct NormalizedGame {
  StochasticGame game;
  // Original id -> Min state index of its copy.
  std::map<std::string, std::size_t> entry;
  // Each original move becomes one full Min/Max/Nature turn; three stages
  // of the normalized game per original move.
  int stages_per_move = 3;
};

NormalizedGame normalize_turn_based(const TurnBasedGame& src);

}  // namespace mpg

#endif  // MPG_STOCHASTIC_GAME_HPP_
