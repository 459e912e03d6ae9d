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

#ifndef MPG_ENTROPY_GAME_HPP_
#define MPG_ENTROPY_GAME_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpg/dominion.hpp"
#include "mpg/game_graph.hpp"
#include "mpg/linalg.hpp"
#include "mpg/value_iteration.hpp"

namespace mpg {

enum class Role { Despot, Tribune, People };

// Despot -> Tribune -> People -> Despot. Only People edges carry a
// multiplicity; the other edges store 1.
// Strategies: sigma picks a Tribune state per Despot state, tau a People
// state per Tribune state.
class EntropyGame {
 public:
  std::size_t add_state(Role role, const std::string& id);
  void add_edge(const std::string& from, const std::string& to, std::int64_t multiplicity = 1);
  void add_edge(Role from_role, std::size_t from, std::size_t to, std::int64_t multiplicity = 1);

  void validate() const;

  std::size_t count(Role r) const { return ids_[idx(r)].size(); }
  const std::string& id(Role r, std::size_t i) const { return ids_[idx(r)][i]; }
  const std::vector<std::string>& ids(Role r) const { return ids_[idx(r)]; }
  const std::vector<WeightedEdge>& out(Role r, std::size_t i) const { return out_[idx(r)][i]; }
  std::pair<Role, std::size_t> lookup(const std::string& id) const;
  // Largest multiplicity (W), 1 for a game without People edges.
  std::int64_t max_multiplicity() const;

  friend bool operator==(const EntropyGame&, const EntropyGame&) = default;

 private:
  static std::size_t idx(Role r) { return static_cast<std::size_t>(r); }

  std::vector<std::string> ids_[3];
  std::vector<std::vector<WeightedEdge>> out_[3];
  std::map<std::string, std::pair<Role, std::size_t>> index_;
};

using EntropyGamePtr = std::shared_ptr<const EntropyGame>;

// T_d(x) = min over (d,t) max over (t,p) sum m_pl x_l, for x > 0.
std::vector<Rational> multiplicative_eval(const EntropyGame& game, const std::vector<Rational>& x);

// min/max/max over the graph, multiplicities dropped.
ExtendedVec recession_eval(const EntropyGame& game, const ExtendedVec& x);

// log o T o exp, evaluated with MPFR directed rounding. Outputs are dyadic
// except where the value is exactly rational (a lone successor of
// multiplicity 1), which is returned exactly.
class EntropyLogOracle final : public ShapleyOracle {
 public:
  explicit EntropyLogOracle(EntropyGamePtr game) : game_(std::move(game)) {}

  std::size_t dimension() const override { return game_->count(Role::Despot); }
  ExtendedVec eval(const ExtendedVec& x, const Rational& eps) const override;
  // Certified interval comparison; precision grows up to kMaxCheckPrecision
  // bits, after which the coordinate is reported undecided.
  InequalityCheck check_inequality(const ExtendedVec& v, const Rational& lam, Direction dir,
                                   const std::vector<std::size_t>* only = nullptr) const override;

  // Per People state, log sum m exp(x) within eps.
  ExtendedVec people_scores(const ExtendedVec& x, const Rational& eps) const;

  const EntropyGame& game() const { return *game_; }

  static constexpr long kMaxCheckPrecision = 4096;

 private:
  EntropyGamePtr game_;
};

OraclePtr log_domain_oracle(EntropyGamePtr game);

IntMatrix ambiguity_matrix(const EntropyGame& game, const StrategyPair& pair);

// Collatz-Wielandt bracket of the spectral radius of a nonnegative
// irreducible matrix, width <= tol. Throws std::invalid_argument when the
// matrix is reducible, zero or not square.
RationalInterval perron_root(const IntMatrix& matrix, const Rational& tol);

// Per Despot state, bracket of the value of the pair (max spectral radius
// over reachable components), each of width <= tol.
std::vector<RationalInterval> pair_value(const EntropyGame& game, const StrategyPair& pair,
                                         const Rational& tol);

std::uint64_t entropy_pair_count(const EntropyGame& game);

// Calls fn(pair) for every positional pair; throws BudgetExceeded first if
// the count is above budget.
void for_each_entropy_pair(const EntropyGame& game, std::uint64_t budget,
                           const std::function<void(const StrategyPair&)>& fn);

struct RankProfile {
  std::size_t r = 0;
  Rational nu;
  Rational nu_hat;
  bool enumerated = false;  // false when r = n was used as a fallback
};

// Rational upper bound for e used in the separation formula.
Rational e_upper();

// 2^r (r+1)^{8r} r^{-2r^2+r+1} (n e)^{4r^2} max(1, W/2)^{4r^2}, with e
// replaced by e_upper(). Exact rational.
Rational separation_nu(std::size_t n, std::size_t r, std::int64_t w);

RankProfile rank_profile(const EntropyGame& game, std::uint64_t budget = 1000000,
                         bool fallback = true);

// 1200 (n^3 log2 max(W,2) + n^2 log2(1/delta)), logs rounded upward.
Rational cw_norm_bound(std::size_t n, std::int64_t w, const Rational& delta);

struct EntropyPairValues {
  StrategyPair pair;
  std::vector<RationalInterval> values;
};

struct EntropyBruteForce {
  std::vector<RationalInterval> chi;
  std::vector<EntropyPairValues> pairs;
  RankProfile rank;
  Rational width;  // bracket width used for every pair value
};

// chi_d = min over sigma of max over tau of the pair value, every bracket of
// width <= 1/(4 nu_hat) unless `width` overrides it. Brackets that overlap
// are merged as equal values.
EntropyBruteForce brute_force_entropy_values(const EntropyGame& game,
                                             std::uint64_t budget = 1000000, unsigned jobs = 1,
                                             bool keep_pairs = true,
                                             std::optional<Rational> width = std::nullopt);

// Induced game on a Despot subset S together with its Tribune and People
// closure (Tribune states reaching People states that reach S). Index maps
// point back into the parent game.
struct InducedEntropyGame {
  EntropyGame game;
  std::vector<std::size_t> despot, tribune, people;
};

// Despot subset S is a dominion iff every Despot edge of S lands in the
// Tribune closure of S.
bool is_entropy_dominion(const EntropyGame& game, const std::vector<std::size_t>& states);

// Game on the closure of a dominion.
InducedEntropyGame induced_on_dominion(const EntropyGame& game,
                                       const std::vector<std::size_t>& states);

// Game left after removing a top class together with its closure.
InducedEntropyGame remove_top_class(const EntropyGame& game,
                                    const std::vector<std::size_t>& states);

struct EntropyBlock {
  std::vector<std::size_t> states;                // Despot indices, original game
  std::vector<std::vector<std::size_t>> context;  // earlier blocks, in removal order
  RationalInterval log_value;
  RationalInterval value;  // exp of log_value, rounded outward
  Certificate sub;         // on the block game, indexed like `states`
  Certificate sup;
};

// Rebuilds the block game: removes each context block in turn, then
// induces on the block.
InducedEntropyGame block_game(const EntropyGame& game, const EntropyBlock& block);

InequalityCheck verify_block_certificate(const EntropyGame& game, const EntropyBlock& block,
                                         const Certificate& cert);

struct EntropySolveOptions {
  std::optional<SepParams> params;       // default: delta = 1/nu_hat, R = cw_norm_bound
  std::uint64_t max_oracle_calls = 0;    // 0 = unlimited
  std::uint64_t rank_budget = 1000000;
};

struct EntropySolution {
  std::vector<RationalInterval> values;      // per Despot state
  std::vector<RationalInterval> log_values;  // per Despot state
  StrategyPair strategies;
  std::vector<EntropyBlock> blocks;
  RankProfile rank;
  SepParams params;
  std::uint64_t oracle_calls = 0;
};

EntropySolution solve_entropy_game(const EntropyGame& game, const EntropySolveOptions& opts = {});

// Outward-rounded exp of a rational interval.
RationalInterval exp_interval(const RationalInterval& iv);

// Original two-move model: Despot and Tribune states, actions, and a
// transition relation. People resolve every action.
struct AsarinGame {
  struct Transition {
    std::string from, action, to;
  };
  std::vector<std::string> despot, tribune;
  std::vector<Transition> transitions;
};

struct ConvertedAsarin {
  EntropyGame game;
  std::map<std::string, std::size_t> despot_index;  // original Despot id -> Despot index
};

// One original turn becomes two turns of the converted game.
ConvertedAsarin convert_asarin(const AsarinGame& src);

// max over original Despot states of the squared per-turn value.
RationalInterval asarin_value(const ConvertedAsarin& conv,
                              const std::vector<RationalInterval>& values);

}  // namespace mpg

#endif  // MPG_ENTROPY_GAME_HPP_
