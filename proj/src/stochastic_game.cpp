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

#include "mpg/stochastic_game.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "mpg/linalg.hpp"

namespace mpg {

namespace {

const char* owner_name(Owner o) {
  switch (o) {
    case Owner::Min: return "Min";
    case Owner::Max: return "Max";
    case Owner::Nature: return "Nature";
  }
  return "?";
}

Owner successor_owner(Owner o) {
  switch (o) {
    case Owner::Min: return Owner::Max;
    case Owner::Max: return Owner::Nature;
    case Owner::Nature: return Owner::Min;
  }
  return Owner::Min;
}

mpz_class z(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

mpz_class zpow(const mpz_class& b, std::size_t e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

StochasticGame::StochasticGame(std::int64_t denominator) : denominator_(denominator) {
  if (denominator < 1) throw GameFormatError("denominator must be >= 1");
}

std::size_t StochasticGame::add_state(Owner owner, const std::string& id) {
  if (index_.count(id)) throw GameFormatError("duplicate state id \"" + id + "\"");
  const std::size_t i = ids_[idx(owner)].size();
  ids_[idx(owner)].push_back(id);
  out_[idx(owner)].emplace_back();
  index_[id] = {owner, i};
  return i;
}

std::pair<Owner, std::size_t> StochasticGame::lookup(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw GameFormatError("unknown state id \"" + id + "\"");
  return it->second;
}

void StochasticGame::add_edge(const std::string& from, const std::string& to,
                              std::int64_t weight) {
  const auto [fo, fi] = lookup(from);
  const auto [to_owner, ti] = lookup(to);
  if (to_owner != successor_owner(fo)) {
    throw GameFormatError("edge \"" + from + "\" -> \"" + to + "\" goes from a " +
                          owner_name(fo) + " state to a " + owner_name(to_owner) +
                          " state; expected " + owner_name(successor_owner(fo)));
  }
  add_edge(fo, fi, ti, weight);
}

void StochasticGame::add_edge(Owner from_owner, std::size_t from, std::size_t to,
                              std::int64_t weight) {
  auto& edges = out_[idx(from_owner)].at(from);
  if (to >= ids_[idx(successor_owner(from_owner))].size()) {
    throw GameFormatError("edge target index out of range");
  }
  const std::string& fid = ids_[idx(from_owner)][from];
  const std::string& tid = ids_[idx(successor_owner(from_owner))][to];
  for (const auto& e : edges) {
    if (e.to == to) throw GameFormatError("duplicate edge \"" + fid + "\" -> \"" + tid + "\"");
  }
  if (from_owner == Owner::Nature && (weight < 0 || weight > denominator_)) {
    throw GameFormatError("edge \"" + fid + "\" -> \"" + tid +
                          "\": probability numerator must lie in [0, denominator]");
  }
  edges.push_back({to, weight});
}

void StochasticGame::validate() const {
  if (count(Owner::Min) == 0) throw GameFormatError("game has no Min state");
  for (Owner o : {Owner::Min, Owner::Max, Owner::Nature}) {
    for (std::size_t i = 0; i < count(o); ++i) {
      if (out(o, i).empty()) {
        throw GameFormatError(std::string(owner_name(o)) + " state \"" + id(o, i) +
                              "\" has no outgoing edge");
      }
    }
  }
  for (std::size_t k = 0; k < count(Owner::Nature); ++k) {
    std::int64_t sum = 0;
    for (const auto& e : out(Owner::Nature, k)) sum += e.weight;
    if (sum != denominator_) {
      throw GameFormatError("Nature state \"" + id(Owner::Nature, k) +
                            "\": probability numerators sum to " + std::to_string(sum) +
                            ", expected " + std::to_string(denominator_));
    }
  }
}

mpz_class GameStats::m_power() const {
  const std::size_t e = std::min(s, n == 0 ? 0 : n - 1);
  return zpow(z(m), e);
}

GameStats game_stats(const StochasticGame& game) {
  GameStats st;
  st.n = game.count(Owner::Min);
  st.m = game.denominator();
  for (std::size_t j = 0; j < st.n; ++j) {
    for (const auto& ji : game.out(Owner::Min, j)) {
      for (const auto& ik : game.out(Owner::Max, ji.to)) {
        const std::int64_t d = ji.weight - ik.weight;
        st.w = std::max(st.w, d < 0 ? -d : d);
      }
    }
  }
  for (std::size_t k = 0; k < game.count(Owner::Nature); ++k) {
    std::size_t positive = 0;
    for (const auto& e : game.out(Owner::Nature, k)) positive += e.weight > 0;
    if (positive >= 2) ++st.s;
  }
  st.mu = z(static_cast<std::int64_t>(st.n)) * st.m_power();
  return st;
}

namespace {

// Expected value at Nature state k; -inf if any positive-probability successor is -inf.
ExtendedScalar nature_value(const StochasticGame& game, std::size_t k, const ExtendedVec& x) {
  Rational sum(0);
  for (const auto& e : game.out(Owner::Nature, k)) {
    if (e.weight == 0) continue;
    if (x[e.to].is_neg_inf()) return ExtendedScalar::neg_inf();
    sum += Rational(e.weight) * x[e.to].value();
  }
  return ExtendedScalar(sum / Rational(game.denominator()));
}

void check_dim(const StochasticGame& game, const ExtendedVec& x) {
  if (x.size() != game.count(Owner::Min)) {
    throw std::invalid_argument("vector size " + std::to_string(x.size()) +
                                " does not match the " +
                                std::to_string(game.count(Owner::Min)) + " Min states");
  }
}

}  // namespace

ExtendedVec shapley_eval(const StochasticGame& game, const ExtendedVec& x) {
  check_dim(game, x);
  const std::size_t nk = game.count(Owner::Nature);
  std::vector<ExtendedScalar> nat(nk);
  for (std::size_t k = 0; k < nk; ++k) nat[k] = nature_value(game, k, x);
  const std::size_t ni = game.count(Owner::Max);
  std::vector<ExtendedScalar> mx(ni);
  for (std::size_t i = 0; i < ni; ++i) {
    ExtendedScalar best = ExtendedScalar::neg_inf();
    for (const auto& e : game.out(Owner::Max, i)) {
      best = max(best, nat[e.to] + ExtendedScalar(Rational(e.weight)));
    }
    mx[i] = best;
  }
  ExtendedVec y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    bool first = true;
    ExtendedScalar best;
    for (const auto& e : game.out(Owner::Min, j)) {
      ExtendedScalar v = mx[e.to] + ExtendedScalar(Rational(-e.weight));
      if (first || v < best) best = v;
      first = false;
    }
    y[j] = best;
  }
  return y;
}

ExtendedVec recession_eval(const StochasticGame& game, const ExtendedVec& x) {
  check_dim(game, x);
  ExtendedVec y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    bool first = true;
    ExtendedScalar best;
    for (const auto& ji : game.out(Owner::Min, j)) {
      ExtendedScalar m = ExtendedScalar::neg_inf();
      for (const auto& ik : game.out(Owner::Max, ji.to)) m = max(m, nature_value(game, ik.to, x));
      if (first || m < best) best = m;
      first = false;
    }
    y[j] = best;
  }
  return y;
}

StochasticRoundingOracle::StochasticRoundingOracle(GamePtr game, mpz_class q)
    : game_(std::move(game)), q_(std::move(q)) {
  if (q_ < 1) throw std::invalid_argument("rounding denominator must be >= 1");
  half_step_ = Rational(mpz_class(1), mpz_class(2 * q_));
  if (q_.fits_slong_p() && q_ < (mpz_class(1) << 40)) q_small_ = q_.get_si();
}

bool StochasticRoundingOracle::eval_fast(const ExtendedVec& x, ExtendedVec& out) const {
  using i128 = __int128;
  if (q_small_ == 0) return false;
  const StochasticGame& g = *game_;
  const std::size_t n = x.size();
  std::vector<i128> xs(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (x[l].is_neg_inf()) return false;
    const Rational& v = x[l].value();
    if (!v.is_small() || q_small_ % v.small_den() != 0) return false;
    xs[l] = static_cast<i128>(v.small_num()) * (q_small_ / v.small_den());
  }
  constexpr i128 kLimit = static_cast<i128>(1) << 100;
  const i128 mq = static_cast<i128>(g.denominator()) * q_small_;
  const std::size_t nk = g.count(Owner::Nature);
  std::vector<i128> nat(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    i128 s = 0;
    for (const auto& e : g.out(Owner::Nature, k)) s += static_cast<i128>(e.weight) * xs[e.to];
    if (s > kLimit || s < -kLimit) return false;
    nat[k] = s;
  }
  const std::size_t ni = g.count(Owner::Max);
  std::vector<i128> mx(ni);
  for (std::size_t i = 0; i < ni; ++i) {
    bool first = true;
    i128 best = 0;
    for (const auto& e : g.out(Owner::Max, i)) {
      const i128 v = nat[e.to] + static_cast<i128>(e.weight) * mq;
      if (first || v > best) best = v;
      first = false;
    }
    mx[i] = best;
  }
  const i128 m = g.denominator();
  out = ExtendedVec(n);
  for (std::size_t j = 0; j < n; ++j) {
    bool first = true;
    i128 best = 0;
    for (const auto& e : g.out(Owner::Min, j)) {
      const i128 v = mx[e.to] - static_cast<i128>(e.weight) * mq;
      if (first || v < best) best = v;
      first = false;
    }
    // Round best / m to the nearest integer, ties to even.
    i128 fl = best / m;
    i128 rem = best % m;
    if (rem < 0) {
      rem += m;
      --fl;
    }
    if (2 * rem > m || (2 * rem == m && (fl & 1) != 0)) ++fl;
    if (fl > INT64_MAX || fl < -INT64_MAX) return false;
    out[j] = ExtendedScalar(Rational(static_cast<std::int64_t>(fl), q_small_));
  }
  return true;
}

ExtendedVec StochasticRoundingOracle::eval(const ExtendedVec& x, const Rational& eps) const {
  if (eps < half_step_) {
    throw std::invalid_argument("rounding oracle with q = " + q_.get_str() +
                                " cannot meet eps = " + eps.str());
  }
  check_dim(*game_, x);
  ExtendedVec out;
  if (eval_fast(x, out)) return out;
  out = shapley_eval(*game_, x);
  const Rational q(q_);
  for (auto& e : out) {
    if (e.is_finite()) e = ExtendedScalar(Rational(round_half_even(e.value() * q), q_));
  }
  return out;
}

InequalityCheck StochasticRoundingOracle::check_inequality(
    const ExtendedVec& v, const Rational& lam, Direction dir,
    const std::vector<std::size_t>* only) const {
  return StochasticExactOracle(game_).check_inequality(v, lam, dir, only);
}

OraclePtr rounding_oracle(GamePtr game, const mpz_class& q) {
  return std::make_shared<StochasticRoundingOracle>(std::move(game), q);
}

Rational separation_bound(const GameStats& stats) {
  return Rational(mpz_class(1), mpz_class(stats.mu * stats.mu));
}

Rational bias_norm_bound(const GameStats& stats) {
  return Rational(mpz_class(8 * z(stats.w) * stats.mu));
}

mpz_class winner_iteration_bound(const GameStats& stats) {
  const mpz_class n = z(static_cast<std::int64_t>(stats.n));
  const mpz_class p = stats.m_power();
  return 8 * n * n * z(stats.w) * p * p;
}

mpz_class constant_value_call_bound(const GameStats& stats) {
  const mpz_class n = z(static_cast<std::int64_t>(stats.n));
  const mpz_class p = stats.m_power();
  return 128 * n * n * n * z(stats.w) * p * p * p;
}

mpz_class top_class_call_bound(const GameStats& stats) {
  const mpz_class n = z(static_cast<std::int64_t>(stats.n));
  const mpz_class p = stats.m_power();
  return 65 * n * n * n * n * z(stats.w) * p * p * p;
}

WinnerVerdict winner(const StochasticGame& game) {
  game.validate();
  const mpz_class cap = winner_iteration_bound(game_stats(game)) + 1;
  StochasticExactOracle oracle(std::make_shared<StochasticGame>(game));
  return value_iteration(oracle, cap.fits_ulong_p() ? cap.get_ui()
                                                    : std::numeric_limits<std::uint64_t>::max());
}

namespace {

// Stats with W raised to at least 1, so that R > 0.
GameStats solver_stats(const StochasticGame& game) {
  GameStats st = game_stats(game);
  st.w = std::max<std::int64_t>(st.w, 1);
  return st;
}

}  // namespace

StrategyPair extract_strategies(const StochasticGame& game, const ExtendedVec& sub_vec,
                                const ExtendedVec& super_vec) {
  check_dim(game, sub_vec);
  check_dim(game, super_vec);
  const std::size_t nk = game.count(Owner::Nature);
  std::vector<ExtendedScalar> nat_y(nk), nat_x(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    nat_y[k] = nature_value(game, k, super_vec);
    nat_x[k] = nature_value(game, k, sub_vec);
  }
  StrategyPair pair;
  pair.tau.resize(game.count(Owner::Max));
  for (std::size_t i = 0; i < pair.tau.size(); ++i) {
    bool first = true;
    ExtendedScalar best;
    for (const auto& e : game.out(Owner::Max, i)) {
      ExtendedScalar v = nat_x[e.to] + ExtendedScalar(Rational(e.weight));
      if (first || v > best || (v == best && e.to < pair.tau[i])) {
        best = v;
        pair.tau[i] = e.to;
      }
      first = false;
    }
  }
  pair.sigma.resize(game.count(Owner::Min));
  for (std::size_t j = 0; j < pair.sigma.size(); ++j) {
    bool first = true;
    ExtendedScalar best;
    for (const auto& ji : game.out(Owner::Min, j)) {
      ExtendedScalar m = ExtendedScalar::neg_inf();
      for (const auto& ik : game.out(Owner::Max, ji.to)) {
        m = max(m, nat_y[ik.to] + ExtendedScalar(Rational(ik.weight)));
      }
      ExtendedScalar v = m + ExtendedScalar(Rational(-ji.weight));
      if (first || v < best || (v == best && ji.to < pair.sigma[j])) {
        best = v;
        pair.sigma[j] = ji.to;
      }
      first = false;
    }
  }
  return pair;
}

StochasticValueSolution solve_constant_value(const StochasticGame& game) {
  game.validate();
  const GameStats st = solver_stats(game);
  const Rational delta = separation_bound(st);
  const Rational eps = delta / Rational(8);
  const mpz_class q = (Rational(1) / (Rational(2) * eps)).ceil();
  auto gp = std::make_shared<StochasticGame>(game);
  auto counter = std::make_shared<CountingOracle>(rounding_oracle(gp, q));
  // The first loop ends within ceil(8R / delta) iterations when the value is constant.
  const mpz_class cap = (Rational(8) * bias_norm_bound(st) / delta).ceil() + 1;
  ConstantValueResult acm;
  try {
    acm = approximate_constant_mean_payoff(
        *counter, delta,
        cap.fits_ulong_p() ? cap.get_ui() : std::numeric_limits<std::uint64_t>::max());
  } catch (const IterationLimit&) {
    throw PreconditionViolated("value depends on the initial state");
  }
  const RationalSearchResult rs = rational_in_interval(acm.interval, st.mu);
  if (rs.status != SearchStatus::Found) {
    throw PreconditionViolated(rs.status == SearchStatus::NotUnique
                                   ? "value reconstruction not unique"
                                   : "no rational of admissible denominator in the interval");
  }
  StochasticValueSolution sol;
  sol.value = rs.value;
  sol.interval = acm.interval;
  sol.strategies = extract_strategies(game, acm.sub.vec, acm.sup.vec);
  sol.sub = std::move(acm.sub);
  sol.sup = std::move(acm.sup);
  sol.oracle_calls = counter->calls();
  return sol;
}

StochasticTopClass solve_top_class(const StochasticGame& game) {
  game.validate();
  const GameStats st = solver_stats(game);
  const Rational delta = separation_bound(st);
  const mpz_class q = (Rational(1) / (Rational(2) * (delta / Rational(8)))).ceil();
  auto gp = std::make_shared<StochasticGame>(game);
  auto counter = std::make_shared<CountingOracle>(rounding_oracle(gp, q));
  TopClassResult tc = top_class(counter, SepParams(delta, bias_norm_bound(st)));
  StochasticTopClass res;
  res.top = std::move(tc.top);
  res.chain = std::move(tc.chain);
  res.oracle_calls = counter->calls();
  return res;
}

namespace {

StochasticGame copy_states(const StochasticGame& game) {
  StochasticGame g(game.denominator());
  for (Owner o : {Owner::Min, Owner::Max, Owner::Nature}) {
    for (const auto& id : game.ids(o)) g.add_state(o, id);
  }
  return g;
}

}  // namespace

StochasticGame induced_subgame(const StochasticGame& game, const std::vector<std::size_t>& states) {
  std::vector<char> in_d(game.count(Owner::Min), 0);
  for (std::size_t j : states) in_d.at(j) = 1;
  std::vector<char> keep_nat(game.count(Owner::Nature), 1);
  for (std::size_t k = 0; k < keep_nat.size(); ++k) {
    for (const auto& e : game.out(Owner::Nature, k)) {
      if (e.weight > 0 && !in_d[e.to]) keep_nat[k] = 0;
    }
  }
  std::vector<char> keep_max(game.count(Owner::Max), 0);
  for (std::size_t j : states) {
    for (const auto& e : game.out(Owner::Min, j)) keep_max[e.to] = 1;
  }
  StochasticGame g(game.denominator());
  std::vector<std::size_t> min_map(in_d.size()), max_map(keep_max.size()), nat_map(keep_nat.size());
  for (std::size_t j = 0; j < in_d.size(); ++j) {
    if (in_d[j]) min_map[j] = g.add_state(Owner::Min, game.id(Owner::Min, j));
  }
  for (std::size_t i = 0; i < keep_max.size(); ++i) {
    if (keep_max[i]) max_map[i] = g.add_state(Owner::Max, game.id(Owner::Max, i));
  }
  for (std::size_t k = 0; k < keep_nat.size(); ++k) {
    if (keep_nat[k]) nat_map[k] = g.add_state(Owner::Nature, game.id(Owner::Nature, k));
  }
  for (std::size_t j = 0; j < in_d.size(); ++j) {
    if (!in_d[j]) continue;
    for (const auto& e : game.out(Owner::Min, j)) g.add_edge(Owner::Min, min_map[j], max_map[e.to], e.weight);
  }
  for (std::size_t i = 0; i < keep_max.size(); ++i) {
    if (!keep_max[i]) continue;
    for (const auto& e : game.out(Owner::Max, i)) {
      if (keep_nat[e.to]) g.add_edge(Owner::Max, max_map[i], nat_map[e.to], e.weight);
    }
  }
  for (std::size_t k = 0; k < keep_nat.size(); ++k) {
    if (!keep_nat[k]) continue;
    for (const auto& e : game.out(Owner::Nature, k)) {
      if (in_d[e.to]) g.add_edge(Owner::Nature, nat_map[k], min_map[e.to], e.weight);
    }
  }
  g.validate();
  return g;
}

StochasticGame freeze_min(const StochasticGame& game, const std::vector<std::size_t>& sigma) {
  StochasticGame g = copy_states(game);
  for (std::size_t j = 0; j < game.count(Owner::Min); ++j) {
    bool found = false;
    for (const auto& e : game.out(Owner::Min, j)) {
      if (e.to == sigma.at(j)) {
        g.add_edge(Owner::Min, j, e.to, e.weight);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("sigma is not edge-consistent");
  }
  for (std::size_t i = 0; i < game.count(Owner::Max); ++i) {
    for (const auto& e : game.out(Owner::Max, i)) g.add_edge(Owner::Max, i, e.to, e.weight);
  }
  for (std::size_t k = 0; k < game.count(Owner::Nature); ++k) {
    for (const auto& e : game.out(Owner::Nature, k)) g.add_edge(Owner::Nature, k, e.to, e.weight);
  }
  return g;
}

StochasticGame freeze_max(const StochasticGame& game, const std::vector<std::size_t>& tau) {
  StochasticGame g = copy_states(game);
  for (std::size_t j = 0; j < game.count(Owner::Min); ++j) {
    for (const auto& e : game.out(Owner::Min, j)) g.add_edge(Owner::Min, j, e.to, e.weight);
  }
  for (std::size_t i = 0; i < game.count(Owner::Max); ++i) {
    bool found = false;
    for (const auto& e : game.out(Owner::Max, i)) {
      if (e.to == tau.at(i)) {
        g.add_edge(Owner::Max, i, e.to, e.weight);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("tau is not edge-consistent");
  }
  for (std::size_t k = 0; k < game.count(Owner::Nature); ++k) {
    for (const auto& e : game.out(Owner::Nature, k)) g.add_edge(Owner::Nature, k, e.to, e.weight);
  }
  return g;
}

std::vector<Rational> pair_gains(const StochasticGame& game, const StrategyPair& pair) {
  const std::size_t n = game.count(Owner::Min);
  RationalMatrix q(n, std::vector<Rational>(n));
  std::vector<Rational> reward(n);
  std::vector<std::vector<std::size_t>> adj(n);
  const Rational m(game.denominator());
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = pair.sigma.at(j);
    const std::size_t k = pair.tau.at(i);
    std::int64_t a = 0, b = 0;
    bool ok_a = false, ok_b = false;
    for (const auto& e : game.out(Owner::Min, j)) {
      if (e.to == i) a = e.weight, ok_a = true;
    }
    for (const auto& e : game.out(Owner::Max, i)) {
      if (e.to == k) b = e.weight, ok_b = true;
    }
    if (!ok_a || !ok_b) throw std::invalid_argument("strategy pair is not edge-consistent");
    reward[j] = Rational(b - a);
    for (const auto& e : game.out(Owner::Nature, k)) {
      if (e.weight == 0) continue;
      q[j][e.to] = Rational(e.weight) / m;
      adj[j].push_back(e.to);
    }
  }
  const auto comps = strongly_connected_components(adj);
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) comp_of[v] = static_cast<int>(c);
  }
  std::vector<Rational> gain(n);
  std::vector<char> recurrent(n, 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    bool closed = true;
    for (std::size_t v : comp) {
      for (std::size_t w : adj[v]) closed = closed && comp_of[w] == static_cast<int>(c);
    }
    if (!closed) continue;
    // Stationary distribution: pi (Q_C - I) = 0, sum pi = 1.
    const std::size_t sz = comp.size();
    RationalMatrix a(sz, std::vector<Rational>(sz));
    std::vector<Rational> rhs(sz);
    for (std::size_t r = 0; r + 1 < sz; ++r) {
      for (std::size_t cc = 0; cc < sz; ++cc) {
        a[r][cc] = q[comp[cc]][comp[r]] - Rational(cc == r ? 1 : 0);
      }
    }
    for (std::size_t cc = 0; cc < sz; ++cc) a[sz - 1][cc] = Rational(1);
    rhs[sz - 1] = Rational(1);
    const auto pi = solve_linear(std::move(a), std::move(rhs));
    if (!pi) throw std::logic_error("singular stationary system");
    Rational g(0);
    for (std::size_t cc = 0; cc < sz; ++cc) g += (*pi)[cc] * reward[comp[cc]];
    for (std::size_t v : comp) {
      gain[v] = g;
      recurrent[v] = 1;
    }
  }
  std::vector<std::size_t> transient;
  for (std::size_t v = 0; v < n; ++v) {
    if (!recurrent[v]) transient.push_back(v);
  }
  if (!transient.empty()) {
    const std::size_t t = transient.size();
    RationalMatrix a(t, std::vector<Rational>(t));
    std::vector<Rational> rhs(t);
    for (std::size_t r = 0; r < t; ++r) {
      const std::size_t v = transient[r];
      for (std::size_t c = 0; c < t; ++c) {
        a[r][c] = Rational(r == c ? 1 : 0) - q[v][transient[c]];
      }
      for (std::size_t w = 0; w < n; ++w) {
        if (recurrent[w] && !q[v][w].is_zero()) rhs[r] += q[v][w] * gain[w];
      }
    }
    const auto g = solve_linear(std::move(a), std::move(rhs));
    if (!g) throw std::logic_error("singular absorption system");
    for (std::size_t r = 0; r < t; ++r) gain[transient[r]] = (*g)[r];
  }
  return gain;
}

std::uint64_t strategy_pair_count(const StochasticGame& game) {
  constexpr std::uint64_t kCap = std::numeric_limits<std::uint64_t>::max() / 64;
  std::uint64_t total = 1;
  for (Owner o : {Owner::Min, Owner::Max}) {
    for (std::size_t i = 0; i < game.count(o); ++i) {
      total *= game.out(o, i).size();
      if (total > kCap) return kCap;
    }
  }
  return total;
}

namespace {

// Decodes the mixed-radix index `code` into one choice per state.
std::vector<std::size_t> decode(const StochasticGame& game, Owner o, std::uint64_t code) {
  std::vector<std::size_t> choice(game.count(o));
  for (std::size_t i = 0; i < choice.size(); ++i) {
    const auto& out = game.out(o, i);
    choice[i] = out[code % out.size()].to;
    code /= out.size();
  }
  return choice;
}

std::uint64_t radix_count(const StochasticGame& game, Owner o) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < game.count(o); ++i) c *= game.out(o, i).size();
  return c;
}

}  // namespace

BruteForceValues brute_force_values(const StochasticGame& game, std::uint64_t budget,
                                    unsigned jobs, bool keep_pairs) {
  game.validate();
  const std::uint64_t total = strategy_pair_count(game);
  if (total > budget) {
    throw BudgetExceeded("strategy pair count " + std::to_string(total) + " exceeds budget " +
                         std::to_string(budget));
  }
  const std::uint64_t n_sigma = radix_count(game, Owner::Min);
  const std::uint64_t n_tau = radix_count(game, Owner::Max);
  const std::size_t n = game.count(Owner::Min);

  std::vector<std::vector<Rational>> best_response(n_sigma);  // max over tau, per sigma
  std::vector<std::vector<PairGains>> tables(n_sigma);
  auto work = [&](std::uint64_t s) {
    const auto sigma = decode(game, Owner::Min, s);
    std::vector<Rational> br;
    for (std::uint64_t t = 0; t < n_tau; ++t) {
      StrategyPair pair{sigma, decode(game, Owner::Max, t)};
      std::vector<Rational> g = pair_gains(game, pair);
      if (br.empty()) {
        br = g;
      } else {
        for (std::size_t j = 0; j < n; ++j) br[j] = max(br[j], g[j]);
      }
      if (keep_pairs) tables[s].push_back({std::move(pair), std::move(g)});
    }
    best_response[s] = std::move(br);
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n_sigma == 1) {
    for (std::uint64_t s = 0; s < n_sigma; ++s) work(s);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t s = next++; s < n_sigma; s = next++) work(s);
      });
    }
    for (auto& th : pool) th.join();
  }
  BruteForceValues res;
  res.chi = best_response[0];
  for (std::uint64_t s = 1; s < n_sigma; ++s) {
    for (std::size_t j = 0; j < n; ++j) res.chi[j] = min(res.chi[j], best_response[s][j]);
  }
  if (keep_pairs) {
    for (auto& t : tables) {
      for (auto& p : t) res.pairs.push_back(std::move(p));
    }
  }
  return res;
}

NormalizedGame normalize_turn_based(const TurnBasedGame& src) {
  NormalizedGame res{StochasticGame(src.denominator), {}, 3};
  StochasticGame& g = res.game;
  std::map<std::string, Owner> owner;
  for (const auto& s : src.states) {
    if (owner.count(s.id)) throw GameFormatError("duplicate state id \"" + s.id + "\"");
    owner[s.id] = s.owner;
    res.entry[s.id] = g.add_state(Owner::Min, s.id);
  }
  std::map<std::string, std::vector<const TurnBasedGame::Edge*>> out;
  for (const auto& e : src.edges) {
    if (!owner.count(e.from)) throw GameFormatError("edge from unknown state \"" + e.from + "\"");
    if (!owner.count(e.to)) throw GameFormatError("edge to unknown state \"" + e.to + "\"");
    out[e.from].push_back(&e);
  }
  for (const auto& s : src.states) {
    const auto& edges = out[s.id];
    if (edges.empty()) throw GameFormatError("state \"" + s.id + "\" has no outgoing edge");
    switch (s.owner) {
      case Owner::Min:
        for (const auto* e : edges) {
          const std::string tag = s.id + "->" + e->to;
          g.add_state(Owner::Max, tag + "/max");
          g.add_state(Owner::Nature, tag + "/nat");
          g.add_edge(s.id, tag + "/max", -e->weight);
          g.add_edge(tag + "/max", tag + "/nat", 0);
          g.add_edge(tag + "/nat", e->to, src.denominator);
        }
        break;
      case Owner::Max:
        g.add_state(Owner::Max, s.id + "/max");
        g.add_edge(s.id, s.id + "/max", 0);
        for (const auto* e : edges) {
          const std::string tag = s.id + "->" + e->to;
          g.add_state(Owner::Nature, tag + "/nat");
          g.add_edge(s.id + "/max", tag + "/nat", e->weight);
          g.add_edge(tag + "/nat", e->to, src.denominator);
        }
        break;
      case Owner::Nature:
        g.add_state(Owner::Max, s.id + "/max");
        g.add_state(Owner::Nature, s.id + "/nat");
        g.add_edge(s.id, s.id + "/max", 0);
        g.add_edge(s.id + "/max", s.id + "/nat", 0);
        for (const auto* e : edges) g.add_edge(s.id + "/nat", e->to, e->weight);
        break;
    }
  }
  g.validate();
  return res;
}

}  // namespace mpg
