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

#include "mpg/entropy_game.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

#include "mpg/mpfr_util.hpp"

namespace mpg {

namespace {

const char* role_name(Role r) {
  switch (r) {
    case Role::Despot: return "Despot";
    case Role::Tribune: return "Tribune";
    case Role::People: return "People";
  }
  return "?";
}

Role next_role(Role r) {
  switch (r) {
    case Role::Despot: return Role::Tribune;
    case Role::Tribune: return Role::People;
    case Role::People: return Role::Despot;
  }
  return Role::Despot;
}

// Rounds q to `bits` significant bits in direction rnd.
Rational round_bits(const Rational& q, long bits, mpfr_rnd_t rnd) {
  Mpfr t(bits);
  set_rational(t, q, rnd);
  return to_rational(t);
}

long bit_length(const mpz_class& v) {
  return v == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

// Smallest k >= 0 with 2^-k <= eps.
long grid_exponent(const Rational& eps) {
  const mpz_class c = (Rational(1) / eps).ceil();
  long k = bit_length(c);
  while (k > 0 && (mpz_class(1) << (k - 1)) >= c) --k;
  return k;
}

Rational snap(const Rational& v, long k) {
  const mpz_class scale = mpz_class(1) << k;
  return Rational(round_half_even(v * Rational(scale)), scale);
}

struct Bracket {
  bool neg_inf = false;
  Rational lo, hi;
  bool exact() const { return !neg_inf && lo == hi; }
  Rational width() const { return neg_inf ? Rational(0) : hi - lo; }
};

// log sum m_l exp(x_l) over the successors of People state p.
Bracket lse_bracket(const EntropyGame& g, std::size_t p, const ExtendedVec& x, long prec) {
  Bracket b;
  const Rational* top = nullptr;
  std::size_t finite = 0;
  std::int64_t only_m = 0;
  for (const auto& e : g.out(Role::People, p)) {
    if (x[e.to].is_neg_inf()) continue;
    ++finite;
    only_m = e.weight;
    const Rational& v = x[e.to].value();
    if (!top || v > *top) top = &v;
  }
  if (finite == 0) {
    b.neg_inf = true;
    return b;
  }
  if (finite == 1 && only_m == 1) {
    b.lo = b.hi = *top;
    return b;
  }
  Mpfr slo(prec), shi(prec), t(prec);
  mpfr_set_zero(slo.get(), 1);
  mpfr_set_zero(shi.get(), 1);
  for (const auto& e : g.out(Role::People, p)) {
    if (x[e.to].is_neg_inf()) continue;
    const Rational d = x[e.to].value() - *top;
    set_rational(t, d, MPFR_RNDD);
    mpfr_exp(t.get(), t.get(), MPFR_RNDD);
    mpfr_mul_si(t.get(), t.get(), static_cast<long>(e.weight), MPFR_RNDD);
    mpfr_add(slo.get(), slo.get(), t.get(), MPFR_RNDD);
    set_rational(t, d, MPFR_RNDU);
    mpfr_exp(t.get(), t.get(), MPFR_RNDU);
    mpfr_mul_si(t.get(), t.get(), static_cast<long>(e.weight), MPFR_RNDU);
    mpfr_add(shi.get(), shi.get(), t.get(), MPFR_RNDU);
  }
  mpfr_log(slo.get(), slo.get(), MPFR_RNDD);
  mpfr_log(shi.get(), shi.get(), MPFR_RNDU);
  b.lo = *top + to_rational(slo);
  b.hi = *top + to_rational(shi);
  return b;
}

// Working precision for an absolute accuracy of 2^-k given inputs x.
long start_precision(const ExtendedVec& x, long k) {
  long mag = 0;
  for (const auto& v : x) {
    if (v.is_finite()) mag = std::max(mag, bit_length(abs(v.value().floor())) + 1);
  }
  return std::max<long>(64, k + 2 * mag + 16);
}

Bracket people_bracket(const EntropyGame& g, std::size_t p, const ExtendedVec& x,
                       const Rational& width, long prec) {
  while (true) {
    Bracket b = lse_bracket(g, p, x, prec);
    if (b.neg_inf || b.width() <= width) return b;
    prec *= 2;
  }
}

Bracket max_bracket(const Bracket& a, const Bracket& b) {
  if (a.neg_inf) return b;
  if (b.neg_inf) return a;
  return {false, max(a.lo, b.lo), max(a.hi, b.hi)};
}

Bracket min_bracket(const Bracket& a, const Bracket& b) {
  if (a.neg_inf) return a;
  if (b.neg_inf) return b;
  return {false, min(a.lo, b.lo), min(a.hi, b.hi)};
}

Bracket despot_bracket(const EntropyGame& g, std::size_t d, const std::vector<Bracket>& q) {
  bool first = true;
  Bracket res;
  for (const auto& dt : g.out(Role::Despot, d)) {
    Bracket tb;
    tb.neg_inf = true;
    for (const auto& tp : g.out(Role::Tribune, dt.to)) tb = max_bracket(tb, q[tp.to]);
    res = first ? tb : min_bracket(res, tb);
    first = false;
  }
  return res;
}

void check_despot_dim(const EntropyGame& g, const ExtendedVec& x) {
  if (x.size() != g.count(Role::Despot)) {
    throw std::invalid_argument("vector size " + std::to_string(x.size()) +
                                " does not match the " +
                                std::to_string(g.count(Role::Despot)) + " Despot states");
  }
}

}  // namespace

std::size_t EntropyGame::add_state(Role role, const std::string& id) {
  if (index_.count(id)) throw GameFormatError("duplicate state id \"" + id + "\"");
  const std::size_t i = ids_[idx(role)].size();
  ids_[idx(role)].push_back(id);
  out_[idx(role)].emplace_back();
  index_[id] = {role, i};
  return i;
}

std::pair<Role, std::size_t> EntropyGame::lookup(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw GameFormatError("unknown state id \"" + id + "\"");
  return it->second;
}

void EntropyGame::add_edge(const std::string& from, const std::string& to,
                           std::int64_t multiplicity) {
  const auto [fr, fi] = lookup(from);
  const auto [tr, ti] = lookup(to);
  if (tr != next_role(fr)) {
    throw GameFormatError("edge \"" + from + "\" -> \"" + to + "\" goes from a " +
                          role_name(fr) + " state to a " + role_name(tr) + " state; expected " +
                          role_name(next_role(fr)));
  }
  if (fr != Role::People && multiplicity != 1) {
    throw GameFormatError("edge \"" + from + "\" -> \"" + to +
                          "\": only People edges carry a multiplicity");
  }
  add_edge(fr, fi, ti, multiplicity);
}

void EntropyGame::add_edge(Role from_role, std::size_t from, std::size_t to,
                           std::int64_t multiplicity) {
  auto& edges = out_[idx(from_role)].at(from);
  if (to >= ids_[idx(next_role(from_role))].size()) {
    throw GameFormatError("edge target index out of range");
  }
  const std::string& fid = ids_[idx(from_role)][from];
  const std::string& tid = ids_[idx(next_role(from_role))][to];
  for (const auto& e : edges) {
    if (e.to == to) throw GameFormatError("duplicate edge \"" + fid + "\" -> \"" + tid + "\"");
  }
  if (multiplicity < 1) {
    throw GameFormatError("edge \"" + fid + "\" -> \"" + tid + "\": multiplicity must be >= 1");
  }
  edges.push_back({to, multiplicity});
}

void EntropyGame::validate() const {
  if (count(Role::Despot) == 0) throw GameFormatError("game has no Despot state");
  for (Role r : {Role::Despot, Role::Tribune, Role::People}) {
    for (std::size_t i = 0; i < count(r); ++i) {
      if (out(r, i).empty()) {
        throw GameFormatError(std::string(role_name(r)) + " state \"" + id(r, i) +
                              "\" has no outgoing edge");
      }
    }
  }
}

std::int64_t EntropyGame::max_multiplicity() const {
  std::int64_t w = 1;
  for (const auto& edges : out_[idx(Role::People)]) {
    for (const auto& e : edges) w = std::max(w, e.weight);
  }
  return w;
}

std::vector<Rational> multiplicative_eval(const EntropyGame& game, const std::vector<Rational>& x) {
  if (x.size() != game.count(Role::Despot)) throw std::invalid_argument("vector size mismatch");
  for (const auto& v : x) {
    if (v.sign() <= 0) throw std::invalid_argument("multiplicative_eval needs a positive vector");
  }
  std::vector<Rational> q(game.count(Role::People));
  for (std::size_t p = 0; p < q.size(); ++p) {
    for (const auto& e : game.out(Role::People, p)) q[p] += Rational(e.weight) * x[e.to];
  }
  std::vector<Rational> y(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    bool first = true;
    for (const auto& dt : game.out(Role::Despot, d)) {
      Rational best = q[game.out(Role::Tribune, dt.to).front().to];
      for (const auto& tp : game.out(Role::Tribune, dt.to)) best = max(best, q[tp.to]);
      y[d] = first ? best : min(y[d], best);
      first = false;
    }
  }
  return y;
}

ExtendedVec recession_eval(const EntropyGame& game, const ExtendedVec& x) {
  check_despot_dim(game, x);
  std::vector<ExtendedScalar> q(game.count(Role::People), ExtendedScalar::neg_inf());
  for (std::size_t p = 0; p < q.size(); ++p) {
    for (const auto& e : game.out(Role::People, p)) q[p] = max(q[p], x[e.to]);
  }
  ExtendedVec y(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    bool first = true;
    for (const auto& dt : game.out(Role::Despot, d)) {
      ExtendedScalar best = ExtendedScalar::neg_inf();
      for (const auto& tp : game.out(Role::Tribune, dt.to)) best = max(best, q[tp.to]);
      y[d] = first ? best : min(y[d], best);
      first = false;
    }
  }
  return y;
}

ExtendedVec EntropyLogOracle::people_scores(const ExtendedVec& x, const Rational& eps) const {
  check_despot_dim(*game_, x);
  if (eps.sign() <= 0) throw std::invalid_argument("log-domain oracle needs eps > 0");
  const long k = grid_exponent(eps);
  const long prec = start_precision(x, k);
  ExtendedVec out(game_->count(Role::People));
  for (std::size_t p = 0; p < out.size(); ++p) {
    const Bracket b = people_bracket(*game_, p, x, eps, prec);
    if (b.neg_inf) {
      out[p] = ExtendedScalar::neg_inf();
    } else if (b.exact()) {
      out[p] = b.lo;
    } else {
      out[p] = snap((b.lo + b.hi) / Rational(2), k);
    }
  }
  return out;
}

ExtendedVec EntropyLogOracle::eval(const ExtendedVec& x, const Rational& eps) const {
  check_despot_dim(*game_, x);
  if (eps.sign() <= 0) throw std::invalid_argument("log-domain oracle needs eps > 0");
  const long k = grid_exponent(eps);
  const long prec = start_precision(x, k);
  // Brackets of width <= eps; midpoint error eps/2, grid error <= eps/2.
  std::vector<Bracket> q(game_->count(Role::People));
  for (std::size_t p = 0; p < q.size(); ++p) q[p] = people_bracket(*game_, p, x, eps, prec);
  ExtendedVec out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    const Bracket b = despot_bracket(*game_, d, q);
    if (b.neg_inf) {
      out[d] = ExtendedScalar::neg_inf();
    } else if (b.exact()) {
      out[d] = b.lo;
    } else {
      out[d] = snap((b.lo + b.hi) / Rational(2), k);
    }
  }
  return out;
}

InequalityCheck EntropyLogOracle::check_inequality(const ExtendedVec& v, const Rational& lam,
                                                   Direction dir,
                                                   const std::vector<std::size_t>* only) const {
  check_despot_dim(*game_, v);
  std::vector<std::size_t> pending;
  if (only) {
    pending = *only;
  } else {
    pending.resize(v.size());
    std::iota(pending.begin(), pending.end(), 0);
  }
  InequalityCheck res;
  auto fail = [&](std::size_t j, bool undecided) {
    if (res.ok) {
      res.ok = false;
      res.violated = j;
      res.undecided = undecided;
    }
  };
  for (long prec = 64; !pending.empty(); prec *= 2) {
    std::vector<Bracket> q(game_->count(Role::People));
    for (std::size_t p = 0; p < q.size(); ++p) q[p] = lse_bracket(*game_, p, v, prec);
    std::vector<std::size_t> next;
    for (std::size_t j : pending) {
      const ExtendedScalar lhs = v[j] + ExtendedScalar(lam);
      const Bracket f = despot_bracket(*game_, j, q);
      if (f.neg_inf || lhs.is_neg_inf()) {
        const bool good = dir == Direction::Sub ? lhs.is_neg_inf() : f.neg_inf;
        if (!good) fail(j, false);
        continue;
      }
      const Rational& l = lhs.value();
      if (dir == Direction::Sub) {
        if (l <= f.lo) continue;
        if (l > f.hi) {
          fail(j, false);
          continue;
        }
      } else {
        if (l >= f.hi) continue;
        if (l < f.lo) {
          fail(j, false);
          continue;
        }
      }
      if (f.exact()) {
        fail(j, false);
        continue;
      }
      next.push_back(j);
    }
    pending = std::move(next);
    if (!pending.empty() && prec >= kMaxCheckPrecision) {
      fail(pending.front(), true);
      break;
    }
  }
  return res;
}

OraclePtr log_domain_oracle(EntropyGamePtr game) {
  return std::make_shared<EntropyLogOracle>(std::move(game));
}

namespace {

void check_pair(const EntropyGame& game, const StrategyPair& pair) {
  if (pair.sigma.size() != game.count(Role::Despot) ||
      pair.tau.size() != game.count(Role::Tribune)) {
    throw std::invalid_argument("strategy pair has the wrong size");
  }
  auto has = [](const std::vector<WeightedEdge>& out, std::size_t to) {
    return std::any_of(out.begin(), out.end(), [&](const WeightedEdge& e) { return e.to == to; });
  };
  for (std::size_t d = 0; d < pair.sigma.size(); ++d) {
    if (!has(game.out(Role::Despot, d), pair.sigma[d])) {
      throw std::invalid_argument("sigma is not edge-consistent at \"" +
                                  game.id(Role::Despot, d) + "\"");
    }
  }
  for (std::size_t t = 0; t < pair.tau.size(); ++t) {
    if (!has(game.out(Role::Tribune, t), pair.tau[t])) {
      throw std::invalid_argument("tau is not edge-consistent at \"" +
                                  game.id(Role::Tribune, t) + "\"");
    }
  }
}

}  // namespace

IntMatrix ambiguity_matrix(const EntropyGame& game, const StrategyPair& pair) {
  check_pair(game, pair);
  const std::size_t n = game.count(Role::Despot);
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = pair.tau[pair.sigma[k]];
    for (const auto& e : game.out(Role::People, p)) m[k][e.to] = e.weight;
  }
  return m;
}

namespace {

void collatz_wielandt(const IntMatrix& a, const std::vector<Rational>& x, Rational& lo,
                      Rational& hi) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j] != 0) s += Rational(a[i][j]) * x[j];
    }
    const Rational r = s / x[i];
    if (i == 0 || r < lo) lo = r;
    if (i == 0 || r > hi) hi = r;
  }
}

}  // namespace

RationalInterval perron_root(const IntMatrix& a, const Rational& tol) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("perron_root: matrix is not square");
  }
  if (tol.sign() <= 0) throw std::invalid_argument("perron_root: tol must be positive");
  if (!is_irreducible(a)) throw std::invalid_argument("perron_root: matrix is reducible or zero");
  if (n == 1) return {Rational(a[0][0]), Rational(a[0][0])};

  // Power iteration on A + I in doubles for a starting vector.
  std::vector<double> xd(n, 1.0), yd(n);
  for (int it = 0; it < 500; ++it) {
    double top = 0;
    for (std::size_t i = 0; i < n; ++i) {
      yd[i] = xd[i];
      for (std::size_t j = 0; j < n; ++j) yd[i] += static_cast<double>(a[i][j]) * xd[j];
      top = std::max(top, yd[i]);
    }
    for (std::size_t i = 0; i < n; ++i) xd[i] = std::max(yd[i] / top, 1e-300);
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Rational(mpq_class(xd[i]));
  Rational lo, hi;
  collatz_wielandt(a, x, lo, hi);

  std::int64_t max_row = 0;
  for (const auto& row : a) max_row = std::max(max_row, std::accumulate(row.begin(), row.end(), std::int64_t{0}));
  long bits = 64 + bit_length((Rational(1) / tol).ceil()) + 2 * bit_length(mpz_class(static_cast<long>(max_row)));
  const Rational target = tol / Rational(2);

  // Shifted inverse iteration: for sigma > rho, (sigma I - A)^-1 is positive,
  // so iterates stay positive and every iterate gives a valid bracket.
  for (int it = 0; hi - lo > target; ++it) {
    if (it >= 200) throw std::runtime_error("perron_root: no convergence");
    const Rational gap = hi - lo;
    const Rational sigma = round_bits(hi + gap, bits, MPFR_RNDU);
    RationalMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(-a[i][j]);
      m[i][i] += sigma;
    }
    auto y = solve_linear(std::move(m), x);
    if (!y) throw std::logic_error("perron_root: singular shifted system");
    for (std::size_t i = 0; i < n; ++i) x[i] = round_bits((*y)[i], bits, MPFR_RNDN);
    Rational nlo, nhi;
    collatz_wielandt(a, x, nlo, nhi);
    lo = max(lo, nlo);
    hi = min(hi, nhi);
    if (hi - lo > gap / Rational(2)) bits += 64;
  }
  // Outward rounding onto a dyadic grid of step <= tol/4.
  const long k = grid_exponent(tol / Rational(4));
  const mpz_class scale = mpz_class(1) << k;
  return {Rational((lo * Rational(scale)).floor(), scale),
          Rational((hi * Rational(scale)).ceil(), scale)};
}

std::vector<RationalInterval> pair_value(const EntropyGame& game, const StrategyPair& pair,
                                         const Rational& tol) {
  const IntMatrix m = ambiguity_matrix(game, pair);
  const std::size_t n = m.size();
  const auto adj = support_graph(m);
  const auto comps = strongly_connected_components(adj);
  std::vector<std::size_t> comp_of(n);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) comp_of[v] = c;
  }
  // Components come sinks first, so successors are final when visited.
  std::vector<RationalInterval> reach(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    RationalInterval own(Rational(0), Rational(0));
    if (comp.size() > 1 || m[comp[0]][comp[0]] > 0) {
      IntMatrix sub(comp.size(), std::vector<std::int64_t>(comp.size()));
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (std::size_t j = 0; j < comp.size(); ++j) sub[i][j] = m[comp[i]][comp[j]];
      }
      own = perron_root(sub, tol);
    }
    for (std::size_t v : comp) {
      for (std::size_t w : adj[v]) {
        const std::size_t cw = comp_of[w];
        if (cw == c) continue;
        own = RationalInterval(max(own.lo, reach[cw].lo), max(own.hi, reach[cw].hi));
      }
    }
    reach[c] = own;
  }
  std::vector<RationalInterval> out(n);
  for (std::size_t d = 0; d < n; ++d) out[d] = reach[comp_of[d]];
  return out;
}

namespace {

constexpr std::uint64_t kCountCap = std::numeric_limits<std::uint64_t>::max() / 64;

std::uint64_t radix(const EntropyGame& game, Role r) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < game.count(r); ++i) {
    c *= game.out(r, i).size();
    if (c > kCountCap) return kCountCap;
  }
  return c;
}

std::vector<std::size_t> decode(const EntropyGame& game, Role r, std::uint64_t code) {
  std::vector<std::size_t> choice(game.count(r));
  for (std::size_t i = 0; i < choice.size(); ++i) {
    const auto& out = game.out(r, i);
    choice[i] = out[code % out.size()].to;
    code /= out.size();
  }
  return choice;
}

}  // namespace

std::uint64_t entropy_pair_count(const EntropyGame& game) {
  const std::uint64_t a = radix(game, Role::Despot), b = radix(game, Role::Tribune);
  if (a >= kCountCap || b >= kCountCap || a > kCountCap / b) return kCountCap;
  return a * b;
}

void for_each_entropy_pair(const EntropyGame& game, std::uint64_t budget,
                           const std::function<void(const StrategyPair&)>& fn) {
  const std::uint64_t total = entropy_pair_count(game);
  if (total > budget) {
    throw BudgetExceeded("strategy pair count " + std::to_string(total) + " exceeds budget " +
                         std::to_string(budget));
  }
  const std::uint64_t ns = radix(game, Role::Despot), nt = radix(game, Role::Tribune);
  for (std::uint64_t s = 0; s < ns; ++s) {
    const auto sigma = decode(game, Role::Despot, s);
    for (std::uint64_t t = 0; t < nt; ++t) fn(StrategyPair{sigma, decode(game, Role::Tribune, t)});
  }
}

Rational e_upper() { return Rational(27182818285LL, 10000000000LL); }

Rational separation_nu(std::size_t n, std::size_t r, std::int64_t w) {
  if (r < 1 || n < 1) throw std::invalid_argument("separation_nu: need n, r >= 1");
  const unsigned ur = static_cast<unsigned>(r);
  const Rational rr(static_cast<long long>(r));
  Rational nu = pow(Rational(2), ur) * pow(rr + Rational(1), 8 * ur);
  const long long e = -2LL * ur * ur + ur + 1;
  nu *= e >= 0 ? pow(rr, static_cast<unsigned>(e)) : pow(rr, static_cast<unsigned>(-e)).inverse();
  nu *= pow(Rational(static_cast<long long>(n)) * e_upper(), 4 * ur * ur);
  nu *= pow(max(Rational(1), Rational(w) / Rational(2)), 4 * ur * ur);
  return nu;
}

RankProfile rank_profile(const EntropyGame& game, std::uint64_t budget, bool fallback) {
  game.validate();
  RankProfile rp;
  const std::size_t n = game.count(Role::Despot);
  if (entropy_pair_count(game) > budget) {
    if (!fallback) {
      throw BudgetExceeded("rank enumeration: pair count exceeds budget " +
                           std::to_string(budget));
    }
    rp.r = n;
  } else {
    rp.enumerated = true;
    for_each_entropy_pair(game, budget, [&](const StrategyPair& pair) {
      rp.r = std::max(rp.r, matrix_rank(ambiguity_matrix(game, pair)));
    });
  }
  const std::int64_t w = game.max_multiplicity();
  rp.nu = separation_nu(n, rp.r, w);
  rp.nu_hat = Rational(static_cast<long long>(n)) * Rational(w) * rp.nu;
  return rp;
}

Rational cw_norm_bound(std::size_t n, std::int64_t w, const Rational& delta) {
  if (delta.sign() <= 0 || delta >= Rational(1)) {
    throw std::invalid_argument("cw_norm_bound: delta must lie in (0, 1)");
  }
  if (w < 1) throw std::invalid_argument("cw_norm_bound: W must be >= 1");
  Mpfr t(128);
  mpfr_set_si(t.get(), static_cast<long>(std::max<std::int64_t>(w, 2)), MPFR_RNDU);
  mpfr_log2(t.get(), t.get(), MPFR_RNDU);
  const Rational log_w = to_rational(t);
  set_rational(t, delta.inverse(), MPFR_RNDU);
  mpfr_log2(t.get(), t.get(), MPFR_RNDU);
  const Rational log_d = to_rational(t);
  const Rational nn(static_cast<long long>(n));
  return Rational(1200) * (nn * nn * nn * log_w + nn * nn * log_d);
}

namespace {

// Equal-value brackets overlap; distinct ones are separated by more than
// twice the bracket width, so overlap decides equality.
RationalInterval bracket_max(const RationalInterval& a, const RationalInterval& b) {
  if (a.hi < b.lo) return b;
  if (b.hi < a.lo) return a;
  return {max(a.lo, b.lo), min(a.hi, b.hi)};
}

RationalInterval bracket_min(const RationalInterval& a, const RationalInterval& b) {
  if (a.hi < b.lo) return a;
  if (b.hi < a.lo) return b;
  return {max(a.lo, b.lo), min(a.hi, b.hi)};
}

}  // namespace

EntropyBruteForce brute_force_entropy_values(const EntropyGame& game, std::uint64_t budget,
                                             unsigned jobs, bool keep_pairs,
                                             std::optional<Rational> width) {
  game.validate();
  const std::uint64_t total = entropy_pair_count(game);
  if (total > budget) {
    throw BudgetExceeded("strategy pair count " + std::to_string(total) + " exceeds budget " +
                         std::to_string(budget));
  }
  EntropyBruteForce res;
  res.rank = rank_profile(game, budget, false);
  res.width = width ? *width : (Rational(4) * res.rank.nu_hat).inverse();
  const std::size_t n = game.count(Role::Despot);
  const std::uint64_t ns = radix(game, Role::Despot), nt = radix(game, Role::Tribune);
  std::vector<std::vector<RationalInterval>> best(ns);
  std::vector<std::vector<EntropyPairValues>> tables(ns);
  auto work = [&](std::uint64_t s) {
    const auto sigma = decode(game, Role::Despot, s);
    std::vector<RationalInterval> br;
    for (std::uint64_t t = 0; t < nt; ++t) {
      StrategyPair pair{sigma, decode(game, Role::Tribune, t)};
      auto vals = pair_value(game, pair, res.width);
      if (br.empty()) {
        br = vals;
      } else {
        for (std::size_t d = 0; d < n; ++d) br[d] = bracket_max(br[d], vals[d]);
      }
      if (keep_pairs) tables[s].push_back({std::move(pair), std::move(vals)});
    }
    best[s] = std::move(br);
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || ns == 1) {
    for (std::uint64_t s = 0; s < ns; ++s) work(s);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t s = next++; s < ns; s = next++) work(s);
      });
    }
    for (auto& th : pool) th.join();
  }
  res.chi = best[0];
  for (std::uint64_t s = 1; s < ns; ++s) {
    for (std::size_t d = 0; d < n; ++d) res.chi[d] = bracket_min(res.chi[d], best[s][d]);
  }
  if (keep_pairs) {
    for (auto& t : tables) {
      for (auto& p : t) res.pairs.push_back(std::move(p));
    }
  }
  return res;
}

namespace {

struct Closure {
  std::vector<char> despot, tribune, people;
};

Closure closure_of(const EntropyGame& game, const std::vector<std::size_t>& states) {
  Closure c;
  c.despot.assign(game.count(Role::Despot), 0);
  c.tribune.assign(game.count(Role::Tribune), 0);
  c.people.assign(game.count(Role::People), 0);
  for (std::size_t d : states) c.despot.at(d) = 1;
  for (std::size_t p = 0; p < c.people.size(); ++p) {
    for (const auto& e : game.out(Role::People, p)) c.people[p] |= c.despot[e.to];
  }
  for (std::size_t t = 0; t < c.tribune.size(); ++t) {
    for (const auto& e : game.out(Role::Tribune, t)) c.tribune[t] |= c.people[e.to];
  }
  return c;
}

InducedEntropyGame induce(const EntropyGame& game, const Closure& keep) {
  InducedEntropyGame res;
  std::vector<std::size_t> map[3];
  const std::vector<char>* flags[3] = {&keep.despot, &keep.tribune, &keep.people};
  std::vector<std::size_t>* back[3] = {&res.despot, &res.tribune, &res.people};
  for (Role r : {Role::Despot, Role::Tribune, Role::People}) {
    const std::size_t ri = static_cast<std::size_t>(r);
    map[ri].assign(game.count(r), 0);
    for (std::size_t i = 0; i < game.count(r); ++i) {
      if ((*flags[ri])[i]) {
        map[ri][i] = res.game.add_state(r, game.id(r, i));
        back[ri]->push_back(i);
      }
    }
  }
  for (Role r : {Role::Despot, Role::Tribune, Role::People}) {
    const std::size_t ri = static_cast<std::size_t>(r);
    const std::size_t ni = static_cast<std::size_t>(next_role(r));
    for (std::size_t i = 0; i < game.count(r); ++i) {
      if (!(*flags[ri])[i]) continue;
      for (const auto& e : game.out(r, i)) {
        if ((*flags[ni])[e.to]) res.game.add_edge(r, map[ri][i], map[ni][e.to], e.weight);
      }
    }
  }
  return res;
}

InducedEntropyGame identity_induced(const EntropyGame& game) {
  InducedEntropyGame res{game, {}, {}, {}};
  res.despot.resize(game.count(Role::Despot));
  res.tribune.resize(game.count(Role::Tribune));
  res.people.resize(game.count(Role::People));
  std::iota(res.despot.begin(), res.despot.end(), 0);
  std::iota(res.tribune.begin(), res.tribune.end(), 0);
  std::iota(res.people.begin(), res.people.end(), 0);
  return res;
}

// Maps of `inner` re-expressed in the coordinates of outer's parent.
InducedEntropyGame compose(InducedEntropyGame inner, const InducedEntropyGame& outer) {
  for (auto& i : inner.despot) i = outer.despot[i];
  for (auto& i : inner.tribune) i = outer.tribune[i];
  for (auto& i : inner.people) i = outer.people[i];
  return inner;
}

std::vector<std::size_t> to_local(const std::vector<std::size_t>& map,
                                  const std::vector<std::size_t>& states) {
  std::vector<std::size_t> out;
  for (std::size_t s : states) {
    auto it = std::find(map.begin(), map.end(), s);
    if (it == map.end()) throw std::invalid_argument("state not present in the reduced game");
    out.push_back(static_cast<std::size_t>(it - map.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_entropy_dominion(const EntropyGame& game, const std::vector<std::size_t>& states) {
  if (states.empty()) return false;
  const Closure c = closure_of(game, states);
  for (std::size_t d : states) {
    for (const auto& e : game.out(Role::Despot, d)) {
      if (!c.tribune[e.to]) return false;
    }
  }
  return true;
}

InducedEntropyGame induced_on_dominion(const EntropyGame& game,
                                       const std::vector<std::size_t>& states) {
  if (!is_entropy_dominion(game, states)) {
    throw std::invalid_argument("induced_on_dominion: state set is not a dominion");
  }
  InducedEntropyGame res = induce(game, closure_of(game, states));
  res.game.validate();
  return res;
}

InducedEntropyGame remove_top_class(const EntropyGame& game,
                                    const std::vector<std::size_t>& states) {
  Closure c = closure_of(game, states);
  for (auto* v : {&c.despot, &c.tribune, &c.people}) {
    for (auto& f : *v) f = !f;
  }
  InducedEntropyGame res = induce(game, c);
  if (res.game.count(Role::Despot) > 0) {
    try {
      res.game.validate();
    } catch (const GameFormatError& e) {
      throw std::logic_error(std::string("remove_top_class: not a top class: ") + e.what());
    }
  }
  return res;
}

InducedEntropyGame block_game(const EntropyGame& game, const EntropyBlock& block) {
  InducedEntropyGame cur = identity_induced(game);
  for (const auto& removed : block.context) {
    cur = compose(remove_top_class(cur.game, to_local(cur.despot, removed)), cur);
  }
  return compose(induced_on_dominion(cur.game, to_local(cur.despot, block.states)), cur);
}

InequalityCheck verify_block_certificate(const EntropyGame& game, const EntropyBlock& block,
                                         const Certificate& cert) {
  const InducedEntropyGame bg = block_game(game, block);
  if (cert.vec.size() != bg.game.count(Role::Despot)) {
    throw std::invalid_argument("certificate size does not match the block");
  }
  EntropyLogOracle oracle(std::make_shared<EntropyGame>(bg.game));
  return oracle.check_inequality(cert.vec, cert.lam, cert.direction);
}

RationalInterval exp_interval(const RationalInterval& iv) {
  Mpfr t(256);
  set_rational(t, iv.lo, MPFR_RNDD);
  mpfr_exp(t.get(), t.get(), MPFR_RNDD);
  const Rational lo = to_rational(t);
  set_rational(t, iv.hi, MPFR_RNDU);
  mpfr_exp(t.get(), t.get(), MPFR_RNDU);
  return {lo, to_rational(t)};
}

EntropySolution solve_entropy_game(const EntropyGame& game, const EntropySolveOptions& opts) {
  game.validate();
  EntropySolution sol;
  sol.rank = rank_profile(game, opts.rank_budget, true);
  const std::size_t n = game.count(Role::Despot);
  if (opts.params) {
    sol.params = *opts.params;
  } else {
    const Rational delta = sol.rank.nu_hat.inverse();
    sol.params = SepParams(delta, cw_norm_bound(n, game.max_multiplicity(), delta));
  }
  const SepParams& params = sol.params;
  sol.values.resize(n);
  sol.log_values.resize(n);
  sol.strategies.sigma.assign(n, 0);
  sol.strategies.tau.assign(game.count(Role::Tribune), 0);
  std::vector<char> tau_set(game.count(Role::Tribune), 0);

  auto counted = [&](const EntropyGamePtr& g) {
    std::uint64_t left = 0;
    if (opts.max_oracle_calls != 0) {
      if (sol.oracle_calls >= opts.max_oracle_calls) {
        throw BudgetExceeded("oracle call budget of " + std::to_string(opts.max_oracle_calls) +
                             " exceeded");
      }
      left = opts.max_oracle_calls - sol.oracle_calls;
    }
    return std::make_shared<CountingOracle>(log_domain_oracle(g), left);
  };

  InducedEntropyGame cur = identity_induced(game);
  std::vector<std::vector<std::size_t>> context;
  while (cur.game.count(Role::Despot) > 0) {
    auto gp = std::make_shared<EntropyGame>(cur.game);
    auto counter = counted(gp);
    TopClassResult tc;
    try {
      tc = top_class(counter, params);
    } catch (...) {
      sol.oracle_calls += counter->calls();
      throw;
    }
    sol.oracle_calls += counter->calls();
    const std::vector<std::size_t>& top = tc.top.states;

    InducedEntropyGame blk = induced_on_dominion(cur.game, top);
    auto bgp = std::make_shared<EntropyGame>(blk.game);
    auto bcounter = counted(bgp);
    ConstantValueResult acm;
    try {
      // delta/2 leaves room for the delta/4 slack of strategy extraction.
      acm = approximate_constant_mean_payoff(*bcounter, params.delta / Rational(2));
    } catch (...) {
      sol.oracle_calls += bcounter->calls();
      throw;
    }
    sol.oracle_calls += bcounter->calls();

    const EntropyLogOracle scorer(bgp);
    const Rational score_eps = params.delta / Rational(8);
    const ExtendedVec qy = scorer.people_scores(acm.sup.vec, score_eps);
    const ExtendedVec qx = scorer.people_scores(acm.sub.vec, score_eps);
    const EntropyGame& bg = blk.game;
    for (std::size_t k = 0; k < bg.count(Role::Despot); ++k) {
      bool first = true;
      ExtendedScalar best;
      std::size_t arg = 0;
      for (const auto& dt : bg.out(Role::Despot, k)) {
        ExtendedScalar v = ExtendedScalar::neg_inf();
        for (const auto& tp : bg.out(Role::Tribune, dt.to)) v = max(v, qy[tp.to]);
        if (first || v < best) {
          best = v;
          arg = dt.to;
        }
        first = false;
      }
      sol.strategies.sigma[cur.despot[blk.despot[k]]] = cur.tribune[blk.tribune[arg]];
    }
    for (std::size_t t = 0; t < bg.count(Role::Tribune); ++t) {
      bool first = true;
      ExtendedScalar best;
      std::size_t arg = 0;
      for (const auto& tp : bg.out(Role::Tribune, t)) {
        if (first || qx[tp.to] > best) {
          best = qx[tp.to];
          arg = tp.to;
        }
        first = false;
      }
      const std::size_t orig_t = cur.tribune[blk.tribune[t]];
      sol.strategies.tau[orig_t] = cur.people[blk.people[arg]];
      tau_set[orig_t] = 1;
    }

    EntropyBlock b;
    for (std::size_t k : top) b.states.push_back(cur.despot[k]);
    std::sort(b.states.begin(), b.states.end());
    b.context = context;
    b.log_value = acm.interval;
    b.value = exp_interval(acm.interval);
    b.sub = std::move(acm.sub);
    b.sup = std::move(acm.sup);
    for (std::size_t d : b.states) {
      sol.values[d] = b.value;
      sol.log_values[d] = b.log_value;
    }
    context.push_back(b.states);
    sol.blocks.push_back(std::move(b));
    cur = compose(remove_top_class(cur.game, top), cur);
  }
  if (std::find(tau_set.begin(), tau_set.end(), 0) != tau_set.end()) {
    throw std::logic_error("solve_entropy_game: a Tribune state was never assigned");
  }
  return sol;
}

ConvertedAsarin convert_asarin(const AsarinGame& src) {
  ConvertedAsarin res;
  EntropyGame& g = res.game;
  std::map<std::string, bool> is_despot;
  for (const auto& d : src.despot) {
    if (is_despot.count(d)) throw GameFormatError("duplicate state id \"" + d + "\"");
    is_despot[d] = true;
    res.despot_index[d] = g.add_state(Role::Despot, d);
  }
  for (const auto& t : src.tribune) {
    if (is_despot.count(t)) throw GameFormatError("duplicate state id \"" + t + "\"");
    is_despot[t] = false;
    g.add_state(Role::Despot, t);
    g.add_state(Role::Tribune, t + "/T");
    g.add_edge(t, t + "/T");
  }
  // (state, action) -> targets, in first-appearance order.
  std::vector<std::pair<std::string, std::string>> actions;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> targets;
  for (const auto& tr : src.transitions) {
    auto fi = is_despot.find(tr.from);
    auto ti = is_despot.find(tr.to);
    if (fi == is_despot.end()) throw GameFormatError("transition from unknown state \"" + tr.from + "\"");
    if (ti == is_despot.end()) throw GameFormatError("transition to unknown state \"" + tr.to + "\"");
    if (fi->second == ti->second) {
      throw GameFormatError("transition \"" + tr.from + "\" -> \"" + tr.to +
                            "\" must alternate between Despot and Tribune");
    }
    const auto key = std::make_pair(tr.from, tr.action);
    auto& tg = targets[key];
    if (tg.empty()) actions.push_back(key);
    if (std::find(tg.begin(), tg.end(), tr.to) == tg.end()) tg.push_back(tr.to);
  }
  for (const auto& [from, action] : actions) {
    const std::string p = from + "/" + action + "/P";
    g.add_state(Role::People, p);
    if (is_despot[from]) {
      const std::string t = from + "/" + action + "/T";
      g.add_state(Role::Tribune, t);
      g.add_edge(from, t);
      g.add_edge(t, p);
    } else {
      g.add_edge(from + "/T", p);
    }
    for (const auto& to : targets[{from, action}]) g.add_edge(p, to);
  }
  g.validate();
  return res;
}

RationalInterval asarin_value(const ConvertedAsarin& conv,
                              const std::vector<RationalInterval>& values) {
  bool first = true;
  RationalInterval best;
  for (const auto& [id, d] : conv.despot_index) {
    const RationalInterval& v = values.at(d);
    const RationalInterval sq(v.lo * v.lo, v.hi * v.hi);
    best = first ? sq : RationalInterval(max(best.lo, sq.lo), max(best.hi, sq.hi));
    first = false;
  }
  if (first) throw std::invalid_argument("asarin_value: game has no Despot state");
  return best;
}

}  // namespace mpg
