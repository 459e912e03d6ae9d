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

// Test fixtures and independent reference computations.

#ifndef MPG_TESTS_SUPPORT_HPP_
#define MPG_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mpg/entropy_game.hpp"
#include "mpg/stochastic_game.hpp"

namespace mpg::test {

inline ExtendedVec vec(std::initializer_list<ExtendedScalar> v) { return ExtendedVec(v); }

inline Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

// One Min/Max/Nature triple per listed reward, each a deterministic loop:
// F(x)_j = x_j + reward_j.
inline StochasticGame loops(const std::vector<std::int64_t>& rewards) {
  StochasticGame g(1);
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    const std::string s = std::to_string(i + 1);
    g.add_state(Owner::Min, "j" + s);
    g.add_state(Owner::Max, "i" + s);
    g.add_state(Owner::Nature, "k" + s);
  }
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    const std::string s = std::to_string(i + 1);
    g.add_edge("j" + s, "i" + s, 0);
    g.add_edge("i" + s, "k" + s, rewards[i]);
    g.add_edge("k" + s, "j" + s, 1);
  }
  return g;
}

// F(x) = x + 2.
inline StochasticGame cycle_game() { return loops({2}); }

// Min picks A = 0 (then B = 1) or A = 4 (then B = 3): per-turn 1 or -1.
inline StochasticGame min_choice_game() {
  StochasticGame g(1);
  g.add_state(Owner::Min, "j");
  g.add_state(Owner::Max, "i1");
  g.add_state(Owner::Max, "i2");
  g.add_state(Owner::Nature, "k1");
  g.add_state(Owner::Nature, "k2");
  g.add_edge("j", "i1", 0);
  g.add_edge("j", "i2", 4);
  g.add_edge("i1", "k1", 1);
  g.add_edge("i2", "k2", 3);
  g.add_edge("k1", "j", 1);
  g.add_edge("k2", "j", 1);
  return g;
}

// One Nature state splitting 1/2, 1/2 between loops paying 1 and 2.
inline StochasticGame half_half_game() {
  StochasticGame g(2);
  g.add_state(Owner::Min, "j1");
  g.add_state(Owner::Min, "j2");
  g.add_state(Owner::Max, "i1");
  g.add_state(Owner::Max, "i2");
  g.add_state(Owner::Nature, "k");
  g.add_edge("j1", "i1", 0);
  g.add_edge("j2", "i2", 0);
  g.add_edge("i1", "k", 1);
  g.add_edge("i2", "k", 2);
  g.add_edge("k", "j1", 1);
  g.add_edge("k", "j2", 1);
  return g;
}

// Two absorbing loops paying 5 and 0.
inline StochasticGame absorbing_game() { return loops({5, 0}); }

// j1, j2 alternate with payoff 2; j3 may join them (payoff 2) or loop at -1.
// chi = (2, 2, -1).
inline StochasticGame three_state_game() {
  StochasticGame g(1);
  for (const char* s : {"j1", "j2", "j3"}) g.add_state(Owner::Min, s);
  for (const char* s : {"i1", "i2", "i3"}) g.add_state(Owner::Max, s);
  for (const char* s : {"k1", "k2", "k3"}) g.add_state(Owner::Nature, s);
  g.add_edge("j1", "i1", 0);
  g.add_edge("j2", "i2", 0);
  g.add_edge("j3", "i3", 0);
  g.add_edge("j3", "i1", 0);
  g.add_edge("i1", "k1", 2);
  g.add_edge("i2", "k2", 2);
  g.add_edge("i3", "k3", -1);
  g.add_edge("k1", "j2", 1);
  g.add_edge("k2", "j1", 1);
  g.add_edge("k3", "j3", 1);
  return g;
}

// j1 loops; j2 can only move into j1.
inline StochasticGame leak_game() {
  StochasticGame g(1);
  g.add_state(Owner::Min, "j1");
  g.add_state(Owner::Min, "j2");
  g.add_state(Owner::Max, "i1");
  g.add_state(Owner::Max, "i2");
  g.add_state(Owner::Nature, "k1");
  g.add_state(Owner::Nature, "k2");
  g.add_edge("j1", "i1", 0);
  g.add_edge("j2", "i2", 0);
  g.add_edge("i1", "k1", 1);
  g.add_edge("i2", "k2", 0);
  g.add_edge("k1", "j1", 1);
  g.add_edge("k2", "j1", 1);
  return g;
}

// d -> t -> p -> d with multiplicity m; value m.
inline EntropyGame entropy_loop(std::int64_t m) {
  EntropyGame g;
  g.add_state(Role::Despot, "d");
  g.add_state(Role::Tribune, "t");
  g.add_state(Role::People, "p");
  g.add_edge("d", "t");
  g.add_edge("t", "p");
  g.add_edge("p", "d", m);
  return g;
}

// Tribune chooses between loops of weight 2 and 3.
inline EntropyGame tribune_choice_game() {
  EntropyGame g;
  g.add_state(Role::Despot, "d");
  g.add_state(Role::Tribune, "t");
  g.add_state(Role::People, "p2");
  g.add_state(Role::People, "p3");
  g.add_edge("d", "t");
  g.add_edge("t", "p2");
  g.add_edge("t", "p3");
  g.add_edge("p2", "d", 2);
  g.add_edge("p3", "d", 3);
  return g;
}

// Despot chooses between loops of weight 2 and 3.
inline EntropyGame despot_choice_game() {
  EntropyGame g;
  g.add_state(Role::Despot, "d");
  g.add_state(Role::Tribune, "t2");
  g.add_state(Role::Tribune, "t3");
  g.add_state(Role::People, "p2");
  g.add_state(Role::People, "p3");
  g.add_edge("d", "t2");
  g.add_edge("d", "t3");
  g.add_edge("t2", "p2");
  g.add_edge("t3", "p3");
  g.add_edge("p2", "d", 2);
  g.add_edge("p3", "d", 3);
  return g;
}

// ---- polynomials over Q, Sturm sequences ----------------------------------

// Coefficients from the constant term up.
using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long long>(i)));
  trim(d);
  return d;
}

inline Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Poly poly_div(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  Poly quo(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    quo[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return quo;
}

inline Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// det(xI - A) by the Faddeev-LeVerrier recurrence.
inline Poly char_poly(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
  Poly c(n + 1, 0);
  c[n] = 1;
  std::vector<std::vector<Rational>> mk(n, std::vector<Rational>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // mk = A * m + c[n-k+1] I
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) {
          if (a[i][l] != 0) s += Rational(a[i][l]) * m[l][j];
        }
        next[i][j] = s;
      }
      next[i][i] += c[n - k + 1];
    }
    m = next;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] != 0) tr += Rational(a[i][l]) * m[l][i];
      }
    }
    c[n - k] = -tr / Rational(static_cast<long long>(k));
  }
  return c;
}

class Sturm {
 public:
  explicit Sturm(Poly p) {
    trim(p);
    // Square-free part keeps the sequence well defined at multiple roots.
    const Poly g = poly_gcd(p, derivative(p));
    if (g.size() > 1) p = poly_div(p, g);
    seq_.push_back(p);
    seq_.push_back(derivative(p));
    while (seq_.back().size() > 1) {
      Poly r = poly_rem(seq_[seq_.size() - 2], seq_.back());
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      seq_.push_back(std::move(r));
    }
  }

  // Distinct real roots in (a, b].
  std::size_t count(const Rational& a, const Rational& b) const { return changes(a) - changes(b); }

  // Distinct real roots in (a, +inf).
  std::size_t count_above(const Rational& a) const { return changes(a) - changes_at_inf(); }

 private:
  std::size_t changes(const Rational& x) const {
    std::size_t n = 0;
    int prev = 0;
    for (const auto& p : seq_) {
      const int s = eval(p, x).sign();
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++n;
      prev = s;
    }
    return n;
  }
  std::size_t changes_at_inf() const {
    std::size_t n = 0;
    int prev = 0;
    for (const auto& p : seq_) {
      const int s = p.back().sign();
      if (prev != 0 && s != prev) ++n;
      prev = s;
    }
    return n;
  }

  std::vector<Poly> seq_;
};

// True when [lo, hi] contains the largest real root of det(xI - A).
inline bool brackets_largest_root(const std::vector<std::vector<std::int64_t>>& a,
                                  const RationalInterval& iv) {
  const Poly p = char_poly(a);
  const Sturm s(p);
  if (s.count_above(iv.hi) != 0) return false;
  if (eval(p, iv.hi).is_zero()) return true;
  return s.count(iv.lo, iv.hi) >= 1 || eval(p, iv.lo).is_zero();
}

// ---- rational search by scanning ------------------------------------------

// All p/q in [lo, hi] with q <= qmax, reduced, ascending in q.
inline std::vector<Rational> fractions_in(const Rational& lo, const Rational& hi, std::int64_t qmax) {
  std::vector<Rational> out;
  for (std::int64_t d = 1; d <= qmax; ++d) {
    const mpz_class first = (lo * Rational(d)).ceil();
    const mpz_class last = (hi * Rational(d)).floor();
    for (mpz_class p = first; p <= last; ++p) {
      const Rational r(p, mpz_class(d));
      bool seen = false;
      for (const auto& x : out) seen = seen || x == r;
      if (!seen) out.push_back(r);
    }
  }
  return out;
}

// Positive root of x^n - W (x^{n-1} + ... + 1) in long double, by bisection.
inline long double root_ld(int n, long double w) {
  auto p = [&](long double x) {
    long double s = 0;
    for (int i = 0; i < n; ++i) s = s * x + 1;
    return std::pow(x, n) - w * s;
  };
  long double lo = w, hi = w + 1;
  for (int it = 0; it < 200; ++it) {
    const long double mid = (lo + hi) / 2;
    (p(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace mpg::test

#endif  // MPG_TESTS_SUPPORT_HPP_
