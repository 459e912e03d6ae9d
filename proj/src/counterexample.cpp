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

#include "mpg/counterexample.hpp"

#include <sstream>
#include <stdexcept>

#include "mpg/mpfr_util.hpp"

namespace mpg {

IntMatrix companion_matrix(std::size_t n, std::int64_t w) {
  if (n < 1 || w < 1) throw std::invalid_argument("companion_matrix: need n >= 1, W >= 1");
  IntMatrix a(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) a[0][j] = w;
  for (std::size_t i = 1; i < n; ++i) a[i][i - 1] = 1;
  return a;
}

namespace {

Rational char_poly(std::size_t n, std::int64_t w, const Rational& x) {
  Rational tail(0);
  for (std::size_t i = 0; i < n; ++i) tail = tail * x + Rational(1);
  return pow(x, static_cast<unsigned>(n)) - Rational(w) * tail;
}

}  // namespace

RationalInterval positive_root(std::size_t n, std::int64_t w, const Rational& tol) {
  if (n < 1 || w < 1) throw std::invalid_argument("positive_root: need n >= 1, W >= 1");
  if (tol.sign() <= 0) throw std::invalid_argument("positive_root: tol must be positive");
  if (n == 1) return {Rational(w), Rational(w)};
  Rational lo(w), hi(w + 1);
  while (hi - lo > tol) {
    const Rational mid = (lo + hi) / Rational(2);
    const int s = char_poly(n, w, mid).sign();
    if (s == 0) return {mid, mid};
    (s < 0 ? lo : hi) = mid;
  }
  return {lo, hi};
}

CexGame build_cex_game(std::size_t n, std::int64_t w) {
  if (n < 2 || w < 1) throw std::invalid_argument("build_cex_game: need n >= 2, W >= 1");
  CexGame c;
  c.n = n;
  c.w = w;
  EntropyGame& g = c.game;
  auto block_id = [](char tag, std::size_t j) { return std::string(1, tag) + std::to_string(j); };

  c.start_despot = g.add_state(Role::Despot, "d0");
  for (std::size_t j = 1; j <= n; ++j) g.add_state(Role::Despot, block_id('a', j));
  for (std::size_t j = 1; j < n; ++j) g.add_state(Role::Despot, block_id('b', j));

  c.choice_tribune = g.add_state(Role::Tribune, "t0");
  c.left_people = g.add_state(Role::People, "pL");
  c.right_people = g.add_state(Role::People, "pR");
  g.add_edge("d0", "t0");
  g.add_edge("t0", "pL");
  g.add_edge("t0", "pR");
  for (std::size_t j = 1; j <= n; ++j) g.add_edge("pL", block_id('a', j), 1);
  for (std::size_t j = 1; j < n; ++j) g.add_edge("pR", block_id('b', j), c.alpha);

  // Block states follow the companion rows: row 1 feeds every block state
  // with weight W, row j >= 2 feeds state j-1.
  auto add_block = [&](char tag, std::size_t size) {
    for (std::size_t j = 1; j <= size; ++j) {
      const std::string d = block_id(tag, j);
      g.add_state(Role::Tribune, "t" + d);
      g.add_state(Role::People, "p" + d);
      g.add_edge(d, "t" + d);
      g.add_edge("t" + d, "p" + d);
    }
    for (std::size_t j = 1; j <= size; ++j) {
      const std::string p = "p" + block_id(tag, j);
      if (j == 1) {
        for (std::size_t l = 1; l <= size; ++l) g.add_edge(p, block_id(tag, l), w);
      } else {
        g.add_edge(p, block_id(tag, j - 1), 1);
      }
    }
  };
  add_block('a', n);
  add_block('b', n - 1);
  g.validate();

  for (std::size_t p = 0; p < g.count(Role::People); ++p) {
    if (g.out(Role::People, p).size() >= 2) ++c.significant_people;
  }
  for (std::size_t t = 0; t < g.count(Role::Tribune); ++t) {
    if (g.out(Role::Tribune, t).size() >= 2) ++c.significant_tribune;
  }
  return c;
}

StrategyPair cex_strategy(const CexGame& cex, bool left) {
  const EntropyGame& g = cex.game;
  StrategyPair pair;
  for (std::size_t d = 0; d < g.count(Role::Despot); ++d) {
    pair.sigma.push_back(g.out(Role::Despot, d).front().to);
  }
  for (std::size_t t = 0; t < g.count(Role::Tribune); ++t) {
    pair.tau.push_back(g.out(Role::Tribune, t).front().to);
  }
  pair.tau[cex.choice_tribune] = left ? cex.left_people : cex.right_people;
  return pair;
}

RationalInterval k_star(std::size_t n, std::int64_t w, const Rational& tol) {
  if (n < 2 || w < 1) throw std::invalid_argument("k_star: need n >= 2, W >= 1");
  if (tol.sign() <= 0) throw std::invalid_argument("k_star: tol must be positive");
  const Rational ratio = Rational(static_cast<long long>(8 * (n - 1))) /
                         Rational(static_cast<long long>(4 * n));
  if (ratio == Rational(1)) return {Rational(0), Rational(0)};
  Rational root_tol = tol / Rational(1024);
  for (long prec = 128;; prec *= 2, root_tol /= Rational(1 << 20)) {
    const RationalInterval big = positive_root(n, w, root_tol);
    const RationalInterval small = positive_root(n - 1, w, root_tol);
    if (big.lo <= small.hi) continue;
    const Rational num_lo = log_rounded(ratio, prec, MPFR_RNDD);
    const Rational num_hi = log_rounded(ratio, prec, MPFR_RNDU);
    const Rational den_lo = log_rounded(big.lo / small.hi, prec, MPFR_RNDD);
    const Rational den_hi = log_rounded(big.hi / small.lo, prec, MPFR_RNDU);
    if (den_lo.sign() <= 0) continue;
    // ratio > 1 here, so the numerator is positive.
    const RationalInterval k(num_lo / den_hi, num_hi / den_lo);
    if (k.width() <= tol) return k;
  }
}

namespace {

std::vector<mpz_class> mat_vec(const IntMatrix& a, const std::vector<mpz_class>& v) {
  std::vector<mpz_class> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j] != 0) out[i] += mpz_class(static_cast<long>(a[i][j])) * v[j];
    }
  }
  return out;
}

mpz_class sum(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace

FlipTrace horizon_flip(std::size_t n, std::int64_t w, std::size_t k_max) {
  if (n < 2 || w < 1) throw std::invalid_argument("horizon_flip: need n >= 2, W >= 1");
  if (k_max < 1) throw std::invalid_argument("horizon_flip: k_max must be >= 1");
  const IntMatrix big = companion_matrix(n, w);
  const IntMatrix small = companion_matrix(n - 1, w);
  std::vector<mpz_class> u(n, 1), v(n - 1, 1);
  FlipTrace trace;
  for (std::size_t k = 0; k <= k_max; ++k) {
    FlipStep s;
    s.k = k;
    s.left = sum(u);
    s.right = 8 * sum(v);
    s.left_wins = s.left > s.right;
    if (s.left_wins && !trace.flip) trace.flip = k;
    trace.steps.push_back(std::move(s));
    u = mat_vec(big, u);
    v = mat_vec(small, v);
  }
  return trace;
}

std::string flip_csv(const FlipTrace& trace) {
  std::ostringstream os;
  os << "k,left_term_digits,right_term_digits,winner\n";
  for (const auto& s : trace.steps) {
    os << s.k << ',' << s.left.get_str() << ',' << s.right.get_str() << ','
       << (s.left_wins ? "left" : "right") << '\n';
  }
  return os.str();
}

}  // namespace mpg
