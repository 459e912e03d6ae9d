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

#ifndef MPG_COUNTEREXAMPLE_HPP_
#define MPG_COUNTEREXAMPLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mpg/entropy_game.hpp"

namespace mpg {

// First row all W, ones on the subdiagonal.
IntMatrix companion_matrix(std::size_t n, std::int64_t w);

// Unique positive root of x^n - W (x^{n-1} + ... + 1), bracketed by
// bisection on [W, W+1] to width <= tol.
RationalInterval positive_root(std::size_t n, std::int64_t w, const Rational& tol);

struct CexGame {
  EntropyGame game;
  std::size_t n = 0;
  std::int64_t w = 0;
  std::int64_t alpha = 8;
  std::size_t start_despot = 0;   // d0
  std::size_t choice_tribune = 0;  // the Tribune state with two actions
  std::size_t left_people = 0;    // row 1^T into the A_n block
  std::size_t right_people = 0;   // row alpha 1^T into the A_{n-1} block
  std::size_t significant_people = 0;   // People states with >= 2 successors
  std::size_t significant_tribune = 0;  // Tribune states with >= 2 actions
  // Model turns per step of the lower-bound game.
  int turn_expansion = 1;
};

// Despot states d0, a1..an, b1..b(n-1). From d0 Tribune picks the left row
// (weight 1 into every a_j) or the right row (weight alpha into every b_j);
// the a and b blocks realize A_n(W) and A_{n-1}(W).
CexGame build_cex_game(std::size_t n, std::int64_t w);

// Strategy pair of the lower-bound game with the given Tribune action at
// the choice state.
StrategyPair cex_strategy(const CexGame& cex, bool left);

// k* = log(alpha (n-1) / (4n)) / log(lambda_n / lambda_{n-1}).
RationalInterval k_star(std::size_t n, std::int64_t w, const Rational& tol);

struct FlipStep {
  std::size_t k = 0;
  mpz_class left;   // 1^T A_n^k 1
  mpz_class right;  // alpha 1^T A_{n-1}^k 1
  bool left_wins = false;  // strict; ties go right
};

struct FlipTrace {
  std::optional<std::size_t> flip;  // first k with left > right
  std::vector<FlipStep> steps;      // k = 0..k_max
};

FlipTrace horizon_flip(std::size_t n, std::int64_t w, std::size_t k_max);

// Header k,left_term_digits,right_term_digits,winner; terms in decimal.
std::string flip_csv(const FlipTrace& trace);

}  // namespace mpg

#endif  // MPG_COUNTEREXAMPLE_HPP_
