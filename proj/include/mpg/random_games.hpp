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

#ifndef MPG_RANDOM_GAMES_HPP_
#define MPG_RANDOM_GAMES_HPP_

#include <cstdint>
#include <random>

#include "mpg/entropy_game.hpp"
#include "mpg/linalg.hpp"
#include "mpg/stochastic_game.hpp"

namespace mpg {

using Rng = std::mt19937_64;

struct RandomSmpgOptions {
  std::size_t max_states = 3;  // per owner, at least 1
  std::int64_t max_denominator = 3;
  std::int64_t max_payoff = 2;  // A and B drawn from [-max_payoff, max_payoff]
};

// Every state gets a nonempty random successor set; Nature numerators are a
// random positive composition of M over at most min(|v_min|, M) successors.
StochasticGame random_smpg(Rng& rng, const RandomSmpgOptions& opts = {});

// Two random blocks within the same per-owner caps, plus edges from some
// Min states of the second block into the first. Values are usually not
// constant, unlike the plain generator.
StochasticGame random_smpg_union(Rng& rng, const RandomSmpgOptions& opts = {});

struct RandomEntropyOptions {
  std::size_t max_states = 3;  // per role, at least 1
  std::int64_t max_multiplicity = 3;
};

EntropyGame random_entropy(Rng& rng, const RandomEntropyOptions& opts = {});

// Irreducible, nonzero, size 1..max_n, entries in [0, max_entry].
IntMatrix random_irreducible(Rng& rng, std::size_t max_n = 6, std::int64_t max_entry = 10);

}  // namespace mpg

#endif  // MPG_RANDOM_GAMES_HPP_
