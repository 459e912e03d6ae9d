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

#include "mpg/random_games.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mpg {

namespace {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Nonempty subset of {0..n-1}, each element kept with probability 1/2.
std::vector<std::size_t> nonempty_subset(Rng& rng, std::size_t n) {
  std::vector<std::size_t> out;
  while (out.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (uniform(rng, 0, 1) == 1) out.push_back(i);
    }
  }
  return out;
}

}  // namespace

namespace {

struct BlockSizes {
  std::size_t n_min, n_max, n_nat;
};

struct BlockStart {
  std::size_t min = 0, max = 0, nat = 0;
};

// Adds a block of states and random edges inside it to `g`.
BlockStart add_random_block(Rng& rng, StochasticGame& g, const BlockSizes& sz, std::int64_t w) {
  const BlockStart at{g.count(Owner::Min), g.count(Owner::Max), g.count(Owner::Nature)};
  const std::int64_t m = g.denominator();
  for (std::size_t i = 0; i < sz.n_min; ++i) {
    g.add_state(Owner::Min, "j" + std::to_string(at.min + i + 1));
  }
  for (std::size_t i = 0; i < sz.n_max; ++i) {
    g.add_state(Owner::Max, "i" + std::to_string(at.max + i + 1));
  }
  for (std::size_t i = 0; i < sz.n_nat; ++i) {
    g.add_state(Owner::Nature, "k" + std::to_string(at.nat + i + 1));
  }
  for (std::size_t j = 0; j < sz.n_min; ++j) {
    for (auto i : nonempty_subset(rng, sz.n_max)) {
      g.add_edge(Owner::Min, at.min + j, at.max + i, uniform(rng, -w, w));
    }
  }
  for (std::size_t i = 0; i < sz.n_max; ++i) {
    for (auto k : nonempty_subset(rng, sz.n_nat)) {
      g.add_edge(Owner::Max, at.max + i, at.nat + k, uniform(rng, -w, w));
    }
  }
  for (std::size_t k = 0; k < sz.n_nat; ++k) {
    const auto support = static_cast<std::size_t>(
        uniform(rng, 1, std::min(static_cast<std::int64_t>(sz.n_min), m)));
    std::vector<std::size_t> targets(sz.n_min);
    std::iota(targets.begin(), targets.end(), 0);
    std::shuffle(targets.begin(), targets.end(), rng);
    targets.resize(support);
    std::sort(targets.begin(), targets.end());
    // Positive composition of m into `support` parts via distinct cut points.
    std::vector<std::int64_t> cuts(static_cast<std::size_t>(m - 1));
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(support - 1);
    cuts.push_back(0);
    cuts.push_back(m);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t t = 0; t < support; ++t) {
      g.add_edge(Owner::Nature, at.nat + k, at.min + targets[t], cuts[t + 1] - cuts[t]);
    }
  }
  return at;
}

std::size_t draw_count(Rng& rng, std::size_t cap) {
  return static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(cap)));
}

}  // namespace

StochasticGame random_smpg(Rng& rng, const RandomSmpgOptions& opts) {
  const BlockSizes sz{draw_count(rng, opts.max_states), draw_count(rng, opts.max_states),
                      draw_count(rng, opts.max_states)};
  StochasticGame g(uniform(rng, 1, opts.max_denominator));
  add_random_block(rng, g, sz, opts.max_payoff);
  g.validate();
  return g;
}

StochasticGame random_smpg_union(Rng& rng, const RandomSmpgOptions& opts) {
  if (opts.max_states < 2) throw std::invalid_argument("random_smpg_union: need max_states >= 2");
  const std::size_t cap = opts.max_states - 1;
  const BlockSizes first{draw_count(rng, cap), draw_count(rng, cap), draw_count(rng, cap)};
  const BlockSizes second{draw_count(rng, opts.max_states - first.n_min),
                          draw_count(rng, opts.max_states - first.n_max),
                          draw_count(rng, opts.max_states - first.n_nat)};
  StochasticGame g(uniform(rng, 1, opts.max_denominator));
  add_random_block(rng, g, first, opts.max_payoff);
  const BlockStart at = add_random_block(rng, g, second, opts.max_payoff);
  for (std::size_t j = 0; j < second.n_min; ++j) {
    if (uniform(rng, 0, 1) == 0) continue;
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(at.max) - 1));
    g.add_edge(Owner::Min, at.min + j, i, uniform(rng, -opts.max_payoff, opts.max_payoff));
  }
  g.validate();
  return g;
}

EntropyGame random_entropy(Rng& rng, const RandomEntropyOptions& opts) {
  const auto cap = static_cast<std::int64_t>(opts.max_states);
  const auto nd = static_cast<std::size_t>(uniform(rng, 1, cap));
  const auto nt = static_cast<std::size_t>(uniform(rng, 1, cap));
  const auto np = static_cast<std::size_t>(uniform(rng, 1, cap));
  const std::int64_t w = uniform(rng, 1, opts.max_multiplicity);
  EntropyGame g;
  for (std::size_t i = 0; i < nd; ++i) g.add_state(Role::Despot, "d" + std::to_string(i + 1));
  for (std::size_t i = 0; i < nt; ++i) g.add_state(Role::Tribune, "t" + std::to_string(i + 1));
  for (std::size_t i = 0; i < np; ++i) g.add_state(Role::People, "p" + std::to_string(i + 1));
  for (std::size_t d = 0; d < nd; ++d) {
    for (auto t : nonempty_subset(rng, nt)) g.add_edge(Role::Despot, d, t);
  }
  for (std::size_t t = 0; t < nt; ++t) {
    for (auto p : nonempty_subset(rng, np)) g.add_edge(Role::Tribune, t, p);
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (auto d : nonempty_subset(rng, nd)) g.add_edge(Role::People, p, d, uniform(rng, 1, w));
  }
  g.validate();
  return g;
}

IntMatrix random_irreducible(Rng& rng, std::size_t max_n, std::int64_t max_entry) {
  const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_n)));
  for (;;) {
    // Density varies per draw so both sparse cycles and dense matrices occur.
    const double density = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    std::bernoulli_distribution keep(density);
    IntMatrix a(n, std::vector<std::int64_t>(n, 0));
    for (auto& row : a) {
      for (auto& x : row) {
        if (keep(rng)) x = uniform(rng, 1, max_entry);
      }
    }
    if (is_irreducible(a)) return a;
  }
}

}  // namespace mpg
