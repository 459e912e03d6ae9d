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

#ifndef MPG_LINALG_HPP_
#define MPG_LINALG_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "mpg/rational.hpp"

namespace mpg {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Solves a x = b for square nonsingular a; nullopt when singular.
std::optional<std::vector<Rational>> solve_linear(RationalMatrix a, std::vector<Rational> b);

// Rank by fraction-free (Bareiss) elimination.
std::size_t matrix_rank(const IntMatrix& m);

// Strongly connected components (Tarjan). adj[v] lists successors. The
// result lists components in reverse topological order (sinks first).
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adj);

// Support graph of a nonnegative matrix.
std::vector<std::vector<std::size_t>> support_graph(const IntMatrix& m);

bool is_irreducible(const IntMatrix& m);

}  // namespace mpg

#endif  // MPG_LINALG_HPP_
