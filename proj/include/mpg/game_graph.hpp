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

#ifndef MPG_GAME_GRAPH_HPP_
#define MPG_GAME_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mpg {

class GameFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WeightedEdge {
  std::size_t to;
  std::int64_t weight;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Positional strategies of the two controllers. sigma maps each state of the
// first player to a successor index, tau does the same for the second.
struct StrategyPair {
  std::vector<std::size_t> sigma;
  std::vector<std::size_t> tau;
  friend bool operator==(const StrategyPair&, const StrategyPair&) = default;
};

}  // namespace mpg

#endif  // MPG_GAME_GRAPH_HPP_
