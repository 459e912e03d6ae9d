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

#ifndef MPG_DOMINION_HPP_
#define MPG_DOMINION_HPP_

#include <cstdint>
#include <vector>

#include "mpg/shapley.hpp"

namespace mpg {

// delta: a priori separation (delta < sep(F)); r: bound on the Hilbert
// seminorm of CW vectors of the top-class restriction.
struct SepParams {
  Rational delta;
  Rational r;

  SepParams() = default;
  SepParams(Rational d, Rational bound);
};

// Sorted state indices, certified by one finite eval of F^D at 0.
struct Dominion {
  std::vector<std::size_t> states;
};

struct ConstantValueDecision {
  bool constant = true;
  std::vector<std::size_t> low_set;  // argmin of the final iterate when !constant
  std::uint64_t iterations = 0;
};

ConstantValueDecision decide_constant_value(const ShapleyOracle& oracle, const SepParams& params);

// Extends `seed` (indices of the root oracle, subset of dominion.states)
// inside the dominion until no new state is forced to -inf.
std::vector<std::size_t> extend(const OraclePtr& oracle, const Dominion& dominion,
                                const std::vector<std::size_t>& seed);

struct TopClassResult {
  Dominion top;
  std::vector<Dominion> chain;  // D_1 = [n] ⊋ D_2 ⊋ ... ⊋ top
  std::uint64_t loop_iterations = 0;
};

TopClassResult top_class(const OraclePtr& oracle, const SepParams& params);

// n^2 + n * ceil(8R / delta).
mpz_class top_class_call_budget(std::size_t n, const SepParams& params);

}  // namespace mpg

#endif  // MPG_DOMINION_HPP_
