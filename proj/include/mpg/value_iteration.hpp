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

#ifndef MPG_VALUE_ITERATION_HPP_
#define MPG_VALUE_ITERATION_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpg/shapley.hpp"

namespace mpg {

// (lam, vec) with lam + vec <= F(vec) (Sub) or lam + vec >= F(vec) (Super).
struct Certificate {
  Rational lam;
  ExtendedVec vec;
  Direction direction = Direction::Sub;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

InequalityCheck verify_certificate(const ShapleyOracle& oracle, const Certificate& cert);

enum class Verdict { MinWinsAll, MaxWinsAll, Exhausted };

std::string to_string(Verdict v);

struct WinnerVerdict {
  Verdict outcome = Verdict::Exhausted;
  std::uint64_t iterations = 0;
  ExtendedVec witness;  // last iterate
};

struct ConstantValueResult {
  RationalInterval interval;
  Certificate sub;
  Certificate sup;
  std::uint64_t iterations = 0;  // first-loop length
  std::uint64_t oracle_calls = 0;
};

class IterationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterates u <- F(u) from 0 with exact evaluation.
WinnerVerdict value_iteration(const ShapleyOracle& oracle, std::uint64_t max_iter);

// Iterates u <- eval(u, eps) and stops on l*eps + top(u) <= 0 or
// -l*eps + bottom(u) >= 0.
WinnerVerdict fp_value_iteration(const ShapleyOracle& oracle, const Rational& eps,
                                 std::uint64_t max_iter);

// Approximates erg(F) to width delta on an operator with constant value.
// Throws IterationLimit when the first loop exceeds max_iter (0 = no cap).
ConstantValueResult approximate_constant_mean_payoff(const ShapleyOracle& oracle,
                                                     const Rational& delta,
                                                     std::uint64_t max_iter = 0);

// orbit[i] = F~^i(0) for 0 <= i < l. Returns the Sub certificate
// (lam_lo - eps, sup_i(-i lam_lo + orbit[i])) and the Super certificate
// (lam_hi + eps, inf_i(-i lam_hi + orbit[i])).
std::pair<Certificate, Certificate> build_certificates(const std::vector<ExtendedVec>& orbit,
                                                       const Rational& lam_lo,
                                                       const Rational& lam_hi,
                                                       const Rational& eps);

// Scalars kept in memory before the second loop switches to replay.
inline constexpr std::size_t kOrbitMemoryBudget = std::size_t{1} << 21;

}  // namespace mpg

#endif  // MPG_VALUE_ITERATION_HPP_
