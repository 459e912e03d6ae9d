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

#ifndef MPG_CLI_HPP_
#define MPG_CLI_HPP_

#include <iosfwd>
#include <string>

#include "mpg/rational.hpp"

namespace mpg::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;         // unreadable or malformed input, bad flags
inline constexpr int kExitExhausted = 2;     // winner: iteration cap reached
inline constexpr int kExitBudget = 3;        // enumeration or oracle-call budget exceeded
inline constexpr int kExitCertFail = 4;      // certify: some certificate failed
inline constexpr int kExitPrecondition = 5;  // e.g. value mode on a non-constant game

// Runs the mpgsolve command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Fixed-point decimal with `digits` fractional digits, rounded down or up;
// trailing zeros dropped.
std::string decimal(const Rational& r, int digits, bool round_up);

}  // namespace mpg::cli

#endif  // MPG_CLI_HPP_
