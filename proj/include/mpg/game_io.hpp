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

#ifndef MPG_GAME_IO_HPP_
#define MPG_GAME_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mpg/entropy_game.hpp"
#include "mpg/stochastic_game.hpp"

namespace mpg {

using Json = nlohmann::ordered_json;

enum class GameKind { Smpg, Entropy, TurnBased, Asarin };

std::string to_string(GameKind k);

// A parsed game file. Turn-based and original-model entropy inputs are
// converted on load; `smpg`/`entropy` then hold the converted game.
struct LoadedGame {
  GameKind kind = GameKind::Smpg;
  std::optional<StochasticGame> smpg;
  std::optional<EntropyGame> entropy;
  std::optional<NormalizedGame> turn_based;
  std::optional<ConvertedAsarin> asarin;
};

// Errors are GameFormatError naming the offending record.
StochasticGame smpg_from_json(const Json& j);
EntropyGame entropy_from_json(const Json& j);
TurnBasedGame turn_based_from_json(const Json& j);
AsarinGame asarin_from_json(const Json& j);
LoadedGame game_from_json(const Json& j);

Json to_json(const StochasticGame& g);
Json to_json(const EntropyGame& g);

// Parses JSON text; syntax errors report line and column.
Json parse_json_text(const std::string& text, const std::string& source);
LoadedGame load_game_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct ReportCertificate {
  std::string direction;            // "sub" or "super"
  Rational lambda;
  std::vector<std::string> states;  // coordinates of `vector`
  std::vector<ExtendedScalar> vector;
  std::vector<std::vector<std::string>> context;  // entropy: earlier blocks
  friend bool operator==(const ReportCertificate&, const ReportCertificate&) = default;
};

struct RunReport {
  std::string command;
  std::string game_type;
  std::vector<std::pair<std::string, std::string>> stats;
  std::string verdict;
  std::string value;
  std::vector<std::pair<std::string, std::string>> state_values;
  std::vector<std::string> top_class;
  std::vector<ReportCertificate> certificates;
  std::vector<std::pair<std::string, std::string>> strategies;
  std::uint64_t oracle_calls = 0;
  double wall_time_s = 0;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

Json to_json(const ReportCertificate& c);
ReportCertificate certificate_from_json(const Json& j);
Json to_json(const RunReport& r);
RunReport report_from_json(const Json& j);

// Accepts a report, {"certificates": [...]}, an array, or one certificate.
std::vector<ReportCertificate> certificates_from_json(const Json& j);

}  // namespace mpg

#endif  // MPG_GAME_IO_HPP_
