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

#include "mpg/game_io.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace mpg {

std::string to_string(GameKind k) {
  switch (k) {
    case GameKind::Smpg: return "smpg";
    case GameKind::Entropy: return "entropy";
    case GameKind::TurnBased: return "turn_based";
    case GameKind::Asarin: return "asarin";
  }
  return "?";
}

namespace {

const Json& member(const Json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object()) throw GameFormatError(ctx + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw GameFormatError(ctx + ": missing key \"" + key + "\"");
  return *it;
}

std::string get_string(const Json& j, const std::string& key, const std::string& ctx) {
  const Json& v = member(j, key, ctx);
  if (!v.is_string()) throw GameFormatError(ctx + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::int64_t as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw GameFormatError(what + " must be an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw GameFormatError(what + " is out of range");
  }
  return v.get<std::int64_t>();
}

std::optional<std::int64_t> get_opt_int(const Json& j, const std::string& key,
                                        const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return as_int(*it, ctx + ": \"" + key + "\"");
}

std::vector<std::string> get_ids(const Json& j, const std::string& key) {
  const Json& arr = member(j, key, "game");
  if (!arr.is_array()) throw GameFormatError("\"" + key + "\" must be an array of state ids");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      throw GameFormatError(key + "[" + std::to_string(i) + "]: state id must be a string");
    }
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

const Json& get_records(const Json& j, const std::string& key) {
  const Json& arr = member(j, key, "game");
  if (!arr.is_array()) throw GameFormatError("\"" + key + "\" must be an array of records");
  return arr;
}

void check_type(const Json& j, const std::string& expected) {
  auto it = j.find("type");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != expected)) {
    throw GameFormatError("game: \"type\" must be \"" + expected + "\"");
  }
}

template <typename Fn>
void with_context(const std::string& ctx, Fn&& fn) {
  try {
    fn();
  } catch (const GameFormatError& e) {
    const std::string msg = e.what();
    if (msg.rfind(ctx, 0) == 0) throw;
    throw GameFormatError(ctx + ": " + msg);
  }
}

void reject_keys(const Json& rec, std::initializer_list<const char*> keys, const std::string& ctx,
                 const std::string& edge_kind) {
  for (const char* k : keys) {
    if (rec.contains(k)) {
      throw GameFormatError(ctx + ": key \"" + k + "\" does not apply to a " + edge_kind + " edge");
    }
  }
}

}  // namespace

StochasticGame smpg_from_json(const Json& j) {
  if (!j.is_object()) throw GameFormatError("game: expected a JSON object");
  check_type(j, "smpg");
  std::int64_t m = 1;
  if (auto v = get_opt_int(j, "denominator", "game")) m = *v;
  if (m < 1) throw GameFormatError("game: \"denominator\" must be >= 1");
  StochasticGame g(m);
  const std::pair<const char*, Owner> groups[] = {
      {"min_states", Owner::Min}, {"max_states", Owner::Max}, {"nat_states", Owner::Nature}};
  for (const auto& [key, owner] : groups) {
    const auto ids = get_ids(j, key);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      with_context(std::string(key) + "[" + std::to_string(i) + "]",
                   [&] { g.add_state(owner, ids[i]); });
    }
  }
  const Json& edges = get_records(j, "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ctx = "edges[" + std::to_string(i) + "]";
    with_context(ctx, [&] {
      const Json& rec = edges[i];
      const std::string from = get_string(rec, "from", ctx);
      const std::string to = get_string(rec, "to", ctx);
      const Owner owner = g.lookup(from).first;
      std::int64_t w = 0;
      switch (owner) {
        case Owner::Min:
          reject_keys(rec, {"b", "p_num"}, ctx, "Min -> Max");
          w = get_opt_int(rec, "a", ctx).value_or(0);
          break;
        case Owner::Max:
          reject_keys(rec, {"a", "p_num"}, ctx, "Max -> Nature");
          w = get_opt_int(rec, "b", ctx).value_or(0);
          break;
        case Owner::Nature:
          reject_keys(rec, {"a", "b"}, ctx, "Nature -> Min");
          w = get_opt_int(rec, "p_num", ctx).value_or(m);
          break;
      }
      g.add_edge(from, to, w);
    });
  }
  g.validate();
  return g;
}

EntropyGame entropy_from_json(const Json& j) {
  if (!j.is_object()) throw GameFormatError("game: expected a JSON object");
  check_type(j, "entropy");
  EntropyGame g;
  const std::pair<const char*, Role> groups[] = {
      {"d_states", Role::Despot}, {"t_states", Role::Tribune}, {"p_states", Role::People}};
  for (const auto& [key, role] : groups) {
    const auto ids = get_ids(j, key);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      with_context(std::string(key) + "[" + std::to_string(i) + "]",
                   [&] { g.add_state(role, ids[i]); });
    }
  }
  const Json& edges = get_records(j, "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ctx = "edges[" + std::to_string(i) + "]";
    with_context(ctx, [&] {
      const Json& rec = edges[i];
      g.add_edge(get_string(rec, "from", ctx), get_string(rec, "to", ctx),
                 get_opt_int(rec, "m", ctx).value_or(1));
    });
  }
  g.validate();
  return g;
}

TurnBasedGame turn_based_from_json(const Json& j) {
  if (!j.is_object()) throw GameFormatError("game: expected a JSON object");
  check_type(j, "turn_based");
  TurnBasedGame g;
  if (auto v = get_opt_int(j, "denominator", "game")) g.denominator = *v;
  if (g.denominator < 1) throw GameFormatError("game: \"denominator\" must be >= 1");
  const Json& states = get_records(j, "states");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string ctx = "states[" + std::to_string(i) + "]";
    const std::string owner = get_string(states[i], "owner", ctx);
    Owner o;
    if (owner == "min") {
      o = Owner::Min;
    } else if (owner == "max") {
      o = Owner::Max;
    } else if (owner == "nature") {
      o = Owner::Nature;
    } else {
      throw GameFormatError(ctx + ": owner must be \"min\", \"max\" or \"nature\"");
    }
    g.states.push_back({get_string(states[i], "id", ctx), o});
  }
  const Json& edges = get_records(j, "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ctx = "edges[" + std::to_string(i) + "]";
    const Json& rec = edges[i];
    TurnBasedGame::Edge e{get_string(rec, "from", ctx), get_string(rec, "to", ctx), 0};
    if (auto r = get_opt_int(rec, "r", ctx)) e.weight = *r;
    if (auto p = get_opt_int(rec, "p_num", ctx)) e.weight = *p;
    g.edges.push_back(std::move(e));
  }
  return g;
}

AsarinGame asarin_from_json(const Json& j) {
  if (!j.is_object()) throw GameFormatError("game: expected a JSON object");
  check_type(j, "asarin");
  AsarinGame g;
  g.despot = get_ids(j, "despot");
  g.tribune = get_ids(j, "tribune");
  const Json& trs = get_records(j, "transitions");
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const std::string ctx = "transitions[" + std::to_string(i) + "]";
    g.transitions.push_back({get_string(trs[i], "from", ctx), get_string(trs[i], "action", ctx),
                             get_string(trs[i], "to", ctx)});
  }
  return g;
}

LoadedGame game_from_json(const Json& j) {
  if (!j.is_object()) throw GameFormatError("game: expected a JSON object");
  const std::string type = get_string(j, "type", "game");
  LoadedGame lg;
  if (type == "smpg") {
    lg.kind = GameKind::Smpg;
    lg.smpg = smpg_from_json(j);
  } else if (type == "entropy") {
    lg.kind = GameKind::Entropy;
    lg.entropy = entropy_from_json(j);
  } else if (type == "turn_based") {
    lg.kind = GameKind::TurnBased;
    lg.turn_based = normalize_turn_based(turn_based_from_json(j));
    lg.smpg = lg.turn_based->game;
  } else if (type == "asarin") {
    lg.kind = GameKind::Asarin;
    lg.asarin = convert_asarin(asarin_from_json(j));
    lg.entropy = lg.asarin->game;
  } else {
    throw GameFormatError("game: unknown type \"" + type +
                          "\" (expected smpg, entropy, turn_based or asarin)");
  }
  return lg;
}

Json to_json(const StochasticGame& g) {
  Json j;
  j["type"] = "smpg";
  j["denominator"] = g.denominator();
  j["min_states"] = g.ids(Owner::Min);
  j["max_states"] = g.ids(Owner::Max);
  j["nat_states"] = g.ids(Owner::Nature);
  Json edges = Json::array();
  const std::tuple<Owner, Owner, const char*> kinds[] = {
      {Owner::Min, Owner::Max, "a"}, {Owner::Max, Owner::Nature, "b"},
      {Owner::Nature, Owner::Min, "p_num"}};
  for (const auto& [from, to, key] : kinds) {
    for (std::size_t i = 0; i < g.count(from); ++i) {
      for (const auto& e : g.out(from, i)) {
        edges.push_back({{"from", g.id(from, i)}, {"to", g.id(to, e.to)}, {key, e.weight}});
      }
    }
  }
  j["edges"] = std::move(edges);
  return j;
}

Json to_json(const EntropyGame& g) {
  Json j;
  j["type"] = "entropy";
  j["d_states"] = g.ids(Role::Despot);
  j["t_states"] = g.ids(Role::Tribune);
  j["p_states"] = g.ids(Role::People);
  Json edges = Json::array();
  for (std::size_t d = 0; d < g.count(Role::Despot); ++d) {
    for (const auto& e : g.out(Role::Despot, d)) {
      edges.push_back({{"from", g.id(Role::Despot, d)}, {"to", g.id(Role::Tribune, e.to)}});
    }
  }
  for (std::size_t t = 0; t < g.count(Role::Tribune); ++t) {
    for (const auto& e : g.out(Role::Tribune, t)) {
      edges.push_back({{"from", g.id(Role::Tribune, t)}, {"to", g.id(Role::People, e.to)}});
    }
  }
  for (std::size_t p = 0; p < g.count(Role::People); ++p) {
    for (const auto& e : g.out(Role::People, p)) {
      edges.push_back(
          {{"from", g.id(Role::People, p)}, {"to", g.id(Role::Despot, e.to)}, {"m", e.weight}});
    }
  }
  j["edges"] = std::move(edges);
  return j;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw GameFormatError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": invalid JSON");
  }
}

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GameFormatError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

LoadedGame load_game_file(const std::string& path) {
  const Json j = parse_json_text(read_text_file(path), path);
  try {
    return game_from_json(j);
  } catch (const GameFormatError& e) {
    throw GameFormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

Json to_json(const ReportCertificate& c) {
  Json v = Json::array();
  for (const auto& x : c.vector) v.push_back(x.str());
  return {{"direction", c.direction}, {"lambda", c.lambda.str()}, {"states", c.states},
          {"vector", std::move(v)},   {"context", c.context}};
}

ReportCertificate certificate_from_json(const Json& j) {
  const std::string ctx = "certificate";
  ReportCertificate c;
  c.direction = get_string(j, "direction", ctx);
  if (c.direction != "sub" && c.direction != "super") {
    throw GameFormatError(ctx + ": direction must be \"sub\" or \"super\"");
  }
  try {
    c.lambda = Rational::parse(get_string(j, "lambda", ctx));
    for (const auto& s : member(j, "states", ctx)) c.states.push_back(s.get<std::string>());
    for (const auto& x : member(j, "vector", ctx)) {
      c.vector.push_back(ExtendedScalar::parse(x.get<std::string>()));
    }
    if (j.contains("context")) {
      for (const auto& blk : j.at("context")) {
        c.context.push_back(blk.get<std::vector<std::string>>());
      }
    }
  } catch (const GameFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw GameFormatError(ctx + ": " + e.what());
  }
  if (c.states.size() != c.vector.size()) {
    throw GameFormatError(ctx + ": \"states\" and \"vector\" differ in length");
  }
  return c;
}

namespace {

Json pairs_to_json(const std::vector<std::pair<std::string, std::string>>& v, const char* k1,
                   const char* k2) {
  Json arr = Json::array();
  for (const auto& [a, b] : v) arr.push_back({{k1, a}, {k2, b}});
  return arr;
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const Json& arr, const char* k1,
                                                                 const char* k2) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& rec : arr) out.emplace_back(rec.at(k1).get<std::string>(), rec.at(k2).get<std::string>());
  return out;
}

}  // namespace

Json to_json(const RunReport& r) {
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return {{"command", r.command},
          {"game_type", r.game_type},
          {"stats", std::move(stats)},
          {"verdict", r.verdict},
          {"value", r.value},
          {"state_values", pairs_to_json(r.state_values, "state", "value")},
          {"top_class", r.top_class},
          {"certificates", std::move(certs)},
          {"strategies", pairs_to_json(r.strategies, "state", "choice")},
          {"oracle_calls", r.oracle_calls},
          {"wall_time_s", r.wall_time_s}};
}

RunReport report_from_json(const Json& j) {
  RunReport r;
  try {
    r.command = j.at("command").get<std::string>();
    r.game_type = j.at("game_type").get<std::string>();
    for (const auto& [k, v] : j.at("stats").items()) r.stats.emplace_back(k, v.get<std::string>());
    r.verdict = j.at("verdict").get<std::string>();
    r.value = j.at("value").get<std::string>();
    r.state_values = pairs_from_json(j.at("state_values"), "state", "value");
    r.top_class = j.at("top_class").get<std::vector<std::string>>();
    for (const auto& c : j.at("certificates")) r.certificates.push_back(certificate_from_json(c));
    r.strategies = pairs_from_json(j.at("strategies"), "state", "choice");
    r.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
  } catch (const GameFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw GameFormatError(std::string("report: ") + e.what());
  }
  return r;
}

std::vector<ReportCertificate> certificates_from_json(const Json& j) {
  std::vector<ReportCertificate> out;
  if (j.is_array()) {
    for (const auto& c : j) out.push_back(certificate_from_json(c));
  } else if (j.is_object() && j.contains("certificates")) {
    for (const auto& c : j.at("certificates")) out.push_back(certificate_from_json(c));
  } else {
    out.push_back(certificate_from_json(j));
  }
  return out;
}

}  // namespace mpg
