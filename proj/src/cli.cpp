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

#include "mpg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mpg/counterexample.hpp"
#include "mpg/game_io.hpp"
#include "mpg/random_games.hpp"

namespace mpg::cli {

std::string decimal(const Rational& r, int digits, bool round_up) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Rational scaled = r * Rational(scale);
  mpz_class z = round_up ? scaled.ceil() : scaled.floor();
  const bool neg = z < 0;
  if (neg) z = -z;
  std::string s = z.get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) {
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  }
  std::string int_part = s.substr(0, s.size() - static_cast<std::size_t>(digits));
  std::string frac = s.substr(s.size() - static_cast<std::size_t>(digits));
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string outs = (neg && (int_part != "0" || !frac.empty()) ? "-" : "") + int_part;
  if (!frac.empty()) outs += "." + frac;
  return outs;
}

namespace {

constexpr int kDigits = 12;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string interval_str(const RationalInterval& iv) {
  return "[" + decimal(iv.lo, kDigits, false) + ", " + decimal(iv.hi, kDigits, true) + "]";
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs fn(i) for i in [0, count) on `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---- reports ---------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> smpg_stats(const StochasticGame& g) {
  const GameStats st = game_stats(g);
  return {{"n", std::to_string(st.n)},
          {"M", std::to_string(st.m)},
          {"W", std::to_string(st.w)},
          {"s", std::to_string(st.s)},
          {"mu", st.mu.get_str()}};
}

std::vector<std::pair<std::string, std::string>> entropy_stats(const EntropyGame& g,
                                                               const RankProfile& rank) {
  return {{"n", std::to_string(g.count(Role::Despot))},
          {"W", std::to_string(g.max_multiplicity())},
          {"r", std::to_string(rank.r)},
          {"r_enumerated", rank.enumerated ? "true" : "false"}};
}

ReportCertificate report_cert(const Certificate& c, std::vector<std::string> states,
                              std::vector<std::vector<std::string>> context = {}) {
  ReportCertificate rc;
  rc.direction = c.direction == Direction::Sub ? "sub" : "super";
  rc.lambda = c.lam;
  rc.states = std::move(states);
  rc.vector = c.vec.entries();
  rc.context = std::move(context);
  return rc;
}

std::vector<std::pair<std::string, std::string>> smpg_strategy_map(const StochasticGame& g,
                                                                   const StrategyPair& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t j = 0; j < p.sigma.size(); ++j) {
    out.emplace_back(g.id(Owner::Min, j), g.id(Owner::Max, p.sigma[j]));
  }
  for (std::size_t i = 0; i < p.tau.size(); ++i) {
    out.emplace_back(g.id(Owner::Max, i), g.id(Owner::Nature, p.tau[i]));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> entropy_strategy_map(const EntropyGame& g,
                                                                      const StrategyPair& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t d = 0; d < p.sigma.size(); ++d) {
    out.emplace_back(g.id(Role::Despot, d), g.id(Role::Tribune, p.sigma[d]));
  }
  for (std::size_t t = 0; t < p.tau.size(); ++t) {
    out.emplace_back(g.id(Role::Tribune, t), g.id(Role::People, p.tau[t]));
  }
  return out;
}

void print_report(const RunReport& r, std::ostream& out) {
  out << "command: " << r.command << "\n";
  out << "game: " << r.game_type;
  for (const auto& [k, v] : r.stats) out << " " << k << "=" << v;
  out << "\n";
  if (!r.verdict.empty()) out << "verdict: " << r.verdict << "\n";
  if (!r.value.empty()) out << "value: " << r.value << "\n";
  if (!r.state_values.empty()) {
    out << "state values:\n";
    for (const auto& [s, v] : r.state_values) out << "  " << s << " " << v << "\n";
  }
  if (!r.top_class.empty()) {
    out << "top class:";
    for (const auto& s : r.top_class) out << " " << s;
    out << "\n";
  }
  if (!r.strategies.empty()) {
    out << "strategies:\n";
    for (const auto& [s, c] : r.strategies) out << "  " << s << " -> " << c << "\n";
  }
  if (!r.certificates.empty()) {
    out << "certificates:\n";
    for (const auto& c : r.certificates) {
      out << "  " << c.direction << " lambda=" << c.lambda.str() << " on";
      for (const auto& s : c.states) out << " " << s;
      out << "\n";
    }
  }
  out << "oracle calls: " << r.oracle_calls << "\n";
  out << "wall time: " << r.wall_time_s << " s\n";
}

void emit(const RunReport& r, bool json, const std::string& path, std::ostream& out) {
  if (!path.empty()) write_text_file(path, to_json(r).dump(2) + "\n");
  if (json) {
    out << to_json(r).dump(2) << "\n";
  } else {
    print_report(r, out);
  }
}

LoadedGame load(const std::string& path) {
  try {
    return load_game_file(path);
  } catch (const GameFormatError& e) {
    throw InputError(e.what());
  }
}

std::vector<std::string> min_ids(const StochasticGame& g, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(g.id(Owner::Min, i));
  return out;
}

std::vector<std::string> despot_ids(const EntropyGame& g, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(g.id(Role::Despot, i));
  return out;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string input;
  std::string mode = "full";
  bool json = false;
  std::uint64_t budget = 0;
  std::string output;
};

int solve_smpg(const StochasticGame& game, const std::string& type, const SolveArgs& a,
               std::ostream& out) {
  const auto t0 = Clock::now();
  RunReport r;
  r.command = "solve --mode " + a.mode;
  r.game_type = type;
  r.stats = smpg_stats(game);
  int code = kExitOk;
  const auto all_min = [&] {
    std::vector<std::size_t> v(game.count(Owner::Min));
    std::iota(v.begin(), v.end(), 0);
    return v;
  };
  if (a.mode == "winner") {
    const WinnerVerdict w = winner(game);
    r.verdict = to_string(w.outcome);
    r.stats.emplace_back("iterations", std::to_string(w.iterations));
    r.oracle_calls = w.iterations;
    if (w.outcome == Verdict::Exhausted) code = kExitExhausted;
  } else if (a.mode == "value") {
    const StochasticValueSolution s = solve_constant_value(game);
    r.verdict = "constant";
    r.value = s.value.str();
    for (std::size_t j = 0; j < game.count(Owner::Min); ++j) {
      r.state_values.emplace_back(game.id(Owner::Min, j), s.value.str());
    }
    r.strategies = smpg_strategy_map(game, s.strategies);
    r.certificates = {report_cert(s.sub, min_ids(game, all_min())),
                      report_cert(s.sup, min_ids(game, all_min()))};
    r.oracle_calls = s.oracle_calls;
  } else if (a.mode == "topclass" || a.mode == "full") {
    const StochasticTopClass tc = solve_top_class(game);
    r.top_class = min_ids(game, tc.top.states);
    r.oracle_calls = tc.oracle_calls;
    if (a.mode == "full") {
      const StochasticGame sub = induced_subgame(game, tc.top.states);
      const StochasticValueSolution s = solve_constant_value(sub);
      r.verdict = "top class value";
      r.value = s.value.str();
      for (const auto& id : r.top_class) r.state_values.emplace_back(id, s.value.str());
      r.strategies = smpg_strategy_map(sub, s.strategies);
      r.certificates = {report_cert(s.sub, r.top_class), report_cert(s.sup, r.top_class)};
      r.oracle_calls += s.oracle_calls;
    } else {
      r.verdict = "top class";
    }
  } else {
    throw InputError("unknown mode \"" + a.mode + "\"");
  }
  r.wall_time_s = seconds_since(t0);
  emit(r, a.json, a.output, out);
  return code;
}

int solve_entropy(const EntropyGame& game, const std::optional<ConvertedAsarin>& asarin,
                  const std::string& type, const SolveArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  RunReport r;
  r.command = "solve --mode " + a.mode;
  r.game_type = type;
  if (a.mode == "winner") {
    throw InputError("--mode winner applies to smpg games only");
  }
  if (a.mode == "topclass") {
    const RankProfile rank = rank_profile(game);
    r.stats = entropy_stats(game, rank);
    const Rational delta = rank.nu_hat.inverse();
    const SepParams params(delta, cw_norm_bound(game.count(Role::Despot),
                                                game.max_multiplicity(), delta));
    auto counting = std::make_shared<CountingOracle>(
        log_domain_oracle(std::make_shared<EntropyGame>(game)), a.budget);
    const TopClassResult tc = top_class(counting, params);
    r.verdict = "top class";
    r.top_class = despot_ids(game, tc.top.states);
    r.oracle_calls = counting->calls();
  } else if (a.mode == "value" || a.mode == "full") {
    EntropySolveOptions opts;
    opts.max_oracle_calls = a.budget;
    const EntropySolution s = solve_entropy_game(game, opts);
    r.stats = entropy_stats(game, s.rank);
    RationalInterval best = s.values.front();
    for (const auto& v : s.values) {
      if (v.hi > best.hi) best = v;
    }
    r.verdict = "solved";
    r.value = interval_str(asarin ? asarin_value(*asarin, s.values) : best);
    for (std::size_t d = 0; d < s.values.size(); ++d) {
      r.state_values.emplace_back(game.id(Role::Despot, d), interval_str(s.values[d]));
    }
    if (!s.blocks.empty()) r.top_class = despot_ids(game, s.blocks.front().states);
    r.strategies = entropy_strategy_map(game, s.strategies);
    for (const auto& b : s.blocks) {
      std::vector<std::vector<std::string>> ctx;
      for (const auto& c : b.context) ctx.push_back(despot_ids(game, c));
      r.certificates.push_back(report_cert(b.sub, despot_ids(game, b.states), ctx));
      r.certificates.push_back(report_cert(b.sup, despot_ids(game, b.states), ctx));
    }
    r.oracle_calls = s.oracle_calls;
  } else {
    throw InputError("unknown mode \"" + a.mode + "\"");
  }
  r.wall_time_s = seconds_since(t0);
  emit(r, a.json, a.output, out);
  return kExitOk;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const LoadedGame lg = load(a.input);
  if (lg.smpg) return solve_smpg(*lg.smpg, to_string(lg.kind), a, out);
  return solve_entropy(*lg.entropy, lg.asarin, to_string(lg.kind), a, out);
}

// ---- certify ---------------------------------------------------------------

struct CertResult {
  bool pass = false;
  std::string detail;
};

// Sorts state indices and permutes the vector to match.
std::pair<std::vector<std::size_t>, ExtendedVec> sorted_coords(std::vector<std::size_t> idx,
                                                              const ExtendedVec& v) {
  std::vector<std::size_t> order(idx.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return idx[x] < idx[y]; });
  std::vector<std::size_t> out_idx;
  ExtendedVec out_vec(idx.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out_idx.push_back(idx[order[k]]);
    out_vec[k] = v[order[k]];
  }
  for (std::size_t k = 1; k < out_idx.size(); ++k) {
    if (out_idx[k] == out_idx[k - 1]) throw InputError("certificate lists a state twice");
  }
  return {out_idx, out_vec};
}

CertResult describe(const InequalityCheck& chk, const std::vector<std::string>& names) {
  if (chk.ok) return {true, "pass"};
  std::string where = chk.violated ? names.at(*chk.violated) : "?";
  return {false, (chk.undecided ? "undecided at " : "fail at ") + where};
}

CertResult certify_smpg(const StochasticGame& game, const ReportCertificate& rc) {
  std::vector<std::size_t> idx;
  for (const auto& s : rc.states) {
    const auto [owner, i] = game.lookup(s);
    if (owner != Owner::Min) throw InputError("certificate state \"" + s + "\" is not a Min state");
    idx.push_back(i);
  }
  if (!rc.context.empty()) throw InputError("smpg certificates take no context");
  auto [sidx, svec] = sorted_coords(idx, ExtendedVec(rc.vector));
  const Certificate cert{rc.lambda, svec, rc.direction == "sub" ? Direction::Sub : Direction::Super};
  OraclePtr oracle = std::make_shared<StochasticExactOracle>(std::make_shared<StochasticGame>(game));
  if (sidx.size() != game.count(Owner::Min)) oracle = restrict(oracle, sidx);
  return describe(verify_certificate(*oracle, cert), min_ids(game, sidx));
}

CertResult certify_entropy(const EntropyGame& game, const ReportCertificate& rc) {
  const auto despot_index = [&](const std::string& s) {
    const auto [role, i] = game.lookup(s);
    if (role != Role::Despot) throw InputError("certificate state \"" + s + "\" is not a Despot state");
    return i;
  };
  std::vector<std::size_t> idx;
  for (const auto& s : rc.states) idx.push_back(despot_index(s));
  auto [sidx, svec] = sorted_coords(idx, ExtendedVec(rc.vector));
  const Certificate cert{rc.lambda, svec, rc.direction == "sub" ? Direction::Sub : Direction::Super};
  EntropyBlock block;
  block.states = sidx;
  for (const auto& ctx : rc.context) {
    std::vector<std::size_t> c;
    for (const auto& s : ctx) c.push_back(despot_index(s));
    std::sort(c.begin(), c.end());
    block.context.push_back(std::move(c));
  }
  return describe(verify_block_certificate(game, block, cert), despot_ids(game, sidx));
}

int cmd_certify(const std::string& input, const std::string& cert_path, bool json,
                std::ostream& out) {
  const LoadedGame lg = load(input);
  std::vector<ReportCertificate> certs;
  try {
    std::ifstream in(cert_path, std::ios::binary);
    if (!in) throw GameFormatError(cert_path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    certs = certificates_from_json(parse_json_text(ss.str(), cert_path));
  } catch (const GameFormatError& e) {
    throw InputError(e.what());
  }
  if (certs.empty()) throw InputError(cert_path + ": no certificates");
  Json results = Json::array();
  std::size_t failed = 0;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    CertResult res;
    try {
      res = lg.smpg ? certify_smpg(*lg.smpg, certs[i]) : certify_entropy(*lg.entropy, certs[i]);
    } catch (const GameFormatError& e) {
      throw InputError("certificate " + std::to_string(i + 1) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError("certificate " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!res.pass) ++failed;
    if (json) {
      results.push_back({{"index", i + 1},
                         {"direction", certs[i].direction},
                         {"lambda", certs[i].lambda.str()},
                         {"pass", res.pass},
                         {"detail", res.detail}});
    } else {
      out << "certificate " << i + 1 << " (" << certs[i].direction
          << ", lambda=" << certs[i].lambda.str() << "): " << res.detail << "\n";
    }
  }
  if (json) {
    out << Json{{"command", "certify"},
                {"verdict", failed == 0 ? "pass" : "fail"},
                {"results", results}}
               .dump(2)
        << "\n";
  } else {
    out << (failed == 0 ? "verdict: pass" : "verdict: fail") << "\n";
  }
  return failed == 0 ? kExitOk : kExitCertFail;
}

// ---- brute -----------------------------------------------------------------

struct BruteArgs {
  std::string input;
  bool json = false;
  std::uint64_t budget = 1000000;
  unsigned jobs = 1;
  std::string tol;
  std::string csv;
};

std::string join_map(const std::vector<std::pair<std::string, std::string>>& m, std::size_t from,
                     std::size_t to) {
  std::string s;
  for (std::size_t i = from; i < to; ++i) {
    if (!s.empty()) s += ";";
    s += m[i].first + ":" + m[i].second;
  }
  return s;
}

int cmd_brute(const BruteArgs& a, std::ostream& out) {
  const LoadedGame lg = load(a.input);
  const auto t0 = Clock::now();
  RunReport r;
  r.command = "brute";
  r.game_type = to_string(lg.kind);
  std::ostringstream csv;
  if (lg.smpg) {
    const StochasticGame& g = *lg.smpg;
    const BruteForceValues bf = brute_force_values(g, a.budget, a.jobs, !a.csv.empty());
    r.stats = smpg_stats(g);
    r.stats.emplace_back("pairs", std::to_string(strategy_pair_count(g)));
    Rational best = bf.chi.front();
    for (const auto& v : bf.chi) best = max(best, v);
    r.verdict = "enumerated";
    r.value = best.str();
    for (std::size_t j = 0; j < bf.chi.size(); ++j) {
      r.state_values.emplace_back(g.id(Owner::Min, j), bf.chi[j].str());
      if (bf.chi[j] == best) r.top_class.push_back(g.id(Owner::Min, j));
    }
    csv << "pair,sigma,tau,state,value\n";
    for (std::size_t p = 0; p < bf.pairs.size(); ++p) {
      const auto m = smpg_strategy_map(g, bf.pairs[p].pair);
      const std::string sig = join_map(m, 0, g.count(Owner::Min));
      const std::string tau = join_map(m, g.count(Owner::Min), m.size());
      for (std::size_t j = 0; j < bf.pairs[p].gains.size(); ++j) {
        csv << p << "," << sig << "," << tau << "," << g.id(Owner::Min, j) << ","
            << bf.pairs[p].gains[j].str() << "\n";
      }
    }
  } else {
    const EntropyGame& g = *lg.entropy;
    std::optional<Rational> width;
    if (!a.tol.empty()) width = Rational::parse(a.tol);
    const EntropyBruteForce bf = brute_force_entropy_values(g, a.budget, a.jobs, !a.csv.empty(), width);
    r.stats = entropy_stats(g, bf.rank);
    r.stats.emplace_back("pairs", std::to_string(entropy_pair_count(g)));
    r.stats.emplace_back("width", decimal(bf.width, 30, true));
    RationalInterval best = bf.chi.front();
    for (const auto& v : bf.chi) {
      if (v.hi > best.hi) best = v;
    }
    r.verdict = "enumerated";
    r.value = interval_str(lg.asarin ? asarin_value(*lg.asarin, bf.chi) : best);
    for (std::size_t d = 0; d < bf.chi.size(); ++d) {
      r.state_values.emplace_back(g.id(Role::Despot, d), interval_str(bf.chi[d]));
      if (bf.chi[d].overlaps(best)) r.top_class.push_back(g.id(Role::Despot, d));
    }
    csv << "pair,sigma,tau,state,lo,hi\n";
    for (std::size_t p = 0; p < bf.pairs.size(); ++p) {
      const auto m = entropy_strategy_map(g, bf.pairs[p].pair);
      const std::string sig = join_map(m, 0, g.count(Role::Despot));
      const std::string tau = join_map(m, g.count(Role::Despot), m.size());
      for (std::size_t d = 0; d < bf.pairs[p].values.size(); ++d) {
        csv << p << "," << sig << "," << tau << "," << g.id(Role::Despot, d) << ","
            << decimal(bf.pairs[p].values[d].lo, kDigits, false) << ","
            << decimal(bf.pairs[p].values[d].hi, kDigits, true) << "\n";
      }
    }
  }
  if (!a.csv.empty()) write_text_file(a.csv, csv.str());
  r.wall_time_s = seconds_since(t0);
  emit(r, a.json, "", out);
  return kExitOk;
}

// ---- gen-cex ---------------------------------------------------------------

struct CexArgs {
  std::size_t n = 3;
  std::int64_t w = 4;
  std::string output;
  std::size_t flip = 0;
  std::string tol = "1/1000000";
  bool json = false;
  std::string csv;
};

int cmd_gen_cex(const CexArgs& a, std::ostream& out) {
  if (a.n < 2) throw InputError("gen-cex needs n >= 2");
  if (a.w < 1) throw InputError("gen-cex needs W >= 1");
  const auto t0 = Clock::now();
  const CexGame cex = build_cex_game(a.n, a.w);
  const std::string game_text = to_json(cex.game).dump(2) + "\n";
  if (!a.output.empty()) write_text_file(a.output, game_text);
  const RationalInterval ks = k_star(a.n, a.w, Rational::parse(a.tol));
  RunReport r;
  r.command = "gen-cex " + std::to_string(a.n) + " " + std::to_string(a.w);
  r.game_type = "entropy";
  r.stats = {{"n", std::to_string(a.n)},
             {"W", std::to_string(a.w)},
             {"alpha", std::to_string(cex.alpha)},
             {"people", std::to_string(cex.game.count(Role::People))},
             {"significant_people", std::to_string(cex.significant_people)},
             {"significant_tribune", std::to_string(cex.significant_tribune)},
             {"k_star", interval_str(ks)}};
  r.value = interval_str(ks);
  std::string trace_csv;
  if (a.flip > 0) {
    const FlipTrace tr = horizon_flip(a.n, a.w, a.flip);
    r.verdict = tr.flip ? "flip at k=" + std::to_string(*tr.flip)
                        : "no flip up to k=" + std::to_string(a.flip);
    trace_csv = flip_csv(tr);
    if (!a.csv.empty()) write_text_file(a.csv, trace_csv);
  } else {
    r.verdict = "generated";
  }
  r.wall_time_s = seconds_since(t0);
  if (a.json) {
    out << to_json(r).dump(2) << "\n";
  } else {
    if (a.output.empty()) out << game_text;
    print_report(r, out);
    if (a.csv.empty()) out << trace_csv;
  }
  return kExitOk;
}

// ---- gen-random ------------------------------------------------------------

struct RandomArgs {
  std::string type = "smpg";
  std::uint64_t seed = 1;
  std::size_t max_states = 3;
  std::int64_t max_weight = 0;  // 0 = generator default
  std::string output;
};

int cmd_gen_random(const RandomArgs& a, std::ostream& out) {
  Rng rng(a.seed);
  Json j;
  if (a.type == "smpg") {
    RandomSmpgOptions o;
    o.max_states = a.max_states;
    if (a.max_weight > 0) o.max_payoff = a.max_weight;
    j = to_json(random_smpg(rng, o));
  } else if (a.type == "entropy") {
    RandomEntropyOptions o;
    o.max_states = a.max_states;
    if (a.max_weight > 0) o.max_multiplicity = a.max_weight;
    j = to_json(random_entropy(rng, o));
  } else {
    throw InputError("--type must be smpg or entropy");
  }
  const std::string text = j.dump(2) + "\n";
  if (a.output.empty()) {
    out << text;
  } else {
    write_text_file(a.output, text);
  }
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string suite = "smpg";
  std::size_t count = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::uint64_t budget = 0;
  std::size_t max_w = 16;
  std::size_t flip = 400;
  std::string csv;
};

std::vector<std::size_t> sorted_indices(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::ostringstream csv;
  if (a.suite == "smpg") {
    csv << "instance,n,M,W,s,pairs,topclass_calls,topclass_s,brute_s,status\n";
    Rng rng(a.seed);
    for (std::size_t i = 0; i < a.count; ++i) {
      const StochasticGame g = random_smpg(rng);
      const GameStats st = game_stats(g);
      auto t0 = Clock::now();
      const BruteForceValues bf = brute_force_values(g, kDefaultPairBudget, a.jobs, false);
      const double brute_s = seconds_since(t0);
      t0 = Clock::now();
      const StochasticTopClass tc = solve_top_class(g);
      const double tc_s = seconds_since(t0);
      Rational best = bf.chi.front();
      for (const auto& v : bf.chi) best = max(best, v);
      std::vector<std::size_t> argmax;
      for (std::size_t j = 0; j < bf.chi.size(); ++j) {
        if (bf.chi[j] == best) argmax.push_back(j);
      }
      bool agree = sorted_indices(tc.top.states) == argmax;
      if (agree && argmax.size() == bf.chi.size()) agree = solve_constant_value(g).value == best;
      csv << i << "," << st.n << "," << st.m << "," << st.w << "," << st.s << ","
          << strategy_pair_count(g) << "," << tc.oracle_calls << "," << tc_s << "," << brute_s
          << "," << (agree ? "agree" : "mismatch") << "\n";
    }
  } else if (a.suite == "entropy") {
    csv << "instance,n,W,r,pairs,brute_s,solve_calls,solve_s,status\n";
    Rng rng(a.seed);
    for (std::size_t i = 0; i < a.count; ++i) {
      const EntropyGame g = random_entropy(rng);
      auto t0 = Clock::now();
      const EntropyBruteForce bf = brute_force_entropy_values(g, kDefaultPairBudget, a.jobs, false);
      const double brute_s = seconds_since(t0);
      t0 = Clock::now();
      EntropySolveOptions opts;
      opts.max_oracle_calls = a.budget;
      std::string status;
      std::uint64_t calls = 0;
      try {
        const EntropySolution s = solve_entropy_game(g, opts);
        calls = s.oracle_calls;
        bool agree = true;
        for (std::size_t d = 0; d < bf.chi.size(); ++d) agree = agree && s.values[d].overlaps(bf.chi[d]);
        status = agree ? "agree" : "mismatch";
      } catch (const BudgetExceeded&) {
        calls = a.budget;
        status = "budget";
      }
      csv << i << "," << g.count(Role::Despot) << "," << g.max_multiplicity() << ","
          << bf.rank.r << "," << entropy_pair_count(g) << "," << brute_s << "," << calls << ","
          << seconds_since(t0) << "," << status << "\n";
    }
  } else if (a.suite == "cex") {
    struct Row {
      std::size_t n;
      std::int64_t w;
      RationalInterval ks;
      std::optional<std::size_t> flip;
    };
    std::vector<Row> rows;
    for (std::size_t n = 2; n <= 3; ++n) {
      for (std::size_t w = 1; w <= a.max_w; ++w) rows.push_back({n, static_cast<std::int64_t>(w), {}, {}});
    }
    parallel_for(rows.size(), a.jobs, [&](std::size_t i) {
      rows[i].ks = k_star(rows[i].n, rows[i].w, Rational(1, 1000000));
      rows[i].flip = horizon_flip(rows[i].n, rows[i].w, a.flip).flip;
    });
    csv << "n,W,k_star_lo,k_star_hi,flip_horizon\n";
    for (const auto& row : rows) {
      csv << row.n << "," << row.w << "," << decimal(row.ks.lo, 6, false) << ","
          << decimal(row.ks.hi, 6, true) << "," << (row.flip ? std::to_string(*row.flip) : "none")
          << "\n";
    }
  } else {
    throw InputError("--suite must be smpg, entropy or cex");
  }
  if (a.csv.empty()) {
    out << csv.str();
  } else {
    write_text_file(a.csv, csv.str());
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-payoff and entropy game solver"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  SolveArgs solve;
  auto* sc_solve = app.add_subcommand("solve", "Solve a game file");
  sc_solve->add_option("input", solve.input, "Game file (JSON)")->required();
  sc_solve->add_option("--mode", solve.mode, "winner, value, topclass or full")
      ->check(CLI::IsMember({"winner", "value", "topclass", "full"}));
  sc_solve->add_flag("--json", solve.json, "Print the report as JSON");
  sc_solve->add_option("--budget", solve.budget, "Oracle-call budget for entropy games (0 = none)");
  sc_solve->add_option("-o,--output", solve.output, "Also write the JSON report to this file");

  std::string cert_input, cert_file;
  bool cert_json = false;
  auto* sc_cert = app.add_subcommand("certify", "Re-verify certificates exactly");
  sc_cert->add_option("input", cert_input, "Game file (JSON)")->required();
  sc_cert->add_option("certificates", cert_file, "Report or certificate file (JSON)")->required();
  sc_cert->add_flag("--json", cert_json, "Print results as JSON");

  BruteArgs brute;
  auto* sc_brute = app.add_subcommand("brute", "Ground-truth values by strategy enumeration");
  sc_brute->add_option("input", brute.input, "Game file (JSON)")->required();
  sc_brute->add_flag("--json", brute.json, "Print the report as JSON");
  sc_brute->add_option("--budget", brute.budget, "Maximum number of strategy pairs");
  sc_brute->add_option("--jobs", brute.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sc_brute->add_option("--tol", brute.tol, "Entropy bracket width (default 1/(4 nu_hat))");
  sc_brute->add_option("-o,--csv", brute.csv, "Write the per-pair table (CSV) to this file");

  CexArgs cex;
  auto* sc_cex = app.add_subcommand("gen-cex", "Generate the lower-bound entropy game");
  sc_cex->add_option("n", cex.n, "Size of the left block (n >= 2)")->required();
  sc_cex->add_option("W", cex.w, "Weight (W >= 1)")->required();
  sc_cex->add_option("path", cex.output, "Game output path (default: stdout)");
  sc_cex->add_option("-o", cex.output, "Game output path");
  sc_cex->add_option("--flip", cex.flip, "Horizon-flip trace up to this k");
  sc_cex->add_option("--tol", cex.tol, "Width of the k* bracket");
  sc_cex->add_option("--csv", cex.csv, "Write the flip trace to this file");
  sc_cex->add_flag("--json", cex.json, "Print the report as JSON");

  RandomArgs rnd;
  auto* sc_rnd = app.add_subcommand("gen-random", "Generate a random game");
  sc_rnd->add_option("--type", rnd.type, "smpg or entropy")->check(CLI::IsMember({"smpg", "entropy"}));
  sc_rnd->add_option("--seed", rnd.seed, "Generator seed");
  sc_rnd->add_option("--max-states", rnd.max_states, "States per owner, at most")
      ->check(CLI::PositiveNumber);
  sc_rnd->add_option("--max-weight", rnd.max_weight, "Payoff or multiplicity bound");
  sc_rnd->add_option("-o,--output", rnd.output, "Output path (default: stdout)");

  BenchArgs bench;
  auto* sc_bench = app.add_subcommand("bench", "Seeded benchmark sweeps (CSV)");
  sc_bench->add_option("--suite", bench.suite, "smpg, entropy or cex")
      ->check(CLI::IsMember({"smpg", "entropy", "cex"}));
  sc_bench->add_option("--count", bench.count, "Number of random instances");
  sc_bench->add_option("--seed", bench.seed, "Generator seed");
  sc_bench->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sc_bench->add_option("--budget", bench.budget, "Entropy oracle-call budget (0 = none)");
  sc_bench->add_option("--max-w", bench.max_w, "cex suite: largest W");
  sc_bench->add_option("--flip", bench.flip, "cex suite: horizon limit");
  sc_bench->add_option("-o,--csv", bench.csv, "Write the CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sc_solve) return cmd_solve(solve, out);
    if (*sc_cert) return cmd_certify(cert_input, cert_file, cert_json, out);
    if (*sc_brute) return cmd_brute(brute, out);
    if (*sc_cex) return cmd_gen_cex(cex, out);
    if (*sc_rnd) return cmd_gen_random(rnd, out);
    if (*sc_bench) return cmd_bench(bench, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const GameFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const PreconditionViolated& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace mpg::cli
