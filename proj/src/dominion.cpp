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

#include "mpg/dominion.hpp"

#include <algorithm>
#include <limits>

namespace mpg {

SepParams::SepParams(Rational d, Rational bound) : delta(std::move(d)), r(std::move(bound)) {
  if (delta.sign() <= 0) throw std::invalid_argument("SepParams: delta must be positive");
  if (r.sign() <= 0) throw std::invalid_argument("SepParams: R must be positive");
}

ConstantValueDecision decide_constant_value(const ShapleyOracle& oracle, const SepParams& params) {
  const std::size_t n = oracle.dimension();
  const Rational eps = params.delta / Rational(8);
  const Rational threshold = Rational(3, 4) * params.delta;
  const mpz_class cap_z = (Rational(8) * params.r / params.delta).ceil() + 1;
  const std::uint64_t cap = cap_z.fits_ulong_p() ? cap_z.get_ui()
                                                 : std::numeric_limits<std::uint64_t>::max();
  ConstantValueDecision res;
  ExtendedVec u = ExtendedVec::zeros(n);
  std::uint64_t l = 0;
  while (true) {
    u = oracle.eval(u, eps);
    ++l;
    if (!u.all_finite()) throw std::domain_error("operator does not preserve finite vectors");
    // Gap test first: a passing gap at the cap still certifies constancy.
    if (hilbert_seminorm(u) <= threshold * Rational(static_cast<long long>(l))) break;
    if (l >= cap) {
      res.constant = false;
      const ExtendedScalar b = bottom(u);
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == b) res.low_set.push_back(i);
      }
      break;
    }
  }
  res.iterations = l;
  return res;
}

std::vector<std::size_t> extend(const OraclePtr& oracle, const Dominion& dominion,
                                const std::vector<std::size_t>& seed) {
  if (seed.empty()) throw std::invalid_argument("extend: empty seed");
  const std::vector<std::size_t>& d = dominion.states;
  std::vector<char> in_set(d.size(), 0);
  std::size_t count = 0;
  for (std::size_t s : seed) {
    auto it = std::lower_bound(d.begin(), d.end(), s);
    if (it == d.end() || *it != s) throw std::invalid_argument("extend: seed outside dominion");
    const std::size_t k = static_cast<std::size_t>(it - d.begin());
    if (!in_set[k]) {
      in_set[k] = 1;
      ++count;
    }
  }
  const OraclePtr fd = restrict(oracle, d);
  while (count < d.size()) {
    ExtendedVec x(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (in_set[k]) x[k] = ExtendedScalar::neg_inf();
    }
    const ExtendedVec y = fd->eval(x, Rational(1));
    bool grew = false;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (!in_set[k] && y[k].is_neg_inf()) {
        in_set[k] = 1;
        ++count;
        grew = true;
      }
    }
    if (!grew) break;
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (in_set[k]) out.push_back(d[k]);
  }
  return out;
}

TopClassResult top_class(const OraclePtr& oracle, const SepParams& params) {
  TopClassResult res;
  Dominion d;
  d.states.resize(oracle->dimension());
  for (std::size_t i = 0; i < d.states.size(); ++i) d.states[i] = i;
  while (true) {
    res.chain.push_back(d);
    ++res.loop_iterations;
    const OraclePtr fd = restrict(oracle, d.states);
    const ConstantValueDecision dec = decide_constant_value(*fd, params);
    if (dec.constant) break;
    std::vector<std::size_t> seed;
    for (std::size_t k : dec.low_set) seed.push_back(d.states[k]);
    const std::vector<std::size_t> ext = extend(oracle, d, seed);
    std::vector<std::size_t> rest;
    std::set_difference(d.states.begin(), d.states.end(), ext.begin(), ext.end(),
                        std::back_inserter(rest));
    if (rest.empty()) {
      throw std::logic_error("top_class: dominion exhausted; separation parameters invalid");
    }
    d.states = std::move(rest);
  }
  res.top = d;
  return res;
}

mpz_class top_class_call_budget(std::size_t n, const SepParams& params) {
  const mpz_class nn(static_cast<unsigned long>(n));
  return nn * nn + nn * (Rational(8) * params.r / params.delta).ceil();
}

}  // namespace mpg
