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

#include "mpg/shapley.hpp"

#include <algorithm>
#include <string>

namespace mpg {

InequalityCheck ShapleyOracle::check_inequality(const ExtendedVec& v, const Rational& lam,
                                                Direction dir,
                                                const std::vector<std::size_t>* only) const {
  if (!exact()) throw std::logic_error("check_inequality needs an exact oracle");
  if (v.size() != dimension()) throw std::invalid_argument("certificate dimension mismatch");
  const ExtendedVec fv = eval(v, Rational(0));
  InequalityCheck res;
  auto check = [&](std::size_t j) {
    const ExtendedScalar lhs = v[j] + ExtendedScalar(lam);
    const bool good = dir == Direction::Sub ? lhs <= fv[j] : lhs >= fv[j];
    if (!good && res.ok) {
      res.ok = false;
      res.violated = j;
    }
  };
  if (only) {
    for (std::size_t j : *only) check(j);
  } else {
    for (std::size_t j = 0; j < v.size(); ++j) check(j);
  }
  return res;
}

RestrictedOracle::RestrictedOracle(OraclePtr parent, std::vector<std::size_t> subset)
    : parent_(std::move(parent)), subset_(std::move(subset)) {
  if (subset_.empty()) throw std::invalid_argument("restriction to an empty subset");
  parent_dim_ = parent_->dimension();
  std::sort(subset_.begin(), subset_.end());
  if (std::adjacent_find(subset_.begin(), subset_.end()) != subset_.end()) {
    throw std::invalid_argument("restriction subset has duplicates");
  }
  if (subset_.back() >= parent_dim_) {
    throw std::invalid_argument("restriction index " + std::to_string(subset_.back()) +
                                " out of range");
  }
}

ExtendedVec RestrictedOracle::pad(const ExtendedVec& x) const {
  if (x.size() != subset_.size()) throw std::invalid_argument("restricted vector size mismatch");
  ExtendedVec full(parent_dim_, ExtendedScalar::neg_inf());
  for (std::size_t i = 0; i < subset_.size(); ++i) full[subset_[i]] = x[i];
  return full;
}

ExtendedVec RestrictedOracle::eval(const ExtendedVec& x, const Rational& eps) const {
  const ExtendedVec y = parent_->eval(pad(x), eps);
  ExtendedVec r(subset_.size());
  for (std::size_t i = 0; i < subset_.size(); ++i) r[i] = y[subset_[i]];
  return r;
}

InequalityCheck RestrictedOracle::check_inequality(const ExtendedVec& v, const Rational& lam,
                                                   Direction dir,
                                                   const std::vector<std::size_t>* only) const {
  std::vector<std::size_t> coords;
  if (only) {
    for (std::size_t j : *only) coords.push_back(subset_.at(j));
  } else {
    coords = subset_;
  }
  InequalityCheck res = parent_->check_inequality(pad(v), lam, dir, &coords);
  if (res.violated) {
    auto it = std::lower_bound(subset_.begin(), subset_.end(), *res.violated);
    res.violated = static_cast<std::size_t>(it - subset_.begin());
  }
  return res;
}

ExtendedVec CountingOracle::eval(const ExtendedVec& x, const Rational& eps) const {
  const std::uint64_t c = ++calls_;
  if (limit_ != 0 && c > limit_) {
    throw BudgetExceeded("oracle call budget of " + std::to_string(limit_) + " exceeded");
  }
  return inner_->eval(x, eps);
}

OraclePtr restrict(const OraclePtr& oracle, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw std::invalid_argument("restriction to an empty subset");
  if (auto* r = dynamic_cast<const RestrictedOracle*>(oracle.get())) {
    std::vector<std::size_t> composed;
    composed.reserve(subset.size());
    for (std::size_t i : subset) composed.push_back(r->subset().at(i));
    return std::make_shared<RestrictedOracle>(r->parent(), std::move(composed));
  }
  return std::make_shared<RestrictedOracle>(oracle, subset);
}

bool is_dominion(const OraclePtr& oracle, const std::vector<std::size_t>& subset) {
  const OraclePtr r = restrict(oracle, subset);
  return r->eval(ExtendedVec::zeros(subset.size()), Rational(1)).all_finite();
}

}  // namespace mpg
