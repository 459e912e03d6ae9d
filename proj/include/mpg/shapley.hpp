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

#ifndef MPG_SHAPLEY_HPP_
#define MPG_SHAPLEY_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mpg/extended.hpp"

namespace mpg {

enum class Direction { Sub, Super };

// Result of checking lam + v <= F(v) (Sub) or lam + v >= F(v) (Super).
struct InequalityCheck {
  bool ok = true;
  std::optional<std::size_t> violated;  // first failing coordinate
  bool undecided = false;               // numerics could not settle it
};

// eps-approximate evaluator of an order-preserving, additively homogeneous
// map on (Q u {-inf})^n. Implementations must be safe for concurrent eval
// and deterministic per input.
class ShapleyOracle {
 public:
  virtual ~ShapleyOracle() = default;

  virtual std::size_t dimension() const = 0;

  // |F_j(x) - eval(x, eps)_j| <= eps on finite coordinates; -inf exactly
  // where F_j(x) = -inf. eps = 0 is accepted only when exact() is true.
  virtual ExtendedVec eval(const ExtendedVec& x, const Rational& eps) const = 0;

  // True when eval(x, 0) is exact.
  virtual bool exact() const { return false; }

  // Certificate inequality, decided with exact or certified arithmetic, on
  // the coordinates listed in `only` (all when null). The default uses
  // eval(v, 0) and needs exact().
  virtual InequalityCheck check_inequality(const ExtendedVec& v, const Rational& lam,
                                           Direction dir,
                                           const std::vector<std::size_t>* only = nullptr) const;
};

using OraclePtr = std::shared_ptr<const ShapleyOracle>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// F^S = p^S o F o i^S over the sorted subset S of the parent's indices.
class RestrictedOracle final : public ShapleyOracle {
 public:
  RestrictedOracle(OraclePtr parent, std::vector<std::size_t> subset);

  std::size_t dimension() const override { return subset_.size(); }
  ExtendedVec eval(const ExtendedVec& x, const Rational& eps) const override;
  bool exact() const override { return parent_->exact(); }
  InequalityCheck check_inequality(const ExtendedVec& v, const Rational& lam, Direction dir,
                                   const std::vector<std::size_t>* only = nullptr) const override;

  // Indices into parent().
  const std::vector<std::size_t>& subset() const { return subset_; }
  const OraclePtr& parent() const { return parent_; }

 private:
  ExtendedVec pad(const ExtendedVec& x) const;

  OraclePtr parent_;
  std::vector<std::size_t> subset_;
  std::size_t parent_dim_;
};

// Counts eval calls and raises BudgetExceeded past an optional limit.
class CountingOracle final : public ShapleyOracle {
 public:
  explicit CountingOracle(OraclePtr inner, std::uint64_t limit = 0)
      : inner_(std::move(inner)), limit_(limit) {}

  std::size_t dimension() const override { return inner_->dimension(); }
  ExtendedVec eval(const ExtendedVec& x, const Rational& eps) const override;
  bool exact() const override { return inner_->exact(); }
  InequalityCheck check_inequality(const ExtendedVec& v, const Rational& lam, Direction dir,
                                   const std::vector<std::size_t>* only = nullptr) const override {
    return inner_->check_inequality(v, lam, dir, only);
  }

  std::uint64_t calls() const { return calls_.load(); }
  void reset() { calls_ = 0; }

 private:
  OraclePtr inner_;
  std::uint64_t limit_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Exact oracle from a callable; used for hand-written maps.
class FunctionOracle final : public ShapleyOracle {
 public:
  using Fn = std::function<ExtendedVec(const ExtendedVec&)>;
  FunctionOracle(std::size_t n, Fn fn) : n_(n), fn_(std::move(fn)) {}

  std::size_t dimension() const override { return n_; }
  ExtendedVec eval(const ExtendedVec& x, const Rational&) const override { return fn_(x); }
  bool exact() const override { return true; }

 private:
  std::size_t n_;
  Fn fn_;
};

// Restriction; restricting a restriction composes the index maps.
OraclePtr restrict(const OraclePtr& oracle, const std::vector<std::size_t>& subset);

bool is_dominion(const OraclePtr& oracle, const std::vector<std::size_t>& subset);

}  // namespace mpg

#endif  // MPG_SHAPLEY_HPP_
