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

#ifndef MPG_MPFR_UTIL_HPP_
#define MPG_MPFR_UTIL_HPP_

#include <mpfr.h>

#include "mpg/rational.hpp"

namespace mpg {

class Mpfr {
 public:
  explicit Mpfr(long prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

inline void set_rational(Mpfr& dst, const Rational& q, mpfr_rnd_t rnd) {
  const mpq_class m = q.to_mpq();
  mpfr_set_q(dst.get(), m.get_mpq_t(), rnd);
}

// Exact: MPFR values are dyadic.
inline Rational to_rational(const Mpfr& v) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v.get());
  return Rational(q);
}

// log of a positive rational, rounded in direction rnd.
inline Rational log_rounded(const Rational& q, long prec, mpfr_rnd_t rnd) {
  Mpfr t(prec);
  set_rational(t, q, rnd);
  mpfr_log(t.get(), t.get(), rnd);
  return to_rational(t);
}

}  // namespace mpg

#endif  // MPG_MPFR_UTIL_HPP_
