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

#include "mpg/value_iteration.hpp"

namespace mpg {

InequalityCheck verify_certificate(const ShapleyOracle& oracle, const Certificate& cert) {
  if (!cert.vec.all_finite()) {
    InequalityCheck bad;
    bad.ok = false;
    for (std::size_t i = 0; i < cert.vec.size(); ++i) {
      if (cert.vec[i].is_neg_inf()) {
        bad.violated = i;
        break;
      }
    }
    return bad;
  }
  return oracle.check_inequality(cert.vec, cert.lam, cert.direction);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::MinWinsAll: return "MinWinsAll";
    case Verdict::MaxWinsAll: return "MaxWinsAll";
    case Verdict::Exhausted: return "Exhausted";
  }
  return "?";
}

WinnerVerdict value_iteration(const ShapleyOracle& oracle, std::uint64_t max_iter) {
  if (!oracle.exact()) throw std::invalid_argument("value_iteration needs an exact oracle");
  WinnerVerdict res;
  ExtendedVec u = ExtendedVec::zeros(oracle.dimension());
  const ExtendedScalar zero(0);
  for (std::uint64_t l = 1; l <= max_iter; ++l) {
    u = oracle.eval(u, Rational(0));
    res.iterations = l;
    if (top(u) <= zero) {
      res.outcome = Verdict::MinWinsAll;
      break;
    }
    if (bottom(u) >= zero) {
      res.outcome = Verdict::MaxWinsAll;
      break;
    }
  }
  res.witness = std::move(u);
  return res;
}

WinnerVerdict fp_value_iteration(const ShapleyOracle& oracle, const Rational& eps,
                                 std::uint64_t max_iter) {
  if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
  WinnerVerdict res;
  ExtendedVec u = ExtendedVec::zeros(oracle.dimension());
  const ExtendedScalar zero(0);
  for (std::uint64_t l = 1; l <= max_iter; ++l) {
    u = oracle.eval(u, eps);
    res.iterations = l;
    const Rational slack = Rational(static_cast<long long>(l)) * eps;
    if (top(u) + ExtendedScalar(slack) <= zero) {
      res.outcome = Verdict::MinWinsAll;
      break;
    }
    if (bottom(u) - slack >= zero) {
      res.outcome = Verdict::MaxWinsAll;
      break;
    }
  }
  res.witness = std::move(u);
  return res;
}

namespace {

// Running sup / inf of shifted orbit points.
struct CertificateAccumulator {
  ExtendedVec hi_vec;  // sup_i (-i lam_lo + u_i)
  ExtendedVec lo_vec;  // inf_i (-i lam_hi + u_i)
  Rational lam_lo, lam_hi;

  CertificateAccumulator(std::size_t n, Rational lo, Rational hi)
      : hi_vec(ExtendedVec::zeros(n)), lo_vec(ExtendedVec::zeros(n)),
        lam_lo(std::move(lo)), lam_hi(std::move(hi)) {}

  void add(std::uint64_t i, const ExtendedVec& u) {
    const Rational k(static_cast<long long>(i));
    const Rational a = -(k * lam_lo);
    const Rational b = -(k * lam_hi);
    for (std::size_t j = 0; j < u.size(); ++j) {
      const ExtendedScalar up = u[j] + ExtendedScalar(a);
      const ExtendedScalar dn = u[j] + ExtendedScalar(b);
      if (hi_vec[j] < up) hi_vec[j] = up;
      if (dn < lo_vec[j]) lo_vec[j] = dn;
    }
  }

  std::pair<Certificate, Certificate> finish(const Rational& eps) {
    return {Certificate{lam_lo - eps, std::move(hi_vec), Direction::Sub},
            Certificate{lam_hi + eps, std::move(lo_vec), Direction::Super}};
  }
};

}  // namespace

std::pair<Certificate, Certificate> build_certificates(const std::vector<ExtendedVec>& orbit,
                                                       const Rational& lam_lo,
                                                       const Rational& lam_hi,
                                                       const Rational& eps) {
  if (orbit.empty()) throw std::invalid_argument("empty orbit");
  CertificateAccumulator acc(orbit[0].size(), lam_lo, lam_hi);
  for (std::size_t i = 0; i < orbit.size(); ++i) acc.add(i, orbit[i]);
  return acc.finish(eps);
}

ConstantValueResult approximate_constant_mean_payoff(const ShapleyOracle& oracle,
                                                     const Rational& delta,
                                                     std::uint64_t max_iter) {
  if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
  const std::size_t n = oracle.dimension();
  const Rational eps = delta / Rational(8);
  const Rational threshold = Rational(3, 4) * delta;

  std::vector<ExtendedVec> orbit;
  bool storing = true;
  orbit.push_back(ExtendedVec::zeros(n));

  ExtendedVec u = ExtendedVec::zeros(n);
  std::uint64_t l = 0;
  std::uint64_t calls = 0;
  while (true) {
    if (max_iter != 0 && l >= max_iter) {
      throw IterationLimit("approximate_constant_mean_payoff: no convergence within " +
                           std::to_string(max_iter) + " iterations");
    }
    u = oracle.eval(u, eps);
    ++l;
    ++calls;
    if (!u.all_finite()) throw std::domain_error("operator does not preserve finite vectors");
    if (hilbert_seminorm(u) <= threshold * Rational(static_cast<long long>(l))) break;
    if (storing) {
      if ((orbit.size() + 1) * n > kOrbitMemoryBudget) {
        storing = false;
        orbit.clear();
        orbit.shrink_to_fit();
      } else {
        orbit.push_back(u);
      }
    }
  }

  const Rational ll(static_cast<long long>(l));
  const Rational kappa = bottom(u).value() / ll;
  const Rational lambda = top(u).value() / ll;

  std::pair<Certificate, Certificate> certs;
  if (storing) {
    certs = build_certificates(orbit, kappa, lambda, eps);
  } else {
    CertificateAccumulator acc(n, kappa, lambda);
    ExtendedVec w = ExtendedVec::zeros(n);
    acc.add(0, w);
    for (std::uint64_t i = 1; i < l; ++i) {
      w = oracle.eval(w, eps);
      ++calls;
      acc.add(i, w);
    }
    certs = acc.finish(eps);
  }

  ConstantValueResult res;
  res.interval = RationalInterval(kappa - eps, lambda + eps);
  res.sub = std::move(certs.first);
  res.sup = std::move(certs.second);
  res.iterations = l;
  res.oracle_calls = calls;
  return res;
}

}  // namespace mpg
