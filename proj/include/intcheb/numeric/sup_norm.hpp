#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "intcheb/core/interval.hpp"
#include "intcheb/numeric/roots.hpp"

namespace intcheb {

struct SupNormResult {
  Rational lower, upper;  // exact rational bounds on max_I |P|
  Rational argmax;        // point where |P| >= lower
  Enclosure enclosure() const { return Enclosure::between(lower, upper); }
};

namespace detail {

/// Upper bound on |P| over [x0 - rho, x0 + rho] from the exact Taylor expansion at x0.
inline Rational taylor_bound(const RatPoly& P, const Rational& x0, const Rational& rho) {
  RatPoly t = taylor_shift(P, x0);
  Rational acc = 0, pw = 1;
  for (const auto& c : t.coeffs()) {
    acc += abs(c) * pw;
    pw *= rho;
  }
  return acc;
}

/// A short real interval [x0 - rho, x0 + rho] inside I that contains a real
/// point of the root disc, or nothing if the disc misses I on the real axis.
struct CriticalSegment {
  Rational x0, rho;
};

inline std::vector<CriticalSegment> critical_segments(const RootSet& rs, const Interval& I) {
  std::vector<CriticalSegment> out;
  for (std::size_t k = 0; k < rs.roots.size(); ++k) {
    const Root& r = rs.roots[k];
    if (k > 0 && r.multiplicity > 1 && rs.roots[k - 1].center.re == r.center.re &&
        rs.roots[k - 1].center.im == r.center.im)
      continue;  // repeated entry of a multiple root
    if (r.exact) {
      if (I.contains(*r.exact)) out.push_back({*r.exact, Rational(0)});
      continue;
    }
    if (abs(r.center.im) > r.radius) continue;  // disc misses the real axis
    Rational rad = r.radius.to_rational();
    // Round the center to a dyadic with a few bits below the radius.
    long bits = 64;
    if (rad > 0) {
      double ratio = std::max(1.0, std::abs(r.center.re.to_double())) / rad.get_d();
      bits = std::clamp<long>(static_cast<long>(std::log2(ratio)) + 16, 64, r.center.re.precision());
    }
    Rational c = r.center.re.with_precision(bits).to_rational();
    Rational off = abs(c - r.center.re.to_rational());
    Rational lo = c - rad - off, hi = c + rad + off;
    if (lo < I.a()) lo = I.a();
    if (hi > I.b()) hi = I.b();
    if (lo > hi) continue;
    Rational x0 = std::clamp(c, lo, hi);
    out.push_back({x0, std::max(x0 - lo, hi - x0)});
  }
  return out;
}

}  // namespace detail

/// Two-sided enclosure of max_{x in I} |P(x)| with relative width <= eps.
/// The maximum sits at an endpoint or at a real critical point; every
/// critical point lies in a certified root disc of P', and |P| on the real
/// trace of each disc is bounded by an exact Taylor sum.
inline SupNormResult sup_norm_detail(const RatPoly& P, const Interval& I, double eps = 1e-12) {
  if (!(eps > 0)) throw PreconditionError("invalid_parameter", "eps must be positive");
  SupNormResult res;
  auto consider_point = [&](const Rational& x) {
    Rational v = abs(P(x));
    if (v > res.lower) {
      res.lower = v;
      res.argmax = x;
    }
    if (v > res.upper) res.upper = v;
  };
  res.argmax = I.a();
  consider_point(I.a());
  consider_point(I.b());
  const Rational endpoint_max = res.upper;
  if (P.degree() < 2) return res;

  IntPoly dp = primitive_part(P.derivative());
  double root_eps = std::min(1e-16, eps * 1e-4);
  for (int round = 0;; ++round) {
    RootSet rs = find_roots(dp, root_eps);
    Rational upper = endpoint_max;
    for (const auto& seg : detail::critical_segments(rs, I)) {
      consider_point(seg.x0);
      Rational b = seg.rho == 0 ? abs(P(seg.x0)) : detail::taylor_bound(P, seg.x0, seg.rho);
      if (b > upper) upper = b;
    }
    res.upper = upper;
    if (res.upper == 0 || (res.upper - res.lower) <= Rational(eps) * res.upper || round >= 4) {
      if ((res.upper - res.lower) > Rational(eps) * res.upper)
        throw PrecisionExhausted("sup_norm enclosure wider than requested eps");
      return res;
    }
    root_eps = root_eps * root_eps;
  }
}

inline SupNormResult sup_norm_detail(const IntPoly& P, const Interval& I, double eps = 1e-12) {
  return sup_norm_detail(to_rational(P), I, eps);
}

inline Enclosure sup_norm(const RatPoly& P, const Interval& I, double eps = 1e-12) {
  return sup_norm_detail(P, I, eps).enclosure();
}
inline Enclosure sup_norm(const IntPoly& P, const Interval& I, double eps = 1e-12) {
  return sup_norm_detail(P, I, eps).enclosure();
}

/// Result of maximizing U(x) = sum_i w_i log|Q_i(x)| over an interval.
struct PotentialMax {
  Enclosure value;  // encloses max_I U
  Rational argmax;  // U(argmax) >= value.lower()
};

namespace detail {

/// sum_i w_i log|Q_i(x)| rounded in direction `rnd` (-inf if some Q_i(x) = 0).
inline Real log_potential_at(const std::vector<IntPoly>& Q, const std::vector<Rational>& w, const Rational& x,
                             mpfr_rnd_t rnd, mpfr_prec_t prec = 128) {
  Real acc(0.0, prec);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (w[i] == 0) continue;
    Rational v = abs(Q[i](x));
    if (v == 0) return Real::infinity(-1, prec);
    Real lv = log(Real(v, prec, rnd), rnd);
    Real wr(w[i], prec, lv.sign() >= 0 ? rnd : (rnd == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD));
    acc = Real::add(acc, Real::mul(wr, lv, rnd), rnd);
  }
  return acc;
}

/// Upper bound of U on [x0 - rho, x0 + rho] (weights are nonnegative).
inline Real log_potential_upper(const std::vector<IntPoly>& Q, const std::vector<Rational>& w, const Rational& x0,
                                const Rational& rho, mpfr_prec_t prec = 128) {
  Real acc(0.0, prec);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (w[i] == 0) continue;
    Rational b = rho == 0 ? abs(Q[i](x0)) : taylor_bound(to_rational(Q[i]), x0, rho);
    if (b == 0) return Real::infinity(-1, prec);
    Real lv = log(Real(b, prec, MPFR_RNDU), MPFR_RNDU);
    Real wr(w[i], prec, lv.sign() >= 0 ? MPFR_RNDU : MPFR_RNDD);
    acc = Real::add(acc, Real::mul(wr, lv, MPFR_RNDU), MPFR_RNDU);
  }
  return acc;
}

}  // namespace detail

/// Certified maximum of U(x) = sum_i w_i log|Q_i(x)| on I, for nonnegative
/// rational weights and nonconstant factors. Interior maxima are zeros of
/// W = sum_i w_i Q_i' prod_{j != i} Q_j, so the cost does not depend on how
/// large the weights' numerators are.
inline PotentialMax log_potential_max(const std::vector<IntPoly>& Q, const std::vector<Rational>& w,
                                      const Interval& I, double eps = 1e-15) {
  if (Q.size() != w.size() || Q.empty()) throw PreconditionError("invalid_parameter", "factor/weight size mismatch");
  std::vector<IntPoly> act;
  std::vector<Rational> aw;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (w[i] < 0) throw PreconditionError("invalid_parameter", "weights must be nonnegative");
    if (w[i] == 0) continue;
    if (Q[i].degree() < 1) throw PreconditionError("constant_factor", "factors must be nonconstant");
    act.push_back(Q[i]);
    aw.push_back(w[i]);
  }
  if (act.empty()) throw PreconditionError("invalid_parameter", "all weights are zero");

  // Integer weights: scale by the common denominator (positive, so zeros unchanged).
  Integer den = 1;
  for (const auto& v : aw) den = lcm(den, Integer(v.get_den()));
  RatPoly W;
  for (std::size_t i = 0; i < act.size(); ++i) {
    RatPoly term = to_rational(act[i].derivative()) * Rational(aw[i] * den);
    for (std::size_t j = 0; j < act.size(); ++j)
      if (j != i) term = term * to_rational(act[j]);
    W = W + term;
  }

  PotentialMax best;
  Real lower = Real::infinity(-1, 128), upper = Real::infinity(-1, 128);
  best.argmax = I.a();
  auto consider = [&](const Rational& x0, const Rational& rho) {
    Real lo = detail::log_potential_at(act, aw, x0, MPFR_RNDD);
    if (lo > lower) {
      lower = lo;
      best.argmax = x0;
    }
    upper = max(upper, detail::log_potential_upper(act, aw, x0, rho));
  };
  consider(I.a(), Rational(0));
  consider(I.b(), Rational(0));
  if (W.degree() >= 1) {
    RootSet rs = find_roots(primitive_part(W), std::max(eps * eps, 1e-40));
    for (const auto& seg : detail::critical_segments(rs, I)) consider(seg.x0, seg.rho);
  }
  if (!lower.is_finite() && lower.sign() < 0)
    throw PreconditionError("degenerate_potential", "potential is -infinity on the whole interval");
  upper = max(upper, lower);
  best.value = Enclosure(lower.with_precision(kEnclosureBits, MPFR_RNDD), upper.with_precision(kEnclosureBits, MPFR_RNDU));
  return best;
}

}  // namespace intcheb
