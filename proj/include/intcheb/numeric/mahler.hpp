#pragma once

#include <complex>
#include <string>
#include <vector>

#include "intcheb/core/interval.hpp"
#include "intcheb/core/sturm.hpp"
#include "intcheb/numeric/roots.hpp"

namespace intcheb {

namespace detail {

/// Root-finding target for a rational polynomial: primitive integer
/// associate plus the leading coefficient of the original.
inline std::pair<IntPoly, Rational> split_leading(const RatPoly& P) {
  if (P.degree() < 1) throw PreconditionError("constant_polynomial", "degree >= 1 required");
  return {primitive_part(P), abs(P.leading())};
}

inline Enclosure times_nonneg(const Enclosure& a, const Real& lo, const Real& hi) {
  return mul_nonneg(a, Enclosure(lo.with_precision(kEnclosureBits, MPFR_RNDD), hi.with_precision(kEnclosureBits, MPFR_RNDU)));
}

}  // namespace detail

/// M(P) = |a_n| prod max(1, |alpha_k|), enclosed to relative width about eps.
/// Roots certified on the unit circle contribute exactly 1.
inline Enclosure mahler_measure(const RatPoly& P, double eps = 1e-15) {
  auto [prim, lead] = detail::split_leading(P);
  const int n = prim.degree();
  RootSet rs = find_roots(prim, std::max(eps / (4.0 * n), 1e-300));
  Enclosure acc = Enclosure::exact(lead);
  for (const auto& r : rs.roots) {
    if (r.on_unit_circle) continue;
    Enclosure m = r.modulus();
    if (m.upper() <= Real(1.0, 64)) continue;
    Real one(1.0, kEnclosureBits);
    acc = mul_nonneg(acc, Enclosure(max(m.lower(), one), m.upper()));
  }
  return acc;
}

inline Enclosure mahler_measure(const IntPoly& P, double eps = 1e-15) { return mahler_measure(to_rational(P), eps); }

/// Phi(z) = ((z-c) + sqrt((z-c)^2 - 4))/2, branch with |Phi| >= 1 off the
/// segment [c-2, c+2] (double precision; for display and plotting).
inline std::complex<double> conformal_map(std::complex<double> z, double c) {
  std::complex<double> u = z - c;
  std::complex<double> s = std::sqrt(u * u - 4.0);
  std::complex<double> w1 = (u + s) / 2.0, w2 = (u - s) / 2.0;
  return std::abs(w1) >= std::abs(w2) ? w1 : w2;
}

namespace detail {

/// |Phi| as a function of S = |z-(c-2)| + |z-(c+2)| >= 4 (level sets are
/// confocal ellipses): R + 1/R = S/2.
inline Real phi_modulus_from_focal_sum(const Real& S, mpfr_rnd_t rnd) {
  const mpfr_prec_t p = S.precision();
  Real half = S;
  mpfr_div_2ui(half.get(), half.get(), 1, rnd);
  Real sq = Real::mul(half, half, rnd);
  Real four(4.0, p);
  Real disc = Real::sub(sq, four, rnd);
  if (disc.sign() < 0) disc = Real(0.0, p);
  Real r = Real::add(half, sqrt(disc, rnd), rnd);
  mpfr_div_2ui(r.get(), r.get(), 1, rnd);
  Real one(1.0, p);
  return max(r, one);
}

}  // namespace detail

struct GeneralizedMahlerResult {
  Enclosure value;
  int inside = 0;     // roots certainly in [c-2, c+2] (factor exactly 1)
  int outside = 0;    // roots certainly off the segment
  int boundary = 0;   // exact roots at an endpoint (factor exactly 1)
  int ambiguous = 0;  // discs touching the segment; factor enclosed in [1, upper]
  bool exact_all_inside = false;  // decided by exact real root counting
};

/// Generalized Mahler measure for the segment [c-2, c+2]:
/// |a_n| prod_{alpha off the segment} |Phi(alpha)|.
inline GeneralizedMahlerResult generalized_mahler_detail(const RatPoly& P, const Rational& c, double eps = 1e-15) {
  auto [prim, lead] = detail::split_leading(P);
  const Interval seg = Interval::centered4(c);
  GeneralizedMahlerResult res;

  // Exact fast path: if every root is real and inside the segment, M = |a_n|.
  {
    int distinct = 0, at_ends = 0;
    for (const auto& [f, mult] : squarefree_decomposition(prim)) {
      if (count_real_roots(f, seg.a(), seg.b()) != f.degree()) {
        distinct = -1;
        break;
      }
      distinct += f.degree() * mult;
      at_ends += ((f(seg.a()) == 0) + (f(seg.b()) == 0)) * mult;
    }
    if (distinct == prim.degree()) {
      res.value = Enclosure::exact(lead);
      res.boundary = at_ends;
      res.inside = prim.degree() - at_ends;
      res.exact_all_inside = true;
      return res;
    }
  }

  const int n = prim.degree();
  RootSet rs = find_roots(prim, std::max(eps / (8.0 * n), 1e-300));
  Enclosure acc = Enclosure::exact(lead);
  const mpfr_prec_t p = kEnclosureBits;
  Real lo_end(seg.a(), p), hi_end(seg.b(), p);
  for (const auto& r : rs.roots) {
    if (r.exact) {
      const Rational& x = *r.exact;
      if (x == seg.a() || x == seg.b()) {
        ++res.boundary;
        continue;
      }
      if (seg.contains(x)) {
        ++res.inside;
        continue;
      }
      // Real root off the segment: S = 2|x - c|.
      Rational S = 2 * abs(x - c);
      ++res.outside;
      acc = detail::times_nonneg(acc, detail::phi_modulus_from_focal_sum(Real(S, p, MPFR_RNDD), MPFR_RNDD),
                                 detail::phi_modulus_from_focal_sum(Real(S, p, MPFR_RNDU), MPFR_RNDU));
      continue;
    }
    if (r.certified_real) {
      Real left = Real::sub(r.center.re, r.radius, MPFR_RNDD), right = Real::add(r.center.re, r.radius, MPFR_RNDU);
      if (left > lo_end && right < hi_end) {
        ++res.inside;
        continue;
      }
    }
    // Focal sum over the disc: each distance is 1-Lipschitz in z.
    Complex z = r.center.with_precision(std::max(p, r.center.precision()));
    Real d1d = detail::distance_lower(z.re, z.im, lo_end, Real(0.0, p), z.precision());
    Real d2d = detail::distance_lower(z.re, z.im, hi_end, Real(0.0, p), z.precision());
    Real d1u = detail::distance_upper(z.re, z.im, lo_end, Real(0.0, p), z.precision());
    Real d2u = detail::distance_upper(z.re, z.im, hi_end, Real(0.0, p), z.precision());
    Real two_r = Real::add(r.radius, r.radius, MPFR_RNDU);
    Real S_lo = Real::sub(Real::add(d1d, d2d, MPFR_RNDD).with_precision(p, MPFR_RNDD), two_r, MPFR_RNDD);
    Real S_hi = Real::add(Real::add(d1u, d2u, MPFR_RNDU).with_precision(p, MPFR_RNDU), two_r, MPFR_RNDU);
    Real f_lo = detail::phi_modulus_from_focal_sum(S_lo, MPFR_RNDD);
    Real f_hi = detail::phi_modulus_from_focal_sum(S_hi, MPFR_RNDU);
    if (f_lo > Real(1.0, p)) ++res.outside;
    else ++res.ambiguous;
    acc = detail::times_nonneg(acc, f_lo, f_hi);
  }
  res.value = acc;
  return res;
}

inline GeneralizedMahlerResult generalized_mahler_detail(const IntPoly& P, const Rational& c, double eps = 1e-15) {
  return generalized_mahler_detail(to_rational(P), c, eps);
}

inline Enclosure generalized_mahler(const RatPoly& P, const Rational& c, double eps = 1e-15) {
  return generalized_mahler_detail(P, c, eps).value;
}
inline Enclosure generalized_mahler(const IntPoly& P, const Rational& c, double eps = 1e-15) {
  return generalized_mahler_detail(P, c, eps).value;
}

}  // namespace intcheb
