#pragma once

#include <optional>
#include <vector>

#include "intcheb/core/resultant.hpp"
#include "intcheb/core/symmetric.hpp"
#include "intcheb/numeric/roots.hpp"

namespace intcheb {

/// Moment and energy statistics of the zeros of P.
struct ZeroStats {
  int n = 0;
  Enclosure mean;                        // A_n = s_1/n from the certified roots
  std::vector<Enclosure> powersum_means; // s_m/n, m = 1..m_max, from the certified roots
  std::vector<Rational> exact_powersum_means;  // same quantities from the coefficients
  bool consistent = true;                // every exact value lies in its enclosure
  std::optional<Enclosure> log_energy;   // (1/n^2) log(|a_n|^{2n-2}/|disc|); empty if disc = 0
  Enclosure max_modulus;
};

namespace detail {

/// Enclosure of Re(sum_k z_k^m) over the root discs.
inline Enclosure powersum_enclosure(const RootSet& rs, int m) {
  mpfr_prec_t p = std::max<mpfr_prec_t>(rs.precision, 128) + 32;
  Real sum(0.0, p), err(0.0, p);
  for (const auto& r : rs.roots) {
    Complex z = r.center.with_precision(p);
    Complex acc(Real(1.0, p), Real(0.0, p));
    for (int k = 0; k < m; ++k) acc = acc * z;
    sum = Real::add(sum, acc.re, MPFR_RNDN);
    // |(c+d)^m - c^m| <= (|c|+r)^m - |c|^m for |d| <= r.
    // At precision p: a 64-bit difference would floor the error at 2^-64.
    Real cm = r.center.with_precision(p).modulus(MPFR_RNDU);
    Real big = Real::add(cm, r.radius.with_precision(p, MPFR_RNDU), MPFR_RNDU), bm(1.0, p), sm(1.0, p);
    Real cl = r.center.with_precision(p).modulus(MPFR_RNDD);
    for (int k = 0; k < m; ++k) {
      bm = Real::mul(bm, big, MPFR_RNDU);
      sm = Real::mul(sm, cl, MPFR_RNDD);
    }
    err = Real::add(err, Real::sub(bm, sm, MPFR_RNDU), MPFR_RNDU);
    // Rounding of the power at precision p (generous 4m ulps of |c|^m).
    Real rnd = Real::mul(bm, Real(4.0 * (m + 1), 64), MPFR_RNDU);
    mpfr_mul_2si(rnd.get(), rnd.get(), -static_cast<long>(p) + 2, MPFR_RNDU);
    err = Real::add(err, rnd, MPFR_RNDU);
  }
  // Summation rounding.
  Real srnd = Real::mul(abs(sum).with_precision(64, MPFR_RNDU), Real(static_cast<double>(rs.roots.size() + 1), 64), MPFR_RNDU);
  mpfr_mul_2si(srnd.get(), srnd.get(), -static_cast<long>(p) + 1, MPFR_RNDU);
  err = Real::add(err, srnd, MPFR_RNDU);
  Real e = err.with_precision(p, MPFR_RNDU);
  return {Real::sub(sum, e, MPFR_RNDD).with_precision(kEnclosureBits, MPFR_RNDD),
          Real::add(sum, e, MPFR_RNDU).with_precision(kEnclosureBits, MPFR_RNDU)};
}

inline Enclosure divide_by(const Enclosure& e, long n) {
  Real d(static_cast<double>(n), 64);
  return {Real::div(e.lower(), d, MPFR_RNDD), Real::div(e.upper(), d, MPFR_RNDU)};
}

}  // namespace detail

/// (1/n^2) log(|a_n|^{2n-2} / |disc(P)|) from the exact integer discriminant.
inline Enclosure log_energy(const IntPoly& P, const Integer& disc) {
  if (disc == 0) throw PreconditionError("zero_discriminant", "log energy undefined: repeated roots");
  const long n = P.degree();
  const mpfr_prec_t p = kEnclosureBits;
  Real k(static_cast<double>(2 * n - 2), p);
  auto bound = [&](mpfr_rnd_t up, mpfr_rnd_t down) {
    Real a = Real::mul(k, log_abs(P.leading(), up, p), up);
    Real v = Real::sub(a, log_abs(disc, down, p), up);
    Real n2(static_cast<double>(n * n), p);
    return Real::div(v, n2, up);
  };
  return {bound(MPFR_RNDD, MPFR_RNDU), bound(MPFR_RNDU, MPFR_RNDD)};
}

inline Enclosure log_energy(const IntPoly& P) { return log_energy(P, discriminant(P)); }

/// Zero statistics: numeric moments from certified roots, cross-checked
/// against the exact coefficient values, and the exact-discriminant energy.
inline ZeroStats zero_stats(const IntPoly& P, int m_max, double eps = 1e-30, bool with_energy = true) {
  if (P.degree() < 1) throw PreconditionError("constant_polynomial", "zero_stats requires degree >= 1");
  if (m_max < 1) throw PreconditionError("invalid_parameter", "m_max must be >= 1");
  ZeroStats z;
  z.n = P.degree();
  RootSet rs = find_roots(P, eps);
  std::vector<Rational> s = power_sums(P, m_max);
  for (int m = 1; m <= m_max; ++m) {
    Enclosure e = detail::divide_by(detail::powersum_enclosure(rs, m), z.n);
    Rational exact = s[static_cast<std::size_t>(m - 1)] / Rational(z.n);
    z.powersum_means.push_back(e);
    z.exact_powersum_means.push_back(exact);
    if (e.lower() > Real(exact, kEnclosureBits, MPFR_RNDU) || e.upper() < Real(exact, kEnclosureBits, MPFR_RNDD))
      z.consistent = false;
  }
  z.mean = z.powersum_means.front();
  Real lo(0.0, kEnclosureBits), hi(0.0, kEnclosureBits);
  for (const auto& r : rs.roots) {
    Enclosure m = r.modulus();
    lo = max(lo, m.lower());
    hi = max(hi, m.upper());
  }
  z.max_modulus = Enclosure(lo, hi);
  if (with_energy) {
    Integer disc = discriminant(P);
    if (disc != 0) z.log_energy = log_energy(P, disc);
  }
  return z;
}

}  // namespace intcheb
