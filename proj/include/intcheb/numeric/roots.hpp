#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "intcheb/core/modular.hpp"
#include "intcheb/core/polynomial.hpp"
#include "intcheb/numeric/enclosure.hpp"

namespace intcheb {

inline constexpr mpfr_prec_t kDefaultMaxBits = 4096;

/// Process-wide cap chosen by a front end; 0 defers to the environment.
inline std::atomic<long>& max_bits_setting() {
  static std::atomic<long> bits{0};
  return bits;
}

/// Precision cap: the front-end setting, else INTCHEB_MAX_PREC_BITS if set to
/// a valid value, else 4096.
inline mpfr_prec_t default_max_bits() {
  if (long v = max_bits_setting().load(); v > 0) return static_cast<mpfr_prec_t>(v);
  if (const char* env = std::getenv("INTCHEB_MAX_PREC_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64 && v <= (1L << 20)) return static_cast<mpfr_prec_t>(v);
  }
  return kDefaultMaxBits;
}

struct RootOptions {
  double eps = 1e-30;  // radius <= eps * max(1, |center|)
  mpfr_prec_t start_bits = 64;
  mpfr_prec_t max_bits = default_max_bits();
};

/// One root of P with a certified inclusion disc |root - center| <= radius.
struct Root {
  Complex center;
  Real radius{64};
  int multiplicity = 1;
  bool certified_real = false;   // the enclosed root is real
  bool on_unit_circle = false;   // the enclosed root has modulus exactly 1
  std::optional<Rational> exact; // set for roots of linear factors

  std::complex<double> approx() const { return {center.re.to_double(), center.im.to_double()}; }

  /// Enclosure of |root|.
  Enclosure modulus() const {
    if (exact) return Enclosure::exact(abs(*exact));
    if (on_unit_circle) return Enclosure::exact(Rational(1));
    Real m_lo = center.modulus(MPFR_RNDD), m_hi = center.modulus(MPFR_RNDU);
    Real lo = Real::sub(m_lo, radius, MPFR_RNDD);
    if (lo.sign() < 0) lo = Real(0.0, 64);
    return {lo.with_precision(kEnclosureBits, MPFR_RNDD),
            Real::add(m_hi, radius, MPFR_RNDU).with_precision(kEnclosureBits, MPFR_RNDU)};
  }
};

/// All complex roots of a polynomial, listed with multiplicity (a root of
/// multiplicity k appears k times with the same disc).
struct RootSet {
  int degree = 0;
  std::vector<Root> roots;
  mpfr_prec_t precision = 64;
};

namespace detail {

// Hot loops work on raw mpfr_t to avoid temporary allocation.
struct MpScratch {
  explicit MpScratch(mpfr_prec_t p) {
    for (auto* v : {&t1, &t2, &t3, &t4, &t5, &t6}) mpfr_init2(*v, p);
  }
  ~MpScratch() {
    for (auto* v : {&t1, &t2, &t3, &t4, &t5, &t6}) mpfr_clear(*v);
  }
  MpScratch(const MpScratch&) = delete;
  MpScratch& operator=(const MpScratch&) = delete;
  mpfr_t t1, t2, t3, t4, t5, t6;
};

/// f(z), f'(z) by complex Horner at the coefficients' precision, plus an
/// upward-rounded bound on sum |a_k| |z|^k (64 bits).
inline void horner(const std::vector<Real>& a, const std::vector<Real>& abs_a, const Real& zr, const Real& zi,
                   Real& fr, Real& fi, Real& dr, Real& di, Real& bound, MpScratch& s) {
  const std::size_t n = a.size() - 1;
  mpfr_set(fr.get(), a[n].get(), MPFR_RNDN);
  mpfr_set_zero(fi.get(), 1);
  mpfr_set_zero(dr.get(), 1);
  mpfr_set_zero(di.get(), 1);
  mpfr_hypot(s.t5, zr.get(), zi.get(), MPFR_RNDU);
  Real modz(64);
  mpfr_set(modz.get(), s.t5, MPFR_RNDU);
  mpfr_set(bound.get(), abs_a[n].get(), MPFR_RNDU);
  for (std::size_t k = n; k-- > 0;) {
    // d = d*z + f
    mpfr_fmms(s.t1, dr.get(), zr.get(), di.get(), zi.get(), MPFR_RNDN);
    mpfr_fmma(s.t2, dr.get(), zi.get(), di.get(), zr.get(), MPFR_RNDN);
    mpfr_add(dr.get(), s.t1, fr.get(), MPFR_RNDN);
    mpfr_add(di.get(), s.t2, fi.get(), MPFR_RNDN);
    // f = f*z + a_k
    mpfr_fmms(s.t1, fr.get(), zr.get(), fi.get(), zi.get(), MPFR_RNDN);
    mpfr_fmma(s.t2, fr.get(), zi.get(), fi.get(), zr.get(), MPFR_RNDN);
    mpfr_add(fr.get(), s.t1, a[k].get(), MPFR_RNDN);
    mpfr_swap(fi.get(), s.t2);
    // bound = bound*|z| + |a_k|
    mpfr_mul(bound.get(), bound.get(), modz.get(), MPFR_RNDU);
    mpfr_add(bound.get(), bound.get(), abs_a[k].get(), MPFR_RNDU);
  }
}

/// Rounding error bound of `horner` for f(z) at precision p: 8(n+2) 2^-p sum|a_k||z|^k.
inline Real horner_error(const Real& bound, std::size_t n, mpfr_prec_t p) {
  Real e(64);
  mpfr_mul_ui(e.get(), bound.get(), static_cast<unsigned long>(8 * (n + 2)), MPFR_RNDU);
  mpfr_div_2si(e.get(), e.get(), static_cast<long>(p), MPFR_RNDU);
  return e;
}

/// Lower bound on |(ar + i ai) - (br + i bi)| for precision-p operands.
inline Real distance_lower(const Real& ar, const Real& ai, const Real& br, const Real& bi, mpfr_prec_t p) {
  Real dr = Real::sub(ar, br, MPFR_RNDN), di = Real::sub(ai, bi, MPFR_RNDN);
  Real d = Real::apply(mpfr_hypot, dr, di, MPFR_RNDD, 64);
  // Each subtraction is off by at most one ulp; shave 2^(3-p) relative.
  mpfr_mul_d(d.get(), d.get(), 1.0 - std::ldexp(1.0, static_cast<int>(3 - std::min<mpfr_prec_t>(p, 1000))), MPFR_RNDD);
  return d;
}

inline Real distance_upper(const Real& ar, const Real& ai, const Real& br, const Real& bi, mpfr_prec_t p) {
  Real dr = Real::sub(ar, br, MPFR_RNDN), di = Real::sub(ai, bi, MPFR_RNDN);
  Real d = Real::apply(mpfr_hypot, dr, di, MPFR_RNDU, 64);
  mpfr_mul_d(d.get(), d.get(), 1.0 + std::ldexp(1.0, static_cast<int>(3 - std::min<mpfr_prec_t>(p, 1000))), MPFR_RNDU);
  return d;
}

/// True iff the closed discs D(a, ra) and D(b, rb) are certainly disjoint.
inline bool discs_disjoint(const Real& ar, const Real& ai, const Real& ra, const Real& br, const Real& bi,
                           const Real& rb, mpfr_prec_t p) {
  return distance_lower(ar, ai, br, bi, p) > Real::add(ra, rb, MPFR_RNDU);
}

/// Initial approximations from the upper convex hull of (k, log|a_k|)
/// (one circle per hull edge, radius = geometric ratio of its end coefficients).
inline std::vector<std::complex<long double>> initial_guesses(const IntPoly& f) {
  const int n = f.degree();
  std::vector<int> idx;
  std::vector<double> lg;
  for (int k = 0; k <= n; ++k) {
    const Integer& a = f.coeffs()[static_cast<std::size_t>(k)];
    if (a == 0) continue;
    long e = 0;
    double m = mpz_get_d_2exp(&e, a.get_mpz_t());
    idx.push_back(k);
    lg.push_back(std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0));
  }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double cross = (idx[b] - idx[a]) * (lg[i] - lg[a]) - (lg[b] - lg[a]) * (idx[i] - idx[a]);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<std::complex<long double>> z;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    int i = idx[hull[h]], j = idx[hull[h + 1]];
    int cnt = j - i;
    long double r = std::exp(static_cast<long double>(lg[hull[h]] - lg[hull[h + 1]]) / cnt);
    for (int m = 0; m < cnt; ++m) {
      long double ang = two_pi * m / cnt + two_pi * static_cast<long double>(h) / n + 0.4L;
      z.push_back(std::polar(r, ang));
    }
  }
  return z;
}

/// Aberth iteration in long double; used only to seed the MPFR phase.
inline void aberth_long_double(const IntPoly& f, std::vector<std::complex<long double>>& z) {
  const int n = f.degree();
  std::vector<long double> a(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, f.coeffs()[static_cast<std::size_t>(k)].get_mpz_t());
    if (e > 16000) return;  // outside long double range
    a[static_cast<std::size_t>(k)] = std::ldexp(static_cast<long double>(m), static_cast<int>(e));
  }
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  const long double tol = 64 * std::numeric_limits<long double>::epsilon();
  for (int iter = 0; iter < 500; ++iter) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[static_cast<std::size_t>(i)]) continue;
      std::complex<long double> zi = z[static_cast<std::size_t>(i)], p = a[static_cast<std::size_t>(n)], d = 0;
      for (int k = n - 1; k >= 0; --k) {
        d = d * zi + p;
        p = p * zi + a[static_cast<std::size_t>(k)];
      }
      if (p == std::complex<long double>(0)) {
        done[static_cast<std::size_t>(i)] = true;
        continue;
      }
      std::complex<long double> s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (zi - z[static_cast<std::size_t>(j)]);
      std::complex<long double> ratio = p / d;
      std::complex<long double> w = ratio / (1.0L - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return;
      z[static_cast<std::size_t>(i)] = zi - w;
      if (std::abs(w) <= tol * std::max(std::abs(zi), 1e-300L)) done[static_cast<std::size_t>(i)] = true;
      else all = false;
    }
    if (all) return;
  }
}

struct FactorRoots {
  std::vector<Real> re, im, radius;
  std::vector<bool> real, unit;
};

/// Aberth at precision p from the current approximations, then the disc
/// certificate. Returns nullopt when the certificate fails at this precision.
inline std::optional<FactorRoots> refine_and_certify(const IntPoly& f, std::vector<Real>& zr, std::vector<Real>& zi,
                                                     mpfr_prec_t p, double eps) {
  const int n = f.degree();
  const std::size_t N = static_cast<std::size_t>(n);
  std::vector<Real> a, abs_a;
  for (const auto& c : f.coeffs()) {
    a.emplace_back(c, p);
    abs_a.emplace_back(abs(c), 64, MPFR_RNDU);
  }
  for (std::size_t i = 0; i < N; ++i) {
    zr[i] = zr[i].with_precision(p);
    zi[i] = zi[i].with_precision(p);
  }
  MpScratch s(p);
  Real fr(p), fi(p), dr(p), di(p), bound(64), sr(p), si(p), wr(p), wi(p);
  std::vector<bool> frozen(N, false);
  const int max_iter = 60 + 2 * n;
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all = true;
    for (std::size_t i = 0; i < N; ++i) {
      if (frozen[i]) continue;
      horner(a, abs_a, zr[i], zi[i], fr, fi, dr, di, bound, s);
      Real fmod = fr.is_zero() && fi.is_zero() ? Real(0.0, 64) : Real::apply(mpfr_hypot, fr, fi, MPFR_RNDN, 64);
      if (fmod <= horner_error(bound, N, p)) {
        frozen[i] = true;
        continue;
      }
      // ratio = f/f'
      mpfr_fmma(s.t1, dr.get(), dr.get(), di.get(), di.get(), MPFR_RNDN);
      if (mpfr_zero_p(s.t1)) {
        all = false;
        continue;
      }
      mpfr_fmma(s.t2, fr.get(), dr.get(), fi.get(), di.get(), MPFR_RNDN);
      mpfr_fmms(s.t3, fi.get(), dr.get(), fr.get(), di.get(), MPFR_RNDN);
      mpfr_div(s.t2, s.t2, s.t1, MPFR_RNDN);  // ratio re
      mpfr_div(s.t3, s.t3, s.t1, MPFR_RNDN);  // ratio im
      // S = sum 1/(z_i - z_j)
      mpfr_set_zero(sr.get(), 1);
      mpfr_set_zero(si.get(), 1);
      for (std::size_t j = 0; j < N; ++j) {
        if (j == i) continue;
        mpfr_sub(s.t4, zr[i].get(), zr[j].get(), MPFR_RNDN);
        mpfr_sub(s.t5, zi[i].get(), zi[j].get(), MPFR_RNDN);
        mpfr_fmma(s.t6, s.t4, s.t4, s.t5, s.t5, MPFR_RNDN);
        if (mpfr_zero_p(s.t6)) continue;
        mpfr_div(s.t4, s.t4, s.t6, MPFR_RNDN);
        mpfr_div(s.t5, s.t5, s.t6, MPFR_RNDN);
        mpfr_add(sr.get(), sr.get(), s.t4, MPFR_RNDN);
        mpfr_sub(si.get(), si.get(), s.t5, MPFR_RNDN);
      }
      // den = 1 - ratio*S ; w = ratio/den
      mpfr_fmms(s.t4, s.t2, sr.get(), s.t3, si.get(), MPFR_RNDN);
      mpfr_fmma(s.t5, s.t2, si.get(), s.t3, sr.get(), MPFR_RNDN);
      mpfr_ui_sub(s.t4, 1, s.t4, MPFR_RNDN);
      mpfr_neg(s.t5, s.t5, MPFR_RNDN);
      mpfr_fmma(s.t6, s.t4, s.t4, s.t5, s.t5, MPFR_RNDN);
      if (mpfr_zero_p(s.t6)) {
        mpfr_set(wr.get(), s.t2, MPFR_RNDN);
        mpfr_set(wi.get(), s.t3, MPFR_RNDN);
      } else {
        mpfr_fmma(s.t1, s.t2, s.t4, s.t3, s.t5, MPFR_RNDN);
        mpfr_fmms(wi.get(), s.t3, s.t4, s.t2, s.t5, MPFR_RNDN);
        mpfr_div(wr.get(), s.t1, s.t6, MPFR_RNDN);
        mpfr_div(wi.get(), wi.get(), s.t6, MPFR_RNDN);
      }
      if (!mpfr_number_p(wr.get()) || !mpfr_number_p(wi.get())) {
        all = false;
        continue;
      }
      mpfr_sub(zr[i].get(), zr[i].get(), wr.get(), MPFR_RNDN);
      mpfr_sub(zi[i].get(), zi[i].get(), wi.get(), MPFR_RNDN);
      // Converged when the step is below the working precision.
      Real wmod = Real::apply(mpfr_hypot, wr, wi, MPFR_RNDN, 64);
      Real zmod = Real::apply(mpfr_hypot, zr[i], zi[i], MPFR_RNDN, 64);
      mpfr_mul_2si(zmod.get(), zmod.get(), -static_cast<long>(p) + 6, MPFR_RNDN);
      if (wmod <= zmod) frozen[i] = true;
      else all = false;
    }
    if (all) break;
  }

  // Certificate: every root lies in the union of D(z_i, n|W_i|), and each
  // connected component of k discs holds exactly k roots.
  FactorRoots out;
  const Real lead_lo(abs(f.leading()), 64, MPFR_RNDD);
  for (std::size_t i = 0; i < N; ++i) {
    horner(a, abs_a, zr[i], zi[i], fr, fi, dr, di, bound, s);
    Real num = Real::apply(mpfr_hypot, fr, fi, MPFR_RNDU, 64);
    num = Real::add(num, horner_error(bound, N, p), MPFR_RNDU);
    Real den = lead_lo;
    for (std::size_t j = 0; j < N; ++j) {
      if (j == i) continue;
      Real d = distance_lower(zr[i], zi[i], zr[j], zi[j], p);
      if (d.sign() <= 0) return std::nullopt;
      den = Real::mul(den, d, MPFR_RNDD);
    }
    if (den.sign() <= 0) return std::nullopt;
    Real r = Real::div(num, den, MPFR_RNDU);
    mpfr_mul_ui(r.get(), r.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    Real zmod = Real::apply(mpfr_hypot, zr[i], zi[i], MPFR_RNDU, 64);
    Real tol(std::max(1.0, zmod.to_double(MPFR_RNDD)) * eps, 64);
    if (!(r <= tol)) return std::nullopt;
    out.radius.push_back(r);
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (!discs_disjoint(zr[i], zi[i], out.radius[i], zr[j], zi[j], out.radius[j], p)) return std::nullopt;

  // A root is real when the mirror image of its disc meets no other disc.
  out.real.assign(N, false);
  for (std::size_t i = 0; i < N; ++i) {
    Real mi = -zi[i];
    bool ok = true;
    for (std::size_t j = 0; j < N && ok; ++j)
      if (j != i && !discs_disjoint(zr[i], mi, out.radius[i], zr[j], zi[j], out.radius[j], p)) ok = false;
    out.real[i] = ok;
  }

  // For (anti-)reciprocal f, the root set is closed under z -> 1/conj(z);
  // a disc whose inverse meets no other disc holds a root of modulus 1.
  out.unit.assign(N, false);
  bool recip = true, anti = true;
  for (int k = 0; k <= n; ++k) {
    const Integer& lo = f.coeffs()[static_cast<std::size_t>(k)];
    const Integer& hi = f.coeffs()[static_cast<std::size_t>(n - k)];
    if (lo != hi) recip = false;
    if (lo != -hi) anti = false;
  }
  if (recip || anti) {
    for (std::size_t i = 0; i < N; ++i) {
      Real m2 = Real::apply(mpfr_hypot, zr[i], zi[i], MPFR_RNDD, p);
      m2 = Real::mul(m2, m2, MPFR_RNDD);
      Real r2 = Real::mul(out.radius[i], out.radius[i], MPFR_RNDU);
      Real gap = Real::sub(m2, r2, MPFR_RNDD);
      mpfr_mul_d(gap.get(), gap.get(), 1.0 - std::ldexp(1.0, static_cast<int>(4 - std::min<mpfr_prec_t>(p, 1000))),
                 MPFR_RNDD);
      if (gap.sign() <= 0) continue;
      Real cr = Real::div(zr[i], gap, MPFR_RNDN), ci = Real::div(zi[i], gap, MPFR_RNDN);
      // |z|^2 - r^2 is underestimated, which overestimates the radius and
      // moves the center by at most a relative 2^(6-p); fold that into the radius.
      Real rad = Real::div(out.radius[i], gap, MPFR_RNDU);
      Real shift = Real::apply(mpfr_hypot, cr, ci, MPFR_RNDU, 64);
      mpfr_mul_2si(shift.get(), shift.get(), -static_cast<long>(p) + 6, MPFR_RNDU);
      rad = Real::add(rad, shift, MPFR_RNDU);
      bool ok = true;
      for (std::size_t j = 0; j < N && ok; ++j)
        if (j != i && !discs_disjoint(cr, ci, rad, zr[j], zi[j], out.radius[j], p)) ok = false;
      out.unit[i] = ok;
    }
  }
  out.re = zr;
  out.im = zi;
  return out;
}

/// Roots of a squarefree integer polynomial of degree >= 2.
inline std::pair<FactorRoots, mpfr_prec_t> certified_roots(const IntPoly& f, const RootOptions& opt) {
  auto seed = initial_guesses(f);
  aberth_long_double(f, seed);
  const std::size_t N = static_cast<std::size_t>(f.degree());
  std::vector<Real> zr, zi;
  for (std::size_t i = 0; i < N; ++i) {
    zr.emplace_back(static_cast<double>(seed[i].real()), 64);
    zi.emplace_back(static_cast<double>(seed[i].imag()), 64);
  }
  for (mpfr_prec_t p = opt.start_bits;; p = std::min(2 * p, opt.max_bits)) {
    if (auto r = refine_and_certify(f, zr, zi, p, opt.eps)) return {std::move(*r), p};
    if (p >= opt.max_bits)
      throw PrecisionExhausted("root certificate failed at the precision cap of " + std::to_string(opt.max_bits) +
                               " bits (degree " + std::to_string(f.degree()) + ")");
  }
}

}  // namespace detail

/// Certified roots of P. Zero roots and roots of linear factors are exact;
/// the rest come from Aberth iteration at doubling MPFR precision with an
/// inclusion-disc certificate. Repeated roots are handled through the
/// squarefree decomposition.
inline RootSet find_roots(const IntPoly& P, const RootOptions& opt) {
  if (P.degree() < 1) throw PreconditionError("constant_polynomial", "find_roots requires degree >= 1");
  if (!(opt.eps > 0)) throw PreconditionError("invalid_parameter", "eps must be positive");
  RootSet out;
  out.degree = P.degree();
  out.precision = opt.start_bits;

  std::size_t zeros = 0;
  while (P.coeffs()[zeros] == 0) ++zeros;
  auto exact_root = [&](const Rational& q, int mult) {
    Root r;
    r.center = Complex(Real(q, 128), Real(0.0, 128));
    Rational err = abs(r.center.re.to_rational() - q);
    r.radius = Real(err, 64, MPFR_RNDU);
    r.multiplicity = mult;
    r.certified_real = true;
    r.on_unit_circle = abs(q) == 1;
    r.exact = q;
    for (int k = 0; k < mult; ++k) out.roots.push_back(r);
  };
  if (zeros) exact_root(Rational(0), static_cast<int>(zeros));

  IntPoly Q(std::vector<Integer>(P.coeffs().begin() + static_cast<long>(zeros), P.coeffs().end()));
  if (Q.degree() < 1) return out;
  std::vector<std::pair<IntPoly, int>> factors;
  if (is_squarefree(Q)) factors.emplace_back(primitive_part(Q), 1);
  else factors = squarefree_decomposition(Q);

  for (const auto& [f, mult] : factors) {
    if (f.degree() == 1) {
      exact_root(Rational(-f.coeffs()[0], f.coeffs()[1]), mult);
      continue;
    }
    auto [fr, prec] = detail::certified_roots(f, opt);
    out.precision = std::max(out.precision, prec);
    for (std::size_t i = 0; i < fr.re.size(); ++i) {
      Root r;
      r.center = Complex(fr.re[i], fr.real[i] ? Real(0.0, fr.re[i].precision()) : fr.im[i]);
      r.radius = fr.radius[i];
      r.multiplicity = mult;
      r.certified_real = fr.real[i];
      r.on_unit_circle = fr.unit[i];
      for (int k = 0; k < mult; ++k) out.roots.push_back(r);
    }
  }
  // Deterministic order: by real part, then imaginary part.
  std::stable_sort(out.roots.begin(), out.roots.end(), [](const Root& x, const Root& y) {
    if (!(x.center.re == y.center.re)) return x.center.re < y.center.re;
    return x.center.im < y.center.im;
  });
  return out;
}

inline RootSet find_roots(const IntPoly& P, double eps = 1e-30) {
  RootOptions opt;
  opt.eps = eps;
  return find_roots(P, opt);
}

}  // namespace intcheb
