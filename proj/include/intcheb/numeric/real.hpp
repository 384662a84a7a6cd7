#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "intcheb/core/numbers.hpp"

namespace intcheb {

/// Owning wrapper around an MPFR float with an explicit precision.
///
/// Binary operators round to nearest at the larger operand precision; the
/// static helpers take an explicit rounding mode for enclosure arithmetic.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec), mpfr_set_zero(v_, 1); }
  Real(double d, mpfr_prec_t prec) : Real(prec) { mpfr_set_d(v_, d, MPFR_RNDN); }
  Real(const Integer& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) : Real(prec) {
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  Real(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) : Real(prec) {
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept : Real(2) { mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  /// Copy at a different precision (rounded to nearest).
  Real with_precision(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) const {
    Real r(prec);
    mpfr_set(r.v_, v_, rnd);
    return r;
  }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Exact value (MPFR numbers are dyadic rationals).
  Rational to_rational() const {
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rational q(m);
    if (e >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    q.canonicalize();
    return q;
  }

  /// Decimal text with `digits` significant digits ("%.{digits}Rg").
  std::string str(int digits = 17, mpfr_rnd_t rnd = MPFR_RNDN) const {
    if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_zero_p(v_)) return "0";  // no signed zero in text
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(digits) + "R" + rnd_char(rnd) + "g";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  using Op2 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using Op1 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static Real apply(Op2 op, const Real& a, const Real& b, mpfr_rnd_t rnd, mpfr_prec_t prec = 0) {
    Real r(prec ? prec : std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, rnd);
    return r;
  }
  static Real apply(Op1 op, const Real& a, mpfr_rnd_t rnd, mpfr_prec_t prec = 0) {
    Real r(prec ? prec : a.precision());
    op(r.v_, a.v_, rnd);
    return r;
  }

  static Real add(const Real& a, const Real& b, mpfr_rnd_t rnd) { return apply(mpfr_add, a, b, rnd); }
  static Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd) { return apply(mpfr_sub, a, b, rnd); }
  static Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) { return apply(mpfr_mul, a, b, rnd); }
  static Real div(const Real& a, const Real& b, mpfr_rnd_t rnd) { return apply(mpfr_div, a, b, rnd); }

  friend Real operator+(const Real& a, const Real& b) { return add(a, b, MPFR_RNDN); }
  friend Real operator-(const Real& a, const Real& b) { return sub(a, b, MPFR_RNDN); }
  friend Real operator*(const Real& a, const Real& b) { return mul(a, b, MPFR_RNDN); }
  friend Real operator/(const Real& a, const Real& b) { return div(a, b, MPFR_RNDN); }
  Real operator-() const { return apply(mpfr_neg, *this, MPFR_RNDN); }
  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }
  Real& operator*=(const Real& o) { return *this = *this * o; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  /// 2^e at the given precision.
  static Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }
  static Real infinity(int sign, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_inf(r.v_, sign);
    return r;
  }

 private:
  static char rnd_char(mpfr_rnd_t rnd) {
    switch (rnd) {
      case MPFR_RNDD: return 'D';
      case MPFR_RNDU: return 'U';
      case MPFR_RNDZ: return 'Z';
      default: return 'N';
    }
  }

  mpfr_t v_;
};

inline Real abs(const Real& a) { return Real::apply(mpfr_abs, a, MPFR_RNDN); }
inline Real sqrt(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) { return Real::apply(mpfr_sqrt, a, rnd); }
inline Real log(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) { return Real::apply(mpfr_log, a, rnd); }
inline Real exp(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) { return Real::apply(mpfr_exp, a, rnd); }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

/// Complex number with MPFR parts, precision shared by both components.
struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  Complex with_precision(mpfr_prec_t prec) const { return {re.with_precision(prec), im.with_precision(prec)}; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Complex operator*(const Real& s) const { return {re * s, im * s}; }

  /// |z| rounded in the requested direction (hypot is correctly rounded).
  Real modulus(mpfr_rnd_t rnd = MPFR_RNDN) const { return Real::apply(mpfr_hypot, re, im, rnd); }
};

}  // namespace intcheb
