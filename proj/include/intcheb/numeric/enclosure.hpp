#pragma once

#include <limits>
#include <string>

#include "intcheb/core/error.hpp"
#include "intcheb/numeric/real.hpp"

namespace intcheb {

inline constexpr mpfr_prec_t kEnclosureBits = 256;

/// Closed real interval [lower, upper] with outward-rounded MPFR endpoints.
class Enclosure {
 public:
  Enclosure() : lo_(0.0, kEnclosureBits), hi_(0.0, kEnclosureBits) {}
  Enclosure(Real lower, Real upper) : lo_(std::move(lower)), hi_(std::move(upper)) {
    if (hi_ < lo_) throw Error("internal", "enclosure with lower > upper");
  }

  static Enclosure exact(const Rational& q, mpfr_prec_t prec = kEnclosureBits) {
    return {Real(q, prec, MPFR_RNDD), Real(q, prec, MPFR_RNDU)};
  }
  static Enclosure between(const Rational& lo, const Rational& hi, mpfr_prec_t prec = kEnclosureBits) {
    return {Real(lo, prec, MPFR_RNDD), Real(hi, prec, MPFR_RNDU)};
  }

  const Real& lower() const { return lo_; }
  const Real& upper() const { return hi_; }
  Real value() const {
    Real m = Real::add(lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }
  double value_double() const { return value().to_double(); }
  Real width() const { return Real::sub(hi_, lo_, MPFR_RNDU); }

  /// width / |value|; zero for a point enclosure, infinite when 0 is straddled.
  double relative_width() const {
    if (lo_ == hi_) return 0.0;
    if (lo_.sign() <= 0 && hi_.sign() >= 0) return std::numeric_limits<double>::infinity();
    Real m = lo_.sign() > 0 ? lo_ : abs(hi_);
    return Real::div(width(), m, MPFR_RNDU).to_double(MPFR_RNDU);
  }

  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
  bool contains(double x) const { return contains(Real(x, 64)); }
  bool certainly_less(const Real& x) const { return hi_ < x; }
  bool certainly_greater(const Real& x) const { return lo_ > x; }

  /// Decimal endpoints rounded outward.
  std::string lower_str(int digits = 20) const { return lo_.str(digits, MPFR_RNDD); }
  std::string upper_str(int digits = 20) const { return hi_.str(digits, MPFR_RNDU); }
  std::string value_str(int digits = 17) const { return value().str(digits); }

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return {Real::add(a.lo_, b.lo_, MPFR_RNDD), Real::add(a.hi_, b.hi_, MPFR_RNDU)};
  }
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    return {Real::sub(a.lo_, b.hi_, MPFR_RNDD), Real::sub(a.hi_, b.lo_, MPFR_RNDU)};
  }

  // Arithmetic for nonnegative enclosures only (the library's uses).
  friend Enclosure mul_nonneg(const Enclosure& a, const Enclosure& b) {
    return {Real::mul(a.lo_, b.lo_, MPFR_RNDD), Real::mul(a.hi_, b.hi_, MPFR_RNDU)};
  }

  /// x^(1/n) for x >= 0, rounded outward.
  Enclosure root(unsigned long n) const {
    Real lo(lo_.precision()), hi(hi_.precision());
    Real l = lo_.sign() < 0 ? Real(0.0, lo_.precision()) : lo_;
    mpfr_rootn_ui(lo.get(), l.get(), n, MPFR_RNDD);
    mpfr_rootn_ui(hi.get(), hi_.get(), n, MPFR_RNDU);
    return {lo, hi};
  }
  Enclosure sqrt() const { return root(2); }

 private:
  Real lo_, hi_;
};

/// log|z| for a nonzero integer, rounded in the given direction.
inline Real log_abs(const Integer& z, mpfr_rnd_t rnd, mpfr_prec_t prec = kEnclosureBits) {
  if (z == 0) throw Error("internal", "log of zero");
  Real v(abs(z), prec, rnd);
  return log(v, rnd);
}

}  // namespace intcheb
