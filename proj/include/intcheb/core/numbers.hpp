#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "intcheb/core/error.hpp"

namespace intcheb {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline Integer parse_integer(std::string_view text) {
  std::string s = trim(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  bool ok = !s.empty();
  for (std::size_t i = 0; i < s.size() && ok; ++i) {
    char ch = s[i];
    ok = std::isdigit(static_cast<unsigned char>(ch)) || (i == 0 && ch == '-' && s.size() > 1);
  }
  if (!ok) throw PreconditionError("malformed_number", "not an integer: '" + s + "'");
  return Integer(s, 10);
}

/// Accepts "p", "p/q" and finite decimals such as "-0.25" (converted exactly).
inline Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw PreconditionError("malformed_number", "zero denominator: '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    Integer w = parse_integer(whole);
    Integer f = parse_integer(frac);
    if (f < 0 || w < 0) throw PreconditionError("malformed_number", "bad decimal: '" + s + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational q(w * scale + f, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  return Rational(parse_integer(s));
}

inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
  r.canonicalize();
  return r;
}

inline Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }
inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Exact quotient; caller guarantees divisibility.
inline Integer divexact(const Integer& a, const Integer& b) {
  Integer r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace intcheb
