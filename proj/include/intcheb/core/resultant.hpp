#pragma once

#include <utility>

#include "intcheb/core/polynomial.hpp"

namespace intcheb {

namespace detail {

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> r = a.coeffs();
  const int db = b.degree();
  const Integer& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Integer f = r[static_cast<std::size_t>(k)];
    for (auto& v : r) v *= lb;
    if (f != 0)
      for (int j = 0; j <= db; ++j)
        r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(std::max(db, 0)));
  return IntPoly(std::move(r));
}

}  // namespace detail

/// Res(P, Q) = lc(P)^deg Q * prod Q(z_j) over the roots z_j of P.
///
/// Computed with the fraction-free subresultant remainder sequence; all
/// intermediate divisions are exact.
inline Integer resultant(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero())
    throw PreconditionError("zero_polynomial", "resultant of the zero polynomial");
  IntPoly a = p, b = q;
  if (a.degree() == 0) return pow(a.leading(), static_cast<unsigned long>(b.degree()));
  if (b.degree() == 0) return pow(b.leading(), static_cast<unsigned long>(a.degree()));

  int sign = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    std::swap(a, b);
  }
  Integer ca = content(a), cb = content(b);
  Integer t = pow(ca, static_cast<unsigned long>(b.degree())) * pow(cb, static_cast<unsigned long>(a.degree()));
  a = exact_quotient(a, IntPoly::constant(ca));
  b = exact_quotient(b, IntPoly::constant(cb));

  Integer g = 1, h = 1;
  while (true) {
    const int da = a.degree(), db = b.degree();
    const unsigned long delta = static_cast<unsigned long>(da - db);
    if ((da & 1) && (db & 1)) sign = -sign;
    IntPoly r = detail::pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    Integer div = g * pow(h, delta);
    std::vector<Integer> rc = r.coeffs();
    for (auto& v : rc) v = divexact(v, div);
    b = IntPoly(std::move(rc));
    g = a.leading();
    // h <- g^delta / h^(delta-1)
    if (delta > 0) h = divexact(pow(g, delta), pow(h, delta - 1));
    if (b.degree() == 0) {
      const unsigned long dA = static_cast<unsigned long>(a.degree());
      // h <- lc(b)^deg a / h^(deg a - 1)
      Integer hb = dA == 0 ? Integer(1) : divexact(pow(b.leading(), dA), pow(h, dA - 1));
      Integer res = t * hb;
      return sign < 0 ? Integer(-res) : res;
    }
  }
}

/// Delta(P) = lc^(2n-2) prod_{j<k} (z_j - z_k)^2 = (-1)^(n(n-1)/2) Res(P, P') / lc.
inline Integer discriminant(const IntPoly& p) {
  if (p.degree() < 1) throw PreconditionError("constant_polynomial", "discriminant of a constant polynomial");
  if (p.degree() == 1) return 1;
  const long n = p.degree();
  Integer r = resultant(p, p.derivative());
  Integer d = divexact(r, p.leading());
  if (((n * (n - 1)) / 2) & 1) d = -d;
  return d;
}

}  // namespace intcheb
