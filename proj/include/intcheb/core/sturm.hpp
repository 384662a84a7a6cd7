#pragma once

#include <vector>

#include "intcheb/core/polynomial.hpp"

namespace intcheb {

/// Sturm chain P, P', -rem(...), each term scaled by a positive constant to
/// keep integer coefficients small.
inline std::vector<IntPoly> sturm_chain(const IntPoly& P) {
  std::vector<IntPoly> chain;
  if (P.degree() < 1) return chain;
  auto signed_primitive = [](const RatPoly& r) {
    IntPoly s = primitive_part(r);
    return r.leading() < 0 ? IntPoly(-s) : s;
  };
  chain.push_back(signed_primitive(to_rational(P)));
  chain.push_back(signed_primitive(to_rational(P.derivative())));
  while (chain.back().degree() > 0) {
    RatPoly r = divmod(to_rational(chain[chain.size() - 2]), to_rational(chain.back())).second;
    if (r.is_zero()) break;
    chain.push_back(signed_primitive(-r));
  }
  return chain;
}

namespace detail {

inline int sign_variations(const std::vector<IntPoly>& chain, const Rational& x) {
  int v = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace detail

/// Number of distinct real roots of P in the closed interval [a, b] (exact).
inline int count_real_roots(const IntPoly& P, const Rational& a, const Rational& b) {
  if (P.degree() < 1 || b < a) return 0;
  auto chain = sturm_chain(P);
  int n = detail::sign_variations(chain, a) - detail::sign_variations(chain, b);  // roots in (a, b]
  if (P(a) == 0) ++n;
  return n;
}

/// Cauchy bound: every complex root has modulus < 1 + max |a_k / a_n|.
inline Rational cauchy_root_bound(const IntPoly& P) {
  Rational m = 0;
  for (int k = 0; k < P.degree(); ++k) {
    Rational r(abs(P.coeffs()[static_cast<std::size_t>(k)]), abs(P.leading()));
    r.canonicalize();
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace intcheb
