#pragma once

#include <variant>

#include "intcheb/core/interval.hpp"
#include "intcheb/core/polynomial.hpp"

namespace intcheb {

/// C_n(y) = 2 cos(n theta) with y = 2 cos(theta): monic, integer, built by
/// C_{k+1} = y C_k - C_{k-1}, C_0 = 2, C_1 = y.
inline IntPoly chebyshev_2cos(unsigned n) {
  IntPoly prev = IntPoly::constant(2);
  IntPoly cur = IntPoly::x();
  if (n == 0) return prev;
  for (unsigned k = 1; k < n; ++k) {
    IntPoly next = IntPoly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Monic Chebyshev polynomial of degree n for I = [a,b]:
/// ((b-a)/4)^n C_n((4x - 2a - 2b)/(b - a)). Its sup-norm on I is 2((b-a)/4)^n.
inline RatPoly monic_chebyshev(unsigned n, const Interval& I) {
  if (n < 1) throw PreconditionError("invalid_degree", "monic_chebyshev requires n >= 1");
  const Rational len = I.length();
  RatPoly y{Rational(-2 * (I.a() + I.b()) / len), Rational(4 / len)};
  RatPoly t = compose(to_rational(chebyshev_2cos(n)), y);
  return t * pow(Rational(len / 4), n);
}

/// Exact sup-norm of monic_chebyshev(n, I) on I.
inline Rational monic_chebyshev_norm(unsigned n, const Interval& I) {
  return 2 * pow(Rational(I.length() / 4), n);
}

/// t_n(x) = 2 cos(n arccos((x-2)/2)), the Chebyshev polynomials of [0,4]:
/// t_0 = 2, t_1 = x - 2, t_{k+1} = (x-2) t_k - t_{k-1}.
inline IntPoly chebyshev_04(unsigned n) {
  if (n < 1) throw PreconditionError("invalid_degree", "chebyshev_04 requires n >= 1");
  return compose(chebyshev_2cos(n), IntPoly{Integer(-2), Integer(1)});
}

/// Transport from domain `from` to domain `to` by the increasing affine map.
struct AffineChange {
  Interval from;
  Interval to;
};
/// P(t) -> P(x^2): sup-norm on [0,1] becomes sup-norm on [-1,1].
struct SquareSubstitution {};

using VariableChange = std::variant<AffineChange, SquareSubstitution>;

/// For AffineChange returns Q = P o L^{-1} with L(from) = to, so that
/// ||Q||_to = ||P||_from. For SquareSubstitution returns P(x^2).
inline RatPoly change_variable(const RatPoly& p, const VariableChange& change) {
  if (std::holds_alternative<SquareSubstitution>(change)) {
    return compose(p, RatPoly{Rational(0), Rational(0), Rational(1)});
  }
  const auto& ac = std::get<AffineChange>(change);
  // L^{-1}(x) = from.a + (x - to.a) * |from| / |to|
  Rational scale = ac.from.length() / ac.to.length();
  RatPoly inv{Rational(ac.from.a() - ac.to.a() * scale), scale};
  return compose(p, inv);
}

inline IntPoly change_variable(const IntPoly& p, SquareSubstitution) {
  return compose(p, IntPoly{Integer(0), Integer(0), Integer(1)});
}

}  // namespace intcheb
