#pragma once

#include "intcheb/core/interval.hpp"

namespace intcheb {

/// Arcsine (equilibrium) measure of [c-2, c+2], density 1/(pi sqrt(4-(x-c)^2)).
struct EquilibriumMeasure {
  Rational c;
  Interval support() const { return Interval::centered4(c); }
};

/// Exact moment int x^m dmu: with x = c + 2cos(theta), the even moments of
/// 2cos(theta) are central binomials and the odd ones vanish.
inline Rational arcsine_moment(const EquilibriumMeasure& mu, unsigned m) {
  Rational acc = 0;
  for (unsigned k = 0; k <= m; k += 2)
    acc += Rational(binomial(m, k) * binomial(k, k / 2)) * pow(mu.c, m - k);
  return acc;
}

}  // namespace intcheb
