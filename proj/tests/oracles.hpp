#pragma once

// Independent reference computations used only by the test suites.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "intcheb/core/polynomial.hpp"

namespace intcheb::oracle {

/// det of the Sylvester matrix of (p, q) by Bareiss fraction-free elimination.
inline Integer sylvester_resultant(const IntPoly& p, const IntPoly& q) {
  const int n = p.degree(), m = q.degree();
  const int N = n + m;
  if (N == 0) return 1;
  std::vector<std::vector<Integer>> M(static_cast<std::size_t>(N), std::vector<Integer>(static_cast<std::size_t>(N), 0));
  // m rows of p, n rows of q, coefficients high-to-low.
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[r][r + k] = p.coeff(static_cast<std::size_t>(n - k));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[m + r][r + k] = q.coeff(static_cast<std::size_t>(m - k));
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < N; ++r)
        if (M[r][k] != 0) { swap = r; break; }
      if (swap < 0) return 0;
      std::swap(M[k], M[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j) {
        Integer v = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M[k][k];
  }
  Integer d = M[N - 1][N - 1];
  return sign < 0 ? Integer(-d) : d;
}

/// Product of the linear factors (q_i x - p_i).
inline IntPoly from_rational_roots(const std::vector<Rational>& roots) {
  IntPoly acc = IntPoly::constant(1);
  for (const auto& r : roots) acc *= IntPoly{Integer(-r.get_num()), Integer(r.get_den())};
  return acc;
}

inline IntPoly random_poly(std::mt19937_64& rng, int degree, long height) {
  std::uniform_int_distribution<long> dist(-height, height);
  std::vector<Integer> c(static_cast<std::size_t>(degree + 1));
  for (auto& v : c) v = dist(rng);
  while (c.back() == 0) c.back() = dist(rng);
  return IntPoly(std::move(c));
}

/// Integral of x^m against the arcsine density 1/(pi sqrt(4-(x-c)^2)) on
/// [c-2, c+2], by tanh-sinh quadrature applied directly to the singular form.
inline double arcsine_integral(double c, int m) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double x, double xc) {
    // |xc| is the distance to the nearest endpoint, which keeps 4-(x-c)^2 accurate there.
    double e = std::abs(xc);
    double w = e * (4.0 - e);
    if (w <= 0) return 0.0;
    return std::pow(x, m) / (M_PI * std::sqrt(w));
  };
  return integrator.integrate(f, c - 2.0, c + 2.0, 1e-13);
}

}  // namespace intcheb::oracle
