#pragma once

#include <vector>

#include "intcheb/core/polynomial.hpp"

namespace intcheb {

/// Elementary symmetric functions sigma_1..sigma_m and power sums s_1..s_m of
/// the roots of a degree-n polynomial. Either side may be empty until filled
/// by `newton_convert`. Index 0 holds order 1.
struct SymmetricData {
  std::vector<Rational> sigma;
  std::vector<Rational> powersums;
  int n = 0;

  const Rational& sigma_at(int m) const { return sigma.at(static_cast<std::size_t>(m - 1)); }
  const Rational& powersum_at(int m) const { return powersums.at(static_cast<std::size_t>(m - 1)); }
};

enum class NewtonDirection { ElementaryToPowerSums, PowerSumsToElementary };

/// sigma_m = (-1)^m a_{n-m} / a_n for m = 1..order.
inline std::vector<Rational> elementary_from_poly(const IntPoly& p, int order) {
  const int n = p.degree();
  if (n < 1) throw PreconditionError("constant_polynomial", "symmetric functions need degree >= 1");
  if (order < 0 || order > n)
    throw PreconditionError("order_out_of_range",
                            "requested order " + std::to_string(order) + " exceeds degree " + std::to_string(n));
  std::vector<Rational> sigma;
  sigma.reserve(static_cast<std::size_t>(order));
  for (int m = 1; m <= order; ++m) {
    Rational v(p.coeff(static_cast<std::size_t>(n - m)), p.leading());
    v.canonicalize();
    sigma.push_back(m & 1 ? Rational(-v) : v);
  }
  return sigma;
}

/// m sigma_m = sum_{j=1}^m (-1)^{j-1} s_j sigma_{m-j}, solved for s_m.
/// sigma entries past the supplied vector are read as zero, so power sums of
/// any order are available once sigma_1..sigma_n are known.
inline std::vector<Rational> power_sums_from_elementary(const std::vector<Rational>& sigma, int order) {
  auto sig = [&](int k) -> Rational {
    if (k == 0) return Rational(1);
    return k <= static_cast<int>(sigma.size()) ? sigma[static_cast<std::size_t>(k - 1)] : Rational(0);
  };
  std::vector<Rational> s;
  s.reserve(static_cast<std::size_t>(order));
  for (int m = 1; m <= order; ++m) {
    Rational acc = m * sig(m);
    for (int j = 1; j < m; ++j) {
      Rational term = s[static_cast<std::size_t>(j - 1)] * sig(m - j);
      if (j & 1) acc -= term;
      else acc += term;
    }
    // acc = (-1)^{m-1} s_m
    s.push_back(m & 1 ? acc : Rational(-acc));
  }
  return s;
}

inline std::vector<Rational> elementary_from_power_sums(const std::vector<Rational>& s, int order) {
  if (order > static_cast<int>(s.size()))
    throw PreconditionError("order_out_of_range", "not enough power sums for the requested order");
  std::vector<Rational> sigma;
  sigma.reserve(static_cast<std::size_t>(order));
  for (int m = 1; m <= order; ++m) {
    Rational acc = 0;
    for (int j = 1; j <= m; ++j) {
      Rational prev = m - j == 0 ? Rational(1) : sigma[static_cast<std::size_t>(m - j - 1)];
      Rational term = s[static_cast<std::size_t>(j - 1)] * prev;
      if (j & 1) acc += term;
      else acc -= term;
    }
    sigma.push_back(acc / m);
  }
  return sigma;
}

/// Fills the side of `input` that is missing, up to the order of the side
/// that is present.
inline SymmetricData newton_convert(SymmetricData input, NewtonDirection direction) {
  if (direction == NewtonDirection::ElementaryToPowerSums) {
    int order = static_cast<int>(input.sigma.size());
    if (input.n > 0 && order > input.n)
      throw PreconditionError("order_out_of_range", "more elementary functions than the degree allows");
    input.powersums = power_sums_from_elementary(input.sigma, order);
  } else {
    input.sigma = elementary_from_power_sums(input.powersums, static_cast<int>(input.powersums.size()));
  }
  return input;
}

/// Both sides for the roots of p, exact.
inline SymmetricData symmetric_data(const IntPoly& p, int order) {
  SymmetricData d;
  d.n = p.degree();
  d.sigma = elementary_from_poly(p, order);
  return newton_convert(std::move(d), NewtonDirection::ElementaryToPowerSums);
}

/// Power sums s_1..s_order of the roots of p; order may exceed deg p.
inline std::vector<Rational> power_sums(const IntPoly& p, int order) {
  return power_sums_from_elementary(elementary_from_poly(p, p.degree()), order);
}

}  // namespace intcheb
