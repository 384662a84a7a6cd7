#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "intcheb/core/polynomial.hpp"

namespace intcheb {

inline constexpr int kIrreducibilityDegreeCap = 8;

namespace detail {

/// Positive divisors of |v| (v != 0) by trial division.
inline std::vector<std::int64_t> positive_divisors(std::int64_t v) {
  if (v < 0) v = -v;
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= v; ++d) {
    if (v % d) continue;
    small.push_back(d);
    if (d != v / d) large.push_back(v / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Polynomial of degree <= xs.size()-1 through (xs[i], ys[i]) by divided differences.
inline RatPoly interpolate(const std::vector<std::int64_t>& xs, const std::vector<std::int64_t>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - level]);
  RatPoly acc = RatPoly::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = acc * RatPoly{Rational(-xs[i]), Rational(1)} + RatPoly::constant(dd[i]);
  }
  return acc;
}

inline bool is_integral(const RatPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Rational& q) { return q.get_den() == 1; });
}

}  // namespace detail

/// Decides irreducibility over Q exactly (Kronecker's method: every factor of
/// degree d is determined by its values at d+1 integer points, and those
/// values divide the values of p). Throws UndecidedError above the degree
/// cap or when the divisor search would be too large.
inline bool irreducible_over_Q(const IntPoly& input, int degree_cap = kIrreducibilityDegreeCap,
                               std::uint64_t combination_budget = 20'000'000) {
  if (input.degree() > degree_cap)
    throw UndecidedError("irreducibility is only decided up to degree " + std::to_string(degree_cap));
  if (input.degree() < 1) return false;
  if (input.degree() == 1) return true;
  const IntPoly p = primitive_part(input);
  const int n = p.degree();

  struct Sample {
    std::int64_t x;
    std::int64_t value;
    std::vector<std::int64_t> divisors;
  };
  std::vector<Sample> samples;
  const Integer limit("1000000000000");  // keeps trial division cheap
  for (std::int64_t i = 0; i <= 48; ++i) {
    const std::int64_t x = i % 2 ? (i + 1) / 2 : -(i / 2);  // 0, 1, -1, 2, -2, ...
    Integer v = p(Integer(static_cast<long>(x)));
    if (v == 0) return false;  // integer root, n >= 2
    if (abs(v) >= limit) continue;
    std::int64_t iv = v.get_si();
    samples.push_back({x, iv, detail::positive_divisors(iv)});
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.divisors.size() < b.divisors.size(); });

  const RatPoly pr = to_rational(p);
  for (int d = 1; d <= n / 2; ++d) {
    if (static_cast<std::size_t>(d + 1) > samples.size())
      throw UndecidedError("not enough usable evaluation points");
    std::vector<const Sample*> pts;
    for (int i = 0; i <= d; ++i) pts.push_back(&samples[static_cast<std::size_t>(i)]);
    std::uint64_t combos = 1;
    for (int i = 0; i <= d; ++i) {
      std::uint64_t k = pts[static_cast<std::size_t>(i)]->divisors.size() * (i == 0 ? 1 : 2);
      if (combos > combination_budget / std::max<std::uint64_t>(k, 1))
        throw UndecidedError("divisor combination budget exceeded");
      combos *= k;
    }
    std::vector<std::int64_t> xs, ys(static_cast<std::size_t>(d + 1));
    for (auto* s : pts) xs.push_back(s->x);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d + 1), 0);
    // Odometer over (divisor, sign) choices; the first value stays positive
    // since a factor is only determined up to sign.
    auto radix = [&](std::size_t i) { return pts[i]->divisors.size() * (i == 0 ? 1 : 2); };
    while (true) {
      for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
        std::size_t nd = pts[i]->divisors.size();
        std::int64_t v = pts[i]->divisors[idx[i] % nd];
        ys[i] = idx[i] >= nd ? -v : v;
      }
      RatPoly g = detail::interpolate(xs, ys);
      if (g.degree() == d && detail::is_integral(g)) {
        if (divmod(pr, g).second.is_zero()) return false;
      }
      std::size_t i = 0;
      while (i <= static_cast<std::size_t>(d) && ++idx[i] == radix(i)) idx[i++] = 0;
      if (i > static_cast<std::size_t>(d)) break;
    }
  }
  return true;
}

}  // namespace intcheb
