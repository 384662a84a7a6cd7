#pragma once

#include <cstdint>
#include <vector>

#include "intcheb/core/polynomial.hpp"
#include "intcheb/core/resultant.hpp"

namespace intcheb {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

using PolyModP = std::vector<u64>;  // low-to-high, trimmed

inline void trim(PolyModP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyModP reduce(const IntPoly& f, u64 p) {
  PolyModP r;
  r.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) {
    Integer m = a % Integer(static_cast<unsigned long>(p));
    if (m < 0) m += static_cast<unsigned long>(p);
    r.push_back(m.get_ui());
  }
  trim(r);
  return r;
}

inline PolyModP rem(PolyModP a, const PolyModP& b, u64 p) {
  const std::size_t db = b.size() - 1;
  const u64 inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    u64 f = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = (a[shift + j] + p - mulmod(f, b[j], p)) % p;
    trim(a);
  }
  return a;
}

inline std::size_t gcd_degree(PolyModP a, PolyModP b, u64 p) {
  while (!b.empty()) {
    PolyModP r = rem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Primes just below 2^62.
inline constexpr u64 kPrimes[] = {4611686018427387847ULL, 4611686018427387817ULL,
                                  4611686018427387787ULL, 4611686018427387733ULL,
                                  4611686018427387709ULL, 4611686018427387631ULL};

}  // namespace detail

/// True iff the discriminant of p is nonzero.
///
/// Tries Delta(p) mod q for a few large primes q not dividing lc(p): if
/// p mod q is squarefree there, Delta(p) is nonzero. Falls back to the exact
/// integer discriminant when every prime divides it.
inline bool is_squarefree(const IntPoly& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  for (detail::u64 q : detail::kPrimes) {
    detail::PolyModP f = detail::reduce(p, q);
    if (f.size() != p.coeffs().size()) continue;  // q divides the leading coefficient
    detail::PolyModP df;
    for (std::size_t k = 1; k < f.size(); ++k) df.push_back(detail::mulmod(f[k], k % q, q));
    detail::trim(df);
    if (df.empty()) continue;
    if (detail::gcd_degree(f, df, q) == 0) return true;
  }
  return discriminant(p) != 0;
}

}  // namespace intcheb
