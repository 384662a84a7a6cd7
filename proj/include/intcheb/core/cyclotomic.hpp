#pragma once

#include <vector>

#include "intcheb/core/polynomial.hpp"

namespace intcheb {

/// The first k primes in increasing order.
inline std::vector<unsigned> first_primes(unsigned k) {
  std::vector<unsigned> primes;
  for (unsigned c = 2; primes.size() < k; ++c) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

/// (z^p - 1)/(z - 1) = 1 + z + ... + z^{p-1}.
inline IntPoly geometric_sum(unsigned p) {
  return IntPoly(std::vector<Integer>(p, Integer(1)));
}

/// Q(z) = prod_{m=1}^{k} (z^{p_m} - 1)/(z - 1) over the first k primes.
/// Degree sum(p_m) - k, monic, subleading coefficient k, simple roots on |z| = 1.
inline IntPoly prime_cyclotomic_product(unsigned k) {
  if (k < 1) throw PreconditionError("invalid_parameter", "prime_cyclotomic_product requires k >= 1");
  IntPoly q = IntPoly::constant(1);
  for (unsigned p : first_primes(k)) q *= geometric_sum(p);
  return q;
}

}  // namespace intcheb
