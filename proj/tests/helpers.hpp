#pragma once

#include <initializer_list>
#include <vector>

#include "intcheb/core/polynomial.hpp"

namespace intcheb::test_support {

inline IntPoly ip(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace intcheb::test_support
