#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "intcheb/core/chebyshev.hpp"
#include "intcheb/numeric/sup_norm.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace intcheb;
using intcheb::test_support::ip;
using intcheb::test_support::q;

namespace {

// Dense-grid maximum of |P| in double; a lower bound for the true norm.
double grid_max(const RatPoly& P, double a, double b, int nodes = 20001) {
  double best = 0;
  for (int k = 0; k < nodes; ++k) {
    double x = a + (b - a) * k / (nodes - 1);
    double v = 0;
    for (int j = P.degree(); j >= 0; --j) v = v * x + P.coeffs()[static_cast<std::size_t>(j)].get_d();
    best = std::max(best, std::abs(v));
  }
  return best;
}

}  // namespace

TEST(SupNorm, Examples) {
  RatPoly p({q(-1, 2), q(0), q(1)});
  auto r = sup_norm_detail(p, Interval(-1, 1));
  EXPECT_EQ(r.lower, q(1, 2));
  EXPECT_EQ(r.upper, q(1, 2));

  auto s = sup_norm_detail(ip({1, -5, 5}), Interval(0, 1));
  EXPECT_EQ(s.lower, 1);
  EXPECT_EQ(s.upper, 1);

  auto z = sup_norm_detail(RatPoly{}, Interval(0, 1));
  EXPECT_EQ(z.upper, 0);
  auto c = sup_norm_detail(ip({-3}), Interval(0, 1));
  EXPECT_EQ(c.lower, 3);
}

TEST(SupNorm, InteriorMaximumEnclosed) {
  // x(1-x) on [0,1]: interior max 1/4 at the exact rational critical point.
  auto r = sup_norm_detail(ip({0, 1, -1}), Interval(0, 1));
  EXPECT_EQ(r.lower, q(1, 4));
  EXPECT_EQ(r.upper, q(1, 4));
  // x^3 - 2x on [0,1]: max at x = sqrt(2/3), value (4/3) sqrt(2/3).
  auto t = sup_norm_detail(ip({0, -2, 0, 1}), Interval(0, 1), 1e-20);
  double expect = 4.0 / 3.0 * std::sqrt(2.0 / 3.0);
  EXPECT_TRUE(t.enclosure().contains(expect) || std::abs(t.lower.get_d() - expect) < 1e-15);
  EXPECT_LE((t.upper - t.lower) / t.upper, Rational(1e-20));
}

TEST(SupNorm, MonicChebyshevIdentity) {
  const std::vector<Interval> intervals{Interval(-1, 1), Interval(0, 1), Interval(0, 4), Interval(q(1, 5), 1)};
  for (const auto& I : intervals)
    for (unsigned n = 1; n <= 50; n += 7) {
      auto r = sup_norm_detail(monic_chebyshev(n, I), I, 1e-10);
      Rational expect = monic_chebyshev_norm(n, I);
      EXPECT_LE(r.lower, expect);
      EXPECT_GE(r.upper, expect);
      EXPECT_LE((r.upper - r.lower) / expect, Rational(1e-10));
    }
}

TEST(SupNorm, AgreesWithDenseGrid) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    IntPoly p = oracle::random_poly(rng, 1 + t % 9, 6);
    auto r = sup_norm_detail(p, Interval(-1, 2), 1e-12);
    double g = grid_max(to_rational(p), -1, 2);
    EXPECT_GE(r.upper.get_d() * (1 + 1e-12), g);
    EXPECT_NEAR(r.lower.get_d() / g, 1.0, 1e-5) << to_string(p);
  }
}

TEST(SupNorm, SquareSubstitutionIdentity) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 25; ++t) {
    IntPoly p = oracle::random_poly(rng, 1 + t % 7, 5);
    Enclosure a = sup_norm(p, Interval(0, 1), 1e-14);
    Enclosure b = sup_norm(change_variable(p, SquareSubstitution{}), Interval(-1, 1), 1e-14);
    EXPECT_FALSE(a.upper() < b.lower() || b.upper() < a.lower()) << to_string(p);
  }
}

TEST(LogPotential, SymmetricPairMaximum) {
  // (1/2) log(x(1-x)) peaks at x = 1/2 with value log(1/2).
  auto m = log_potential_max({ip({0, 1}), ip({1, -1})}, {q(1, 2), q(1, 2)}, Interval(0, 1));
  EXPECT_EQ(m.argmax, q(1, 2));
  EXPECT_NEAR(m.value.value_double(), std::log(0.5), 1e-15);
  EXPECT_LT(m.value.width().to_double(), 1e-30);
}

TEST(LogPotential, MatchesSupNormOfProduct) {
  // weights e_i/m reproduce log ||prod Q_i^{e_i}||^{1/m}.
  std::vector<IntPoly> Q{ip({0, 1}), ip({1, -1}), ip({-1, 2}), ip({1, -5, 5})};
  std::vector<long> e{3, 3, 1, 2};
  IntPoly R = IntPoly::constant(1);
  long m = 0;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    R *= pow(Q[i], static_cast<unsigned>(e[i]));
    m += e[i] * Q[i].degree();
  }
  for (long v : e) w.push_back(q(v, m));
  auto pm = log_potential_max(Q, w, Interval(0, 1));
  auto sn = sup_norm_detail(R, Interval(0, 1), 1e-20);
  double direct = std::log(sn.lower.get_d()) / static_cast<double>(m);
  EXPECT_NEAR(pm.value.value_double(), direct, 1e-12);
}

TEST(LogPotential, RejectsBadInput) {
  EXPECT_THROW(log_potential_max({ip({1})}, {q(1)}, Interval(0, 1)), PreconditionError);
  EXPECT_THROW(log_potential_max({ip({0, 1})}, {q(-1)}, Interval(0, 1)), PreconditionError);
}
