#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <random>

#include "intcheb/core/chebyshev.hpp"
#include "intcheb/core/cyclotomic.hpp"
#include "intcheb/core/resultant.hpp"
#include "intcheb/numeric/roots.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace intcheb;
using intcheb::test_support::ip;

namespace {

// True root within the disc for some listed root.
bool has_root_near(const RootSet& rs, std::complex<double> z, double tol) {
  for (const auto& r : rs.roots)
    if (std::abs(r.approx() - z) < tol) return true;
  return false;
}

}  // namespace

TEST(FindRoots, SimpleExamples) {
  RootSet a = find_roots(ip({-1, 0, 1}), 1e-12);
  ASSERT_EQ(a.roots.size(), 2u);
  EXPECT_TRUE(has_root_near(a, -1.0, 1e-12));
  EXPECT_TRUE(has_root_near(a, 1.0, 1e-12));

  RootSet b = find_roots(ip({1, 2, 2, 1}), 1e-12);
  ASSERT_EQ(b.roots.size(), 3u);
  const double s3 = std::sqrt(3.0) / 2;
  EXPECT_TRUE(has_root_near(b, -1.0, 1e-12));
  EXPECT_TRUE(has_root_near(b, {-0.5, s3}, 1e-12));
  EXPECT_TRUE(has_root_near(b, {-0.5, -s3}, 1e-12));
  for (const auto& r : b.roots) EXPECT_TRUE(r.on_unit_circle);

  RootSet c = find_roots(ip({-6, 11, -6, 1}), 1e-12);
  ASSERT_EQ(c.roots.size(), 3u);
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(has_root_near(c, double(k), 1e-12));
  for (const auto& r : c.roots) EXPECT_TRUE(r.certified_real);
}

TEST(FindRoots, ZeroAndRepeatedRoots) {
  // x^2 (x-1)^3 (x^2+1)
  IntPoly p = pow(IntPoly::x(), 2) * pow(ip({-1, 1}), 3) * ip({1, 0, 1});
  RootSet rs = find_roots(p, 1e-20);
  ASSERT_EQ(rs.roots.size(), 7u);
  int zeros = 0, ones = 0, imag = 0;
  for (const auto& r : rs.roots) {
    if (r.exact && *r.exact == 0) ++zeros;
    if (r.exact && *r.exact == 1) ++ones;
    if (std::abs(std::abs(r.approx().imag()) - 1) < 1e-20) ++imag;
  }
  EXPECT_EQ(zeros, 2);
  EXPECT_EQ(ones, 3);
  EXPECT_EQ(imag, 2);
}

TEST(FindRoots, RadiiRespectEps) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    IntPoly p = oracle::random_poly(rng, 2 + t % 12, 20);
    RootSet rs = find_roots(p, 1e-25);
    ASSERT_EQ(static_cast<int>(rs.roots.size()), p.degree());
    for (const auto& r : rs.roots) {
      double scale = std::max(1.0, std::abs(r.approx()));
      EXPECT_LE(r.radius.to_double(), 1e-25 * scale);
    }
  }
}

TEST(FindRoots, VietaConstantTerm) {
  // |a_0| = |a_n| prod |alpha_k| for random polynomials of degree <= 15.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    IntPoly p = oracle::random_poly(rng, 1 + t % 15, 50);
    if (p.coeff(0) == 0) continue;
    RootSet rs = find_roots(p, 1e-30);
    Enclosure prod = Enclosure::exact(Rational(abs(p.leading())));
    for (const auto& r : rs.roots) prod = mul_nonneg(prod, r.modulus());
    Real a0(abs(p.coeff(0)), 256);
    EXPECT_TRUE(prod.contains(a0)) << to_string(p);
    EXPECT_LT(prod.relative_width(), 1e-20);
  }
}

TEST(FindRoots, DiscriminantFromRoots) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    IntPoly p = oracle::random_poly(rng, 2 + t % 14, 9);
    Integer disc = discriminant(p);
    if (disc == 0) continue;
    RootSet rs = find_roots(p, 1e-40);
    // a_n^{2n-2} prod_{j<k} (a_j - a_k)^2 in long double complex.
    using C = std::complex<long double>;
    const int n = p.degree();
    C prod = 1;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const auto& a = rs.roots[static_cast<std::size_t>(j)].center;
        const auto& b = rs.roots[static_cast<std::size_t>(k)].center;
        C d(static_cast<long double>(a.re.to_double()) - b.re.to_double(),
            static_cast<long double>(a.im.to_double()) - b.im.to_double());
        prod *= d * d;
      }
    long double lead = p.leading().get_d();
    prod *= std::pow(lead, 2 * n - 2);
    long double exact = disc.get_d();
    EXPECT_NEAR(static_cast<double>(prod.real() / exact), 1.0, 1e-9) << to_string(p);
    EXPECT_NEAR(static_cast<double>(prod.imag() / exact), 0.0, 1e-9) << to_string(p);
  }
}

TEST(FindRoots, CyclotomicRootsOnUnitCircle) {
  for (unsigned k = 1; k <= 10; ++k) {
    RootSet rs = find_roots(prime_cyclotomic_product(k), 1e-20);
    for (const auto& r : rs.roots) EXPECT_TRUE(r.on_unit_circle) << "k=" << k;
  }
}

TEST(FindRoots, Chebyshev04RootsCertifiedReal) {
  for (int n : {5, 20, 60, 100}) {
    auto t0 = std::chrono::steady_clock::now();
    RootSet rs = find_roots(chebyshev_04(n), 1e-20);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    ASSERT_EQ(static_cast<int>(rs.roots.size()), n);
    for (int j = 0; j < n; ++j) {
      const Root& r = rs.roots[static_cast<std::size_t>(j)];
      EXPECT_TRUE(r.certified_real);
      double expect = 2 + 2 * std::cos(M_PI * (2 * (n - j) - 1) / (2.0 * n));
      EXPECT_NEAR(r.center.re.to_double(), expect, 1e-12);
    }
    std::cout << "chebyshev_04(" << n << "): " << ms << " ms, " << rs.precision << " bits\n";
  }
}

TEST(FindRoots, PrecisionCapRaises) {
  RootOptions opt;
  opt.eps = 1e-300;
  opt.max_bits = 128;
  EXPECT_THROW(find_roots(ip({-2, 0, 1}), opt), PrecisionExhausted);
  EXPECT_THROW(find_roots(ip({5}), 1e-10), PreconditionError);
}
