#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "intcheb/core/chebyshev.hpp"
#include "intcheb/core/cyclotomic.hpp"
#include "intcheb/schur/checks.hpp"
#include "intcheb/schur/family.hpp"
#include "helpers.hpp"

using namespace intcheb;
using intcheb::test_support::ip;
using intcheb::test_support::q;

namespace {

const CheckRow* find_row(const CheckResult& r, const std::string& prefix, long n = -1) {
  for (const auto& row : r.rows)
    if (row.quantity.rfind(prefix, 0) == 0 && (n < 0 || row.n == n)) return &row;
  return nullptr;
}

void expect_error(const std::function<void()>& f, const std::string& code) {
  try {
    f();
    ADD_FAILURE() << "expected error " << code;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// Enclosure of a value only known to double precision.
bool encloses(const Enclosure& e, double v, double slack = 1e-15) {
  return e.lower().to_double(MPFR_RNDD) - slack * std::abs(v) <= v && v <= e.upper().to_double(MPFR_RNDU) + slack * std::abs(v);
}

// Chebyshev polynomial for [0,4] with its argument shifted by 1: zeros in [1,5].
IntPoly shifted_cheb(unsigned n) { return primitive_part(compose(to_rational(chebyshev_04(n)), RatPoly{q(-1), q(1)})); }

// |phi(z)| for the segment [c-2, c+2], phi the exterior conformal map onto |w| > 1.
double phi_modulus(double z, double c) {
  double w = z - c;
  return std::abs((w + std::sqrt(std::complex<double>(w * w - 4))) / 2.0);
}

}  // namespace

TEST(Family, ParamListForms) {
  EXPECT_EQ(parse_param_list("25,50,100"), (std::vector<long>{25, 50, 100}));
  EXPECT_EQ(parse_param_list("1..4"), (std::vector<long>{1, 2, 3, 4}));
  EXPECT_EQ(parse_param_list("3,5..7"), (std::vector<long>{3, 5, 6, 7}));
  expect_error([] { parse_param_list("3,x"); }, "invalid_parameter");
  expect_error([] { parse_param_list("7..3"); }, "invalid_parameter");
  expect_error([] { parse_param_list(""); }, "invalid_parameter");
}

TEST(Family, KindsAndMembers) {
  EXPECT_EQ(parse_family_kind("prime_cyclotomic"), FamilyKind::prime_cyclotomic);
  expect_error([] { parse_family_kind("fibonacci"); }, "unknown_family");

  auto cyc = generate_family({FamilyKind::prime_cyclotomic, {1, 2, 3}, {}});
  ASSERT_EQ(cyc.size(), 3u);
  EXPECT_EQ(cyc[0].poly, ip({1, 1}));
  EXPECT_EQ(cyc[2].degree(), 1 + 2 + 4);

  auto tr = generate_family({FamilyKind::chebyshev04_trace, {3, 5}, {}});
  // t_3(x) = (x-2)(x^2-4x+1) on [0,4], so the quotient has zeros 2 +- sqrt(3).
  EXPECT_EQ(tr[0].poly, ip({1, -4, 1}));
  expect_error([] { generate_family({FamilyKind::chebyshev04_trace, {2}, {}}); }, "not_odd_prime");
  expect_error([] { generate_family({FamilyKind::chebyshev04_trace, {9}, {}}); }, "not_odd_prime");
  expect_error([] { generate_family({FamilyKind::chebyshev04, {0}, {}}); }, "invalid_parameter");
  expect_error([] { generate_family({FamilyKind::chebyshev04, {}, {}}); }, "invalid_parameter");
  expect_error([] { generate_family({FamilyKind::user_list, {}, {ip({1, -2, 1})}}); }, "not_squarefree");
}

TEST(Family, ParallelMapKeepsOrderAndFirstError) {
  std::vector<int> items(50);
  for (int i = 0; i < 50; ++i) items[static_cast<std::size_t>(i)] = i;
  auto sq = parallel_map(items, 8, [](int i) { return i * i; });
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sq[static_cast<std::size_t>(i)], i * i);
  try {
    parallel_map(items, 8, [](int i) -> int {
      if (i == 7 || i == 31) throw PreconditionError("e" + std::to_string(i), "x");
      return i;
    });
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "e7");
  }
}

TEST(Growth, CyclotomicEightPrimesAllHold) {
  IntPoly P = prime_cyclotomic_product(8);  // n = 1+2+4+6+10+12+16+18 = 69
  ASSERT_EQ(P.degree(), 69);
  auto r = schur_growth_check(P, 1, 5);
  EXPECT_EQ(r.verdict(), "all-hold");
  EXPECT_FALSE(r.first_violation());
  const CheckRow* a = find_row(r, "|a_{n-1}|");
  ASSERT_TRUE(a);
  // a_{n-1} = -(sum of zeros) = 8, since each Phi_p contributes -1.
  EXPECT_TRUE(a->lhs.contains(8.0));
  EXPECT_NEAR(a->rhs.value_double(), 8 * std::sqrt(69 * std::log(69.0)), 1e-9);
  const CheckRow* mean = find_row(r, "|A_n|");
  ASSERT_TRUE(mean);
  EXPECT_TRUE(encloses(mean->lhs, 8.0 / 69));
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.verdict, Verdict::holds) << row.quantity;
    EXPECT_GE(row.margin.lower().sign(), 0);
  }
}

TEST(Growth, BelowHypothesisIsInformational) {
  auto r = schur_growth_check(prime_cyclotomic_product(7), 1, 3);  // n = 51 < 55
  EXPECT_EQ(r.verdict(), "all-hold");  // the exact inductive step is still checked
  for (const auto& row : r.rows)
    if (row.quantity.rfind("|sigma_", 0) != 0) EXPECT_EQ(row.verdict, Verdict::informational) << row.quantity;
  ASSERT_FALSE(r.notes.empty());
}

TEST(Growth, MeanOfCyclotomicZerosShrinks) {
  // |A_n| = k / sum_{i<=k}(p_i - 1) decreases for k >= 4.
  double prev = 1e9;
  for (unsigned k = 4; k <= 10; ++k) {
    IntPoly P = prime_cyclotomic_product(k);
    Rational mean = abs(elementary_from_poly(P, 1)[0]) / P.degree();
    EXPECT_EQ(mean, q(static_cast<long>(k), P.degree()));
    EXPECT_LT(mean.get_d(), prev);
    prev = mean.get_d();
  }
}

TEST(Growth, RejectsInvalidInput) {
  expect_error([] { schur_growth_check(chebyshev_04(10), 10, 3); }, "root_outside_disk");
  expect_error([] { schur_growth_check(ip({1, 0, 3}), 1, 3); }, "leading_coefficient_exceeds_M");
  expect_error([] { schur_growth_check(ip({1, 2, 1}), 1, 3); }, "not_squarefree");
  expect_error([] { schur_growth_check(ip({1, 1}), 0, 3); }, "invalid_parameter");
}

TEST(Lipschitz, ExactPathForUnitDiskZeros) {
  IntPoly P = prime_cyclotomic_product(8);
  auto r = lipschitz_mean_bound_check(P, 2);
  const CheckRow* row = find_row(r, "|(1/n) sum phi");
  ASSERT_TRUE(row);
  // s_2 over the eight prime cyclotomics: p=2 gives 1, odd p give -1.
  EXPECT_EQ(power_sums(P, 2)[1], -6);
  EXPECT_TRUE(encloses(row->lhs, 6.0 / 69));
  double rhs = 64 * std::sqrt(std::log(69.0) / 69);
  EXPECT_NEAR(row->rhs.value_double(), rhs, 1e-12);
  EXPECT_EQ(row->verdict, Verdict::holds);
  const CheckRow* lip = find_row(r, "sampled Lipschitz");
  ASSERT_TRUE(lip);
  // Directional derivative of r^2 cos(2t)(3-2r) peaks near 4.44 at r ~ 1.1.
  EXPECT_GT(lip->lhs.value_double(), 4.0);
  EXPECT_LT(lip->lhs.value_double(), 16.0);
}

TEST(Lipschitz, DiscPathAgreesWithDirectSum) {
  // Zeros 2 +- sqrt(3): only 2 - sqrt(3) ~ 0.268 lies in the disk.
  IntPoly P = ip({1, -4, 1});
  auto r = lipschitz_mean_bound_check(P, 1);
  const CheckRow* row = find_row(r, "|(1/n) sum phi");
  ASSERT_TRUE(row);
  double z = 2 - std::sqrt(3.0);
  EXPECT_TRUE(encloses(row->lhs, z / 2));
  EXPECT_LT(row->lhs.width().to_double(), 1e-20);
  EXPECT_EQ(row->verdict, Verdict::informational);
}

TEST(Trace, ChebyshevRatiosApproachPowersOfTwo) {
  auto t = trace_mean_table({FamilyKind::chebyshev04, {25, 50, 100, 200}, {}}, 3, 2);
  EXPECT_EQ(t.check.verdict(), "all-hold");
  ASSERT_EQ(t.trends.size(), 3u);
  // Oracle: zeros 2 + 2cos(theta_k) give sigma_1 = 2n and s_2 = 6n.
  const auto& m2 = t.trends[1];
  ASSERT_EQ(m2.values.size(), 4u);
  for (const auto& [n, ratio] : m2.values) EXPECT_EQ(ratio, q(4) - q(2, n - 1));
  EXPECT_TRUE(m2.increasing);
  ASSERT_TRUE(m2.limit);
  EXPECT_EQ(*m2.limit, 4);
  EXPECT_NEAR(m2.final_gap, (2.0 / 199) / 4, 1e-15);
  EXPECT_TRUE(t.trends[2].increasing);
  EXPECT_GT(t.trends[2].final_gap, 0);
  EXPECT_LT(t.trends[2].final_gap, 0.01);
  for (const auto& [n, ratio] : t.trends[0].values) EXPECT_EQ(ratio, 2);
}

TEST(Trace, TraceFamilyMeanIsTwo) {
  auto t = trace_mean_table({FamilyKind::chebyshev04_trace, {3, 5, 7, 11}, {}}, 2);
  EXPECT_EQ(t.check.verdict(), "all-hold");
  for (const auto& row : t.check.rows)
    if (row.quantity == "A_n >= sqrt(e)") {
      EXPECT_TRUE(row.lhs.contains(2.0));
      EXPECT_EQ(row.verdict, Verdict::informational);
    }
  EXPECT_FALSE(t.trends[0].limit);
}

TEST(Trace, ThreadCountDoesNotChangeRows) {
  FamilySpec F{FamilyKind::chebyshev04, {10, 20, 30, 40, 50}, {}};
  auto a = trace_mean_table(F, 3, 1), b = trace_mean_table(F, 3, 8);
  ASSERT_EQ(a.check.rows.size(), b.check.rows.size());
  for (std::size_t i = 0; i < a.check.rows.size(); ++i) {
    EXPECT_EQ(a.check.rows[i].quantity, b.check.rows[i].quantity);
    EXPECT_EQ(a.check.rows[i].lhs.lower_str(), b.check.rows[i].lhs.lower_str());
    EXPECT_EQ(a.check.rows[i].margin.upper_str(), b.check.rows[i].margin.upper_str());
  }
}

TEST(Trace, RejectsNonTotallyPositive) {
  expect_error([] { trace_mean_table({FamilyKind::prime_cyclotomic, {3}, {}}, 2); }, "nonpositive_root");
  expect_error([] { trace_mean_table({FamilyKind::user_list, {}, {ip({-2, 0, 1})}}, 2); }, "nonpositive_root");
  expect_error([] { trace_mean_table({FamilyKind::user_list, {}, {ip({2, -6, 2})}}, 2); }, "not_monic");
}

TEST(GeneralizedMahler, ShiftedChebyshevSitsOnTheSegment) {
  FamilySpec F{FamilyKind::user_list, {}, {shifted_cheb(6), shifted_cheb(9)}};
  auto r = generalized_mahler_hypothesis_report(F, q(3));
  EXPECT_EQ(r.verdict(), "informational");
  for (const auto& row : r.rows) {
    if (row.quantity == "M(P)^(1/n) vs 1") EXPECT_TRUE(row.lhs.contains(1.0));
    if (row.quantity == "A_n vs c") EXPECT_TRUE(row.lhs.contains(3.0));
  }
}

TEST(GeneralizedMahler, EscapingZeroRaisesTheMeasure) {
  // x^2 - 7x + 1: zeros (7 +- sqrt(45))/2, the larger one off [0, 4].
  FamilySpec F{FamilyKind::user_list, {}, {ip({1, -7, 1})}};
  auto r = generalized_mahler_hypothesis_report(F, q(2));
  const CheckRow* row = find_row(r, "M(P)^(1/n)");
  ASSERT_TRUE(row);
  double oracle = std::sqrt(phi_modulus((7 + std::sqrt(45.0)) / 2, 2));
  EXPECT_NEAR(row->lhs.value_double(), oracle, 1e-12);
  EXPECT_GT(row->lhs.lower().to_double(), 1.0);
  expect_error([&] { generalized_mahler_hypothesis_report(F, q(1)); }, "invalid_parameter");
}
