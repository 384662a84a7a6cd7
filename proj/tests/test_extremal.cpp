#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "intcheb/core/chebyshev.hpp"
#include "intcheb/extremal/basis.hpp"
#include "intcheb/extremal/bounds.hpp"
#include "intcheb/extremal/exhaustive.hpp"
#include "intcheb/extremal/factor_optimizer.hpp"
#include "intcheb/extremal/simplex.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace intcheb;
using intcheb::test_support::ip;
using intcheb::test_support::q;

namespace {

bool encloses(const Enclosure& e, double v, double slack = 0) {
  return e.lower().to_double(MPFR_RNDD) - slack <= v && v <= e.upper().to_double(MPFR_RNDU) + slack;
}

// Minimal sup-norm over every nonzero polynomial of degree <= n, no pruning.
SupNormResult brute_force_min_norm(const Interval& I, int n, long height) {
  std::vector<long> c(static_cast<std::size_t>(n + 1), -height);
  std::optional<SupNormResult> best;
  while (true) {
    bool nonzero = false;
    for (long v : c) nonzero |= v != 0;
    if (nonzero) {
      std::vector<Integer> z(c.begin(), c.end());
      auto r = sup_norm_detail(IntPoly(std::move(z)), I, 1e-30);
      if (!best || r.upper < best->upper) best = r;
    }
    std::size_t k = 0;
    while (k < c.size() && c[k] == height) c[k++] = -height;
    if (k == c.size()) break;
    ++c[k];
  }
  return *best;
}

}  // namespace

TEST(Hilbert, Examples) {
  auto r = hilbert_upper_bound(Interval(0, 1));
  EXPECT_EQ(r.kind, "hilbert");
  EXPECT_EQ(r.value.lower().to_rational(), q(1, 2));
  EXPECT_EQ(r.value.width().to_double(), 0.0);
  EXPECT_EQ(hilbert_upper_bound(Interval(0, 4)).value.lower().to_rational(), 1);
  EXPECT_EQ(hilbert_upper_bound(Interval(-3, 7)).value.upper().to_rational(), 1);
  auto s = hilbert_upper_bound(Interval(-1, 1));
  EXPECT_TRUE(encloses(s.value, 1 / std::sqrt(2.0)));
  EXPECT_LT(s.value.width().to_double(), 1e-60);
}

TEST(Trigub, Examples) {
  auto r1 = trigub_interval_report(1);
  EXPECT_EQ(r1.interval, Interval(q(1, 5), q(1)));
  EXPECT_EQ(r1.lower, q(1, 3));
  EXPECT_TRUE(encloses(r1.upper, std::sqrt(0.2)));
  auto r10 = trigub_interval_report(10);
  EXPECT_EQ(r10.lower, q(1, 12));
  EXPECT_TRUE(r10.ratio.certainly_greater(r1.ratio.upper()));
  EXPECT_THROW(trigub_interval_report(0), PreconditionError);
}

TEST(Trigub, RatioIncreasesTowardOne) {
  Enclosure prev = trigub_interval_report(1).ratio;
  for (long m = 2; m <= 100; ++m) {
    auto r = trigub_interval_report(m);
    EXPECT_TRUE(r.ratio.certainly_greater(prev.upper())) << m;
    EXPECT_TRUE(r.ratio.certainly_less(Real(1.0, 64))) << m;
    // Lower over upper, computed independently in double.
    double len = 1.0 / m - 1.0 / (m + 4);
    EXPECT_NEAR(r.ratio.value_double(), (1.0 / (m + 2)) / std::sqrt(len / 4), 1e-14) << m;
    prev = r.ratio;
  }
  EXPECT_GT(prev.value_double(), 0.9995);
}

TEST(LeadingCoeff, SquareSubstitutionRecoversSqrt2) {
  IntPoly R = change_variable(ip({0, 1, -1}), SquareSubstitution{});  // x^2 (1 - x^2)
  EXPECT_EQ(R, ip({0, 0, 1, 0, -1}));
  auto b = leading_coeff_lower_bound(R, Interval(-1, 1), 1e-30);
  EXPECT_FALSE(b.vacuous);
  EXPECT_TRUE(b.norm.contains(0.25));
  EXPECT_NEAR(b.bound.value_double(), std::sqrt(2.0), 1e-10);
  EXPECT_TRUE(encloses(b.bound, std::sqrt(2.0), 1e-15));
  EXPECT_EQ(b.report.kind, "lower_L");
}

TEST(LeadingCoeff, VacuousAndGeneric) {
  auto one = leading_coeff_lower_bound(ip({1}), Interval(0, 1));
  EXPECT_TRUE(one.vacuous);
  EXPECT_EQ(one.bound.lower().to_rational(), 1);
  EXPECT_EQ(one.generic.lower().to_rational(), 2);
  EXPECT_EQ(one.generic.upper().to_rational(), 2);
  auto g = leading_coeff_lower_bound(ip({0, 1}), Interval(0, 2));
  EXPECT_TRUE(g.vacuous);  // ||x||_[0,2] = 2
  EXPECT_TRUE(encloses(g.generic, std::sqrt(2.0)));
  EXPECT_THROW(leading_coeff_lower_bound(IntPoly{}, Interval(0, 1)), PreconditionError);
}

TEST(ResultantInequality, RandomCoprimePairs) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(0, 12), deg(1, 5), rdeg(1, 4);
  const Interval I(0, 1);
  int checked = 0;
  while (checked < 200) {
    std::vector<Rational> roots;
    const int n = static_cast<int>(deg(rng));
    for (int k = 0; k < n; ++k) {
      long d = 1 + num(rng);
      long p = std::uniform_int_distribution<long>(0, d)(rng);
      roots.push_back(q(p, d));
    }
    IntPoly P = oracle::from_rational_roots(roots);
    IntPoly R = oracle::random_poly(rng, static_cast<int>(rdeg(rng)), 3);
    if (gcd(P, R).degree() > 0) continue;
    auto r = resultant_inequality(P, R, I);
    EXPECT_TRUE(r.roots_in_interval);
    EXPECT_EQ(r.res, oracle::sylvester_resultant(P, R));
    EXPECT_GE(abs(r.res), 1);
    EXPECT_TRUE(r.holds) << to_string(P) << " | " << to_string(R);
    ++checked;
  }
}

TEST(ResultantInequality, FlagsRootsOutside) {
  auto r = resultant_inequality(ip({-3, 1}), ip({0, 1}), Interval(0, 1));
  EXPECT_FALSE(r.roots_in_interval);
}

TEST(Simplex, SmallProgram) {
  auto s = simplex_maximize({{1, 2}, {3, 1}}, {4, 6}, {1, 1});
  EXPECT_NEAR(s.objective, 2.8, 1e-14);
  EXPECT_NEAR(s.x[0], 1.6, 1e-14);
  EXPECT_NEAR(s.x[1], 1.2, 1e-14);
  EXPECT_THROW(simplex_maximize({{-1, 0}}, {1}, {1, 0}), PreconditionError);
  EXPECT_THROW(simplex_maximize({{1}}, {-1}, {1}), PreconditionError);
}

TEST(Simplex, DualCertifiesOptimality) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 50 + 30 * trial, n = 2 + trial % 7;
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    for (auto& row : A)
      for (auto& v : row) v = u(rng);
    std::vector<double> b(m, 1.0), c(n);
    for (auto& v : c) v = u(rng);
    auto s = simplex_maximize(A, b, c);
    // Weak duality pieces: primal and dual feasible with equal objectives.
    double dual_obj = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0;
      for (std::size_t k = 0; k < n; ++k) row += A[i][k] * s.x[k];
      EXPECT_LE(row, 1 + 1e-10);
      EXPECT_GE(s.dual[i], -1e-12);
      dual_obj += s.dual[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
      double col = 0;
      for (std::size_t i = 0; i < m; ++i) col += A[i][k] * s.dual[i];
      EXPECT_GE(col, c[k] - 1e-10);
      EXPECT_GE(s.x[k], 0);
    }
    EXPECT_NEAR(dual_obj, s.objective, 1e-10 * std::max(1.0, s.objective));
  }
}

TEST(Basis, Validation) {
  EXPECT_THROW(make_basis({}), PreconditionError);
  EXPECT_THROW(make_basis({ip({1})}), PreconditionError);
  EXPECT_THROW(make_basis({ip({0, 2})}), PreconditionError);
  EXPECT_THROW(make_basis({ip({1, -1}), ip({-1, 1})}), PreconditionError);
  try {
    make_basis({ip({0, 1}), ip({0, -1})});
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.code(), "associate_factors");
  }
  auto B = make_basis({ip({0, 1}), ip({1, 0, 1}), ip({-3, 1})}, Interval(0, 1));
  EXPECT_EQ(B.roots_in_interval, (std::vector<bool>{true, false, false}));
}

TEST(Basis, ShippedFileMatchesEmbeddedDefault) {
  auto file = load_basis(std::string(INTCHEB_DATA_DIR) + "/default_basis_01.json", Interval(0, 1));
  auto embedded = default_basis_01();
  ASSERT_EQ(file.size(), embedded.size());
  for (std::size_t i = 0; i < file.size(); ++i) EXPECT_EQ(file.factors[i], embedded.factors[i]);
  // Factors 5 and 7 have complex roots (checked with numpy.roots).
  EXPECT_EQ(embedded.roots_in_interval, (std::vector<bool>{true, true, true, true, true, false, true, false}));
  EXPECT_EQ(embedded.factors[5], ip({1, -6, 19, -26, 13}));
  EXPECT_THROW(load_basis("/nonexistent/basis.json"), PreconditionError);
  EXPECT_THROW(basis_from_json(Json::parse(R"({"a":1})")), PreconditionError);
}

TEST(Exhaustive, SpecExamples) {
  ExhaustiveOptions o;
  o.n_max = 4;
  o.height = 3;
  auto wide = exhaustive_integer_chebyshev(Interval(0, 5), o);
  for (const auto& row : wide.rows) {
    EXPECT_EQ(row.best, ip({1})) << row.n;
    EXPECT_EQ(row.norm.upper, 1);
  }
  o.n_max = 2;
  o.height = 2;
  auto two = exhaustive_integer_chebyshev(Interval(0, 1), o);
  EXPECT_EQ(two.rows[1].best, ip({0, -1, 1}));
  EXPECT_EQ(two.rows[1].norm.lower, q(1, 4));
  EXPECT_EQ(two.rows[1].norm.upper, q(1, 4));
  o.n_max = 1;
  o.height = 5;
  auto one = exhaustive_integer_chebyshev(Interval(0, 1), o);
  EXPECT_EQ(one.rows[0].norm.upper, 1);
  EXPECT_EQ(one.rows[0].best, ip({-1, 1}));  // smallest canonical vector among norm-1 ties
}

TEST(Exhaustive, MatchesBruteForce) {
  for (const Interval& I : {Interval(0, 1), Interval(-1, 1), Interval(q(1, 3), q(2))}) {
    ExhaustiveOptions o;
    o.n_max = 3;
    o.height = 2;
    auto res = exhaustive_integer_chebyshev(I, o);
    for (const auto& row : res.rows) {
      // Equal-norm polynomials carry slightly different enclosures, so compare by overlap.
      SupNormResult want = brute_force_min_norm(I, row.n, o.height);
      EXPECT_LE(row.norm.lower, want.upper) << I.str() << " n=" << row.n;
      EXPECT_GE(row.norm.upper, want.lower) << I.str() << " n=" << row.n;
    }
  }
}

TEST(Exhaustive, FrozenTableHeight4) {
  // Winners on [0,1], height 4; their norms follow from calculus on
  // x^j (1-x)^k and x(1-x)(2x-1).
  ExhaustiveOptions o;
  o.n_max = 6;
  o.height = 4;
  auto res = exhaustive_integer_chebyshev(Interval(0, 1), o);
  ASSERT_EQ(res.rows.size(), 6u);
  EXPECT_FALSE(res.truncated);
  EXPECT_EQ(res.rows[0].norm.upper, 1);
  EXPECT_EQ(res.rows[1].best, ip({0, -1, 1}));
  EXPECT_EQ(res.rows[2].best, ip({0, 1, -3, 2}));
  EXPECT_NEAR(res.rows[2].norm.enclosure().value_double(), std::sqrt(3.0) / 18, 4e-17);
  EXPECT_NEAR(res.rows[2].root_norm.value_double(), std::cbrt(std::sqrt(3.0) / 18), 1e-15);
  EXPECT_EQ(res.rows[3].best, ip({0, 0, 1, -2, 1}));
  EXPECT_EQ(res.rows[4].best, ip({0, 0, -1, 3, -3, 1}));
  EXPECT_EQ(res.rows[4].norm.upper, q(108, 3125));
  EXPECT_NEAR(res.rows[4].root_norm.value_double(), std::pow(108.0 / 3125, 0.2), 1e-15);
  EXPECT_EQ(res.rows[5].norm.upper, q(1, 64));
  for (const auto& row : res.rows) EXPECT_GT(row.root_norm.lower().to_double(MPFR_RNDD), 0.4213);
  // Best norms (not their n-th roots) never increase with n.
  for (std::size_t k = 1; k < res.rows.size(); ++k) EXPECT_LE(res.rows[k].norm.upper, res.rows[k - 1].norm.upper);
}

TEST(Exhaustive, LowerBoundHoldsAcrossHeights) {
  for (long h = 1; h <= 3; ++h) {
    ExhaustiveOptions o;
    o.n_max = 7;
    o.height = h;
    for (const auto& row : exhaustive_integer_chebyshev(Interval(0, 1), o).rows)
      EXPECT_GT(row.root_norm.lower().to_double(MPFR_RNDD), 0.4213) << "h=" << h << " n=" << row.n;
  }
}

TEST(Exhaustive, ThreadsDoNotChangeResult) {
  ExhaustiveOptions o;
  o.n_max = 5;
  o.height = 4;
  auto one = exhaustive_integer_chebyshev(Interval(-1, 1), o);
  o.threads = 3;
  auto three = exhaustive_integer_chebyshev(Interval(-1, 1), o);
  ASSERT_EQ(one.rows.size(), three.rows.size());
  for (std::size_t k = 0; k < one.rows.size(); ++k) {
    EXPECT_EQ(one.rows[k].best, three.rows[k].best);
    EXPECT_EQ(one.rows[k].norm.upper, three.rows[k].norm.upper);
  }
  EXPECT_EQ(to_json(one.report).dump(), to_json(three.report).dump());
}

TEST(Exhaustive, BudgetTruncates) {
  ExhaustiveOptions o;
  o.n_max = 6;
  o.height = 4;
  o.budget = 5000;
  auto res = exhaustive_integer_chebyshev(Interval(0, 1), o);
  EXPECT_TRUE(res.truncated);
  EXPECT_LT(res.completed_degree, 6);
  EXPECT_EQ(res.rows.size(), static_cast<std::size_t>(res.completed_degree));
  EXPECT_TRUE(res.report.params["truncated"].get<bool>());
}

TEST(Exhaustive, ReportCertificateReverifies) {
  ExhaustiveOptions o;
  o.n_max = 5;
  o.height = 3;
  auto res = exhaustive_integer_chebyshev(Interval(0, 1), o);
  std::size_t best = 0;
  for (std::size_t k = 0; k < res.rows.size(); ++k)
    if (res.rows[k].root_norm.upper() < res.rows[best].root_norm.upper()) best = k;
  const IntPoly& P = res.rows[best].best;
  EXPECT_EQ(res.report.certificate["polynomial"].get<std::string>(), to_string(P));
  Enclosure again = sup_norm(P, Interval(0, 1), 1e-30).root(static_cast<unsigned long>(res.rows[best].n));
  EXPECT_TRUE(again.upper() <= Real::add(res.report.value.upper(), Real(1e-9, 64), MPFR_RNDU));
}

TEST(Optimizer, SymmetricPair) {
  auto B = make_basis({ip({0, 1}), ip({1, -1})}, Interval(0, 1));
  auto r = factor_exponent_optimize(B, Interval(0, 1));
  EXPECT_NEAR(r.bound.value_double(), 0.5, 1e-9);
  EXPECT_GE(r.bound.upper().to_double(MPFR_RNDU), 0.5);  // bound can never beat the true optimum
  // F is quadratic at its minimum, so a bound within grid_eps pins the
  // weights only to about sqrt(grid_eps).
  EXPECT_NEAR(r.weights.s[0].get_d(), 0.5, 1e-4);
  EXPECT_NEAR(r.weights.s[1].get_d(), 0.5, 1e-4);
  EXPECT_TRUE(r.realization_within_lp_eps);
  auto hilbert = hilbert_upper_bound(Interval(0, 1));
  EXPECT_LE(r.bound.lower().to_double(MPFR_RNDD), hilbert.value.upper().to_double(MPFR_RNDU) + 1e-9);
}

TEST(Optimizer, WeightsNormalizedExactly) {
  auto B = default_basis_01();
  auto r = factor_exponent_optimize(B, Interval(0, 1));
  Rational total = 0;
  for (std::size_t i = 0; i < B.size(); ++i) {
    EXPECT_GE(r.weights.s[i], 0);
    total += r.weights.s[i] * B.factors[i].degree();
  }
  EXPECT_EQ(total, 1);
}

TEST(Optimizer, FourFactorBasis) {
  // Reference 0.431204 from an independent LP (HiGHS through scipy) on a
  // 4000-node Chebyshev grid; the grid value underestimates the maximum.
  auto B = make_basis({ip({0, 1}), ip({1, -1}), ip({-1, 2}), ip({1, -5, 5})}, Interval(0, 1));
  auto r = factor_exponent_optimize(B, Interval(0, 1));
  EXPECT_GT(r.bound.lower().to_double(MPFR_RNDD), 0.4213);
  EXPECT_LT(r.bound.upper().to_double(MPFR_RNDU), 0.5);
  EXPECT_NEAR(r.bound.value_double(), 0.4312043513664111, 1e-7);
  EXPECT_TRUE(r.realization_within_lp_eps);
}

TEST(Optimizer, DefaultBasisRegression) {
  // Frozen at first build; independent LP estimate 0.4259529096.
  constexpr double kFrozen = 0.42595298969293632;
  auto r = factor_exponent_optimize(default_basis_01(), Interval(0, 1));
  EXPECT_NEAR(r.bound.value_double(), kFrozen, 1e-12);
  EXPECT_NEAR(r.bound.value_double(), 0.4259529096059072, 1e-7);
  EXPECT_GT(r.bound.lower().to_double(MPFR_RNDD), 0.4213);
  EXPECT_TRUE(r.realization_within_lp_eps);
  EXPECT_LE(r.realized_bound.upper().to_double(MPFR_RNDU), r.bound.upper().to_double(MPFR_RNDU) + 1e-9);
  // Richer basis strictly improves on {x, 1-x}.
  EXPECT_LT(r.bound.upper().to_double(MPFR_RNDU), 0.5 - 0.07);
}

TEST(Optimizer, RealizationMatchesDirectProductNorm) {
  // Two routes to ||prod Q_i^{e_i}||^{1/D}: the potential maximum and the
  // sup-norm of the expanded product.
  std::vector<IntPoly> Q{ip({0, 1}), ip({1, -1}), ip({-1, 2}), ip({1, -5, 5})};
  std::vector<long> e{3, 3, 1, 1};
  IntPoly prod = ip({1});
  long D = 0;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    prod *= pow(Q[i], static_cast<unsigned>(e[i]));
    D += e[i] * Q[i].degree();
  }
  for (long v : e) w.push_back(q(v, D));
  Enclosure via_potential = log_potential_max(Q, w, Interval(0, 1)).value;
  Enclosure direct = sup_norm(prod, Interval(0, 1), 1e-30).root(static_cast<unsigned long>(D));
  EXPECT_NEAR(std::exp(via_potential.value_double()), direct.value_double(), 1e-14);
}

TEST(Optimizer, Deterministic) {
  auto B = make_basis({ip({0, 1}), ip({1, -1}), ip({-1, 2}), ip({1, -5, 5})}, Interval(0, 1));
  auto a = factor_exponent_optimize(B, Interval(0, 1));
  auto b = factor_exponent_optimize(B, Interval(0, 1));
  EXPECT_EQ(to_json(a.report).dump(), to_json(b.report).dump());
}

TEST(Optimizer, RejectsDegenerateInput) {
  FactorBasis constant;
  constant.factors = {ip({1})};
  constant.roots_in_interval = {false};
  EXPECT_THROW(factor_exponent_optimize(constant, Interval(0, 1)), PreconditionError);
  EXPECT_THROW(factor_exponent_optimize(FactorBasis{}, Interval(0, 1)), PreconditionError);
}
