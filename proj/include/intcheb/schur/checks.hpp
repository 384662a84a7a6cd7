#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "intcheb/core/sturm.hpp"
#include "intcheb/core/symmetric.hpp"
#include "intcheb/numeric/mahler.hpp"
#include "intcheb/numeric/roots.hpp"
#include "intcheb/schur/family.hpp"

namespace intcheb {

enum class Verdict { holds, violation, informational, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violation: return "violation";
    case Verdict::informational: return "informational";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// One inequality instance. margin > 0 means the inequality holds; its
/// enclosure carries the propagated error of both sides.
struct CheckRow {
  long n = 0;
  std::string quantity;
  Enclosure lhs, rhs, margin;
  Verdict verdict = Verdict::informational;
};

struct CheckResult {
  std::string id;
  std::vector<CheckRow> rows;
  std::vector<std::string> notes;

  /// all-hold | violation | inconclusive | informational
  std::string verdict() const {
    bool any_checked = false, undecided = false;
    for (const auto& r : rows) {
      if (r.verdict == Verdict::violation) return "violation";
      if (r.verdict == Verdict::inconclusive) undecided = true;
      if (r.verdict != Verdict::informational) any_checked = true;
    }
    if (undecided) return "inconclusive";
    return any_checked ? "all-hold" : "informational";
  }
  std::optional<std::size_t> first_violation() const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].verdict == Verdict::violation) return i;
    return std::nullopt;
  }
  void append(const CheckResult& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
};

namespace detail {

enum class Gate { checked, informational, inconclusive };

inline Verdict decide(const Enclosure& margin, Gate gate) {
  if (gate == Gate::informational) return Verdict::informational;
  if (margin.upper().sign() < 0) return gate == Gate::inconclusive ? Verdict::inconclusive : Verdict::violation;
  if (margin.lower().sign() >= 0) return gate == Gate::inconclusive ? Verdict::inconclusive : Verdict::holds;
  return Verdict::inconclusive;
}

/// lhs <= rhs
inline CheckRow leq_row(long n, std::string quantity, const Enclosure& lhs, const Enclosure& rhs, Gate gate) {
  Enclosure margin = rhs - lhs;
  return {n, std::move(quantity), lhs, rhs, margin, decide(margin, gate)};
}

/// lhs >= rhs
inline CheckRow geq_row(long n, std::string quantity, const Enclosure& lhs, const Enclosure& rhs, Gate gate) {
  Enclosure margin = lhs - rhs;
  return {n, std::move(quantity), lhs, rhs, margin, decide(margin, gate)};
}

/// sqrt(n log n), outward rounded.
inline Enclosure sqrt_n_log_n(long n) {
  const mpfr_prec_t p = kEnclosureBits;
  Real nd(Rational(n), p, MPFR_RNDD);
  Real lo = Real::mul(nd, log(nd, MPFR_RNDD), MPFR_RNDD);
  Real hi = Real::mul(nd, log(nd, MPFR_RNDU), MPFR_RNDU);
  return Enclosure(sqrt(lo, MPFR_RNDD), sqrt(hi, MPFR_RNDU));
}

inline Enclosure scale(const Enclosure& e, const Rational& k) {  // k >= 0
  return mul_nonneg(Enclosure::exact(k), e);
}

/// Where the roots of P sit relative to the closed unit disk.
struct DiskClassification {
  int inside = 0, outside = 0, undecided = 0;
  std::string first_outside;
};

inline DiskClassification classify_unit_disk(const RootSet& rs) {
  DiskClassification c;
  const Real one(1.0, 64);
  for (const auto& r : rs.roots) {
    Enclosure m = r.modulus();
    if (m.upper() <= one) {
      ++c.inside;
    } else if (m.lower() > one) {
      if (c.outside++ == 0) {
        auto z = r.approx();
        c.first_outside = "root near " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
                          std::to_string(z.imag()) + "i, |root| >= " + m.lower_str(10);
      }
    } else {
      ++c.undecided;
    }
  }
  return c;
}

inline void require_squarefree(const IntPoly& P) {
  if (P.degree() < 1) throw PreconditionError("constant_polynomial", "degree >= 1 required");
  if (!is_squarefree(P)) throw PreconditionError("not_squarefree", "polynomial has a repeated root");
}

/// Monic with every root real and positive, decided exactly by Sturm counts.
inline void require_totally_positive(const IntPoly& P) {
  if (P.leading() != 1) throw PreconditionError("not_monic", "family member must be monic: " + to_string(P));
  if (P.coeff(0) == 0) throw PreconditionError("nonpositive_root", "0 is a root of " + to_string(P));
  if (count_real_roots(P, Rational(0), cauchy_root_bound(P)) != P.degree())
    throw PreconditionError("nonpositive_root", "not every root is real and positive: " + to_string(P));
}

/// |a|^{e}, outward rounded, for a nonzero integer a and rational e >= 0.
inline Enclosure abs_pow(const Integer& a, const Rational& e) {
  if (e == 0 || abs(a) == 1) return Enclosure::exact(Rational(1));
  Real lo = Real::mul(Real(e, kEnclosureBits, MPFR_RNDD), log_abs(a, MPFR_RNDD), MPFR_RNDD);
  Real hi = Real::mul(Real(e, kEnclosureBits, MPFR_RNDU), log_abs(a, MPFR_RNDU), MPFR_RNDU);
  return Enclosure(exp(lo, MPFR_RNDD), exp(hi, MPFR_RNDU));
}

}  // namespace detail

/// Growth checks for P in Z_n^s(D, M): |a_{n-1}| <= 8M sqrt(n log n),
/// |s_m| <= (24m+16) sqrt(n log n) for m <= m_max, and the inductive step
/// |sigma_m| <= (1/m) sum_j |s_j| |sigma_{m-j}| that underlies the bound
/// |sigma_m| = O((n log n)^{m/2}). Below n = max(M, 55) the bounds are
/// reported as informational.
inline CheckResult schur_growth_check(const IntPoly& P, long M, int m_max, double eps = 1e-30) {
  if (M < 1 || m_max < 1) throw PreconditionError("invalid_parameter", "M and m_max must be >= 1");
  detail::require_squarefree(P);
  const int n = P.degree();
  if (abs(P.leading()) > M)
    throw PreconditionError("leading_coefficient_exceeds_M", "|leading coefficient| exceeds M = " + std::to_string(M));
  auto disk = detail::classify_unit_disk(find_roots(P, eps));
  if (disk.outside > 0) throw PreconditionError("root_outside_disk", disk.first_outside);

  CheckResult res;
  res.id = "schur_growth";
  const bool hyp = n >= std::max<long>(M, 55);
  auto gate = disk.undecided > 0 ? detail::Gate::inconclusive : detail::Gate::checked;
  auto bound_gate = hyp ? gate : detail::Gate::informational;
  if (!hyp) res.notes.push_back("hypothesis not met: n = " + std::to_string(n) + " < max(M, 55)");
  if (disk.undecided > 0)
    res.notes.push_back(std::to_string(disk.undecided) + " root enclosure(s) straddle |z| = 1");

  const Enclosure snl = detail::sqrt_n_log_n(n);
  res.rows.push_back(detail::leq_row(n, "|a_{n-1}| <= 8M sqrt(n log n)", Enclosure::exact(abs(Rational(P.coeff(static_cast<std::size_t>(n - 1))))),
                                     detail::scale(snl, Rational(8 * M)), bound_gate));

  auto s = power_sums(P, m_max);
  for (int m = 1; m <= m_max; ++m)
    res.rows.push_back(detail::leq_row(n, "|s_" + std::to_string(m) + "| <= (24m+16) sqrt(n log n)",
                                       Enclosure::exact(abs(s[static_cast<std::size_t>(m - 1)])),
                                       detail::scale(snl, Rational(24 * m + 16)), bound_gate));

  const int top = std::min(m_max, n);
  auto sigma = elementary_from_poly(P, top);
  auto sig = [&](int k) { return k == 0 ? Rational(1) : sigma[static_cast<std::size_t>(k - 1)]; };
  for (int m = 1; m <= top; ++m) {
    Rational rhs = 0;
    for (int j = 1; j <= m; ++j) rhs += abs(s[static_cast<std::size_t>(j - 1)]) * abs(sig(m - j));
    rhs /= m;
    res.rows.push_back(detail::leq_row(n, "|sigma_" + std::to_string(m) + "| <= (1/m) sum_j |s_j||sigma_{m-j}|",
                                       Enclosure::exact(abs(sig(m))), Enclosure::exact(rhs), gate));
  }

  // Mean of the zeros against 1 - sqrt(e)/2 < 0.1757 (asymptotic; gated like the bounds).
  Rational mean = sig(1) / n;
  res.rows.push_back(detail::leq_row(n, "|A_n| <= 0.1757", Enclosure::exact(abs(mean)),
                                     Enclosure::exact(Rational(1757, 10000)), bound_gate));
  return res;
}

namespace detail {

/// The truncated test function: Re(z^m) on |z| <= 1, Re(z^m)(m+1-m|z|) on
/// 1 <= |z| <= 1+1/m, 0 outside.
inline double test_function(std::complex<double> z, int m) {
  double r = std::abs(z);
  double R = 1.0 + 1.0 / m;
  if (r >= R) return 0.0;
  double re = std::pow(r, m) * std::cos(m * std::arg(z));
  return r <= 1 ? re : re * (m + 1 - m * r);
}

/// Same function at a multiprecision point, rounded to nearest.
inline Real test_function(const Complex& z, int m) {
  const mpfr_prec_t p = std::max<mpfr_prec_t>(kEnclosureBits, z.precision());
  Complex w = z.with_precision(p);
  Real r = w.modulus(MPFR_RNDN);
  Rational R = Rational(m + 1, m);
  Real Rr(R, p, MPFR_RNDN);
  if (r >= Rr) return Real(0.0, p);
  Complex acc(Real(1.0, p), Real(0.0, p));
  for (int k = 0; k < m; ++k) acc = acc * w;
  if (r <= Real(1.0, p)) return acc.re;
  Real taper = Real::sub(Real(Rational(m + 1), p, MPFR_RNDN), Real::mul(Real(Rational(m), p, MPFR_RNDN), r, MPFR_RNDN), MPFR_RNDN);
  return Real::mul(acc.re, taper, MPFR_RNDN);
}

/// Largest sampled difference quotient of the test function, over a polar
/// grid covering its support.
inline double sampled_lipschitz(int m, int radial = 240, int angular = 480) {
  const double R = 1.0 + 1.0 / m, h = 1e-7;
  double best = 0;
  for (int i = 0; i <= radial; ++i) {
    double r = 1.15 * R * i / radial;
    for (int j = 0; j < angular; ++j) {
      std::complex<double> z = std::polar(r, 2 * M_PI * (j + 0.5) / angular);
      double f = test_function(z, m);
      for (std::complex<double> d : {std::complex<double>(h, 0), std::complex<double>(0, h)})
        best = std::max(best, std::abs(test_function(z + d, m) - f) / h);
    }
  }
  return best;
}

}  // namespace detail

/// |(1/n) sum_k phi(alpha_k) - int phi dmu_D| against
/// A(2R+1) sqrt(log max(n, M(P)) / n) with A = 8m, R = 1 + 1/m (int phi dmu_D = 0).
/// With every zero certified in the closed disk the left side is |s_m|/n,
/// exact. Otherwise phi is evaluated at the disc centers and each disc adds
/// 8m times its radius.
inline CheckResult lipschitz_mean_bound_check(const IntPoly& P, int m, double eps = 1e-30) {
  if (m < 1) throw PreconditionError("invalid_parameter", "m must be >= 1");
  detail::require_squarefree(P);
  const int n = P.degree();
  CheckResult res;
  res.id = "lipschitz_mean";
  const bool hyp = n >= 55;
  if (!hyp) res.notes.push_back("hypothesis not met: n = " + std::to_string(n) + " < 55");
  const auto gate = hyp ? detail::Gate::checked : detail::Gate::informational;

  RootSet rs = find_roots(P, eps);
  auto disk = detail::classify_unit_disk(rs);
  Enclosure lhs;
  if (disk.outside == 0 && disk.undecided == 0) {
    auto s = power_sums(P, m);
    lhs = Enclosure::exact(abs(s.back()) / n);
    res.notes.push_back("all zeros in the closed unit disk: phi-sum = s_m/n exactly");
  } else {
    const mpfr_prec_t p = kEnclosureBits;
    Real sum(0.0, p), err(0.0, p);
    const Real slack(std::ldexp(1.0, -200), p);
    for (const auto& r : rs.roots) {
      sum = Real::add(sum, detail::test_function(r.center, m), MPFR_RNDN);
      Real e = Real::mul(Real(Rational(8 * m), p, MPFR_RNDU), r.radius.with_precision(p, MPFR_RNDU), MPFR_RNDU);
      err = Real::add(err, Real::add(e, slack, MPFR_RNDU), MPFR_RNDU);
    }
    Real nd(Rational(n), p, MPFR_RNDN);
    Real lo = Real::div(Real::sub(abs(sum), err, MPFR_RNDD), nd, MPFR_RNDD);
    Real hi = Real::div(Real::add(abs(sum), err, MPFR_RNDU), nd, MPFR_RNDU);
    if (lo.sign() < 0) lo = Real(0.0, p);
    lhs = Enclosure(lo, hi);
  }

  // max(n, M(P)) and the right-hand side, outward rounded.
  Enclosure mahler = mahler_measure(P, 1e-20);
  const mpfr_prec_t p = kEnclosureBits;
  Real nd(Rational(n), p, MPFR_RNDN);
  Real big_lo = max(nd, mahler.lower()), big_hi = max(nd, mahler.upper());
  Real q_lo = Real::div(log(big_lo, MPFR_RNDD), nd, MPFR_RNDD);
  Real q_hi = Real::div(log(big_hi, MPFR_RNDU), nd, MPFR_RNDU);
  Enclosure rhs = detail::scale(Enclosure(sqrt(q_lo, MPFR_RNDD), sqrt(q_hi, MPFR_RNDU)), Rational(24 * m + 16));
  res.rows.push_back(detail::leq_row(n, "|(1/n) sum phi(alpha)| <= 8m(2R+1) sqrt(log max(n,M)/n), m=" + std::to_string(m),
                                     lhs, rhs, gate));

  // Sampled Lipschitz constant of phi (a lower estimate) against the 8m used above.
  double L = detail::sampled_lipschitz(m);
  CheckRow lip = detail::leq_row(n, "sampled Lipschitz constant of phi <= 8m, m=" + std::to_string(m),
                                 Enclosure::exact(Rational(L)), Enclosure::exact(Rational(8 * m)), detail::Gate::checked);
  res.rows.push_back(lip);
  return res;
}

/// Values of one quantity along a family, ordered by n.
struct TrendSeries {
  int m = 0;
  std::vector<std::pair<long, Rational>> values;  // (n, sigma_m / C(n,m))
  bool increasing = true;
  std::optional<Rational> limit;  // c^m when predicted by the equilibrium measure
  double final_gap = 0;           // (limit - last) / limit
};

struct TraceTable {
  CheckResult check;
  std::vector<TrendSeries> trends;
};

/// For monic totally positive members: A_n, sigma_m / C(n,m) >= |a_0|^{m/n}
/// >= 1 exactly, and (informational) A_n against sqrt(e) and the chebyshev04
/// prediction sigma_m / C(n,m) -> 2^m.
inline TraceTable trace_mean_table(const FamilySpec& F, int m_max, unsigned threads = 1) {
  if (m_max < 1) throw PreconditionError("invalid_parameter", "m_max must be >= 1");
  auto members = generate_family(F);
  const bool cheb = F.kind == FamilyKind::chebyshev04;
  struct MemberOut {
    CheckResult rows;
    std::vector<Rational> ratios;
  };
  auto per_member = [&](const FamilyMember& mem) {
    const IntPoly& P = mem.poly;
    detail::require_totally_positive(P);
    const int n = P.degree();
    MemberOut out;
    const int top = std::min(m_max, n);
    auto sigma = elementary_from_poly(P, top);
    Rational mean = sigma[0] / n;
    Enclosure sqrt_e = Enclosure(exp(Real(0.5, kEnclosureBits), MPFR_RNDD), exp(Real(0.5, kEnclosureBits), MPFR_RNDU));
    out.rows.rows.push_back(detail::geq_row(n, "A_n >= sqrt(e)", Enclosure::exact(mean), sqrt_e, detail::Gate::informational));
    for (int m = 1; m <= top; ++m) {
      Rational ratio = sigma[static_cast<std::size_t>(m - 1)] / Rational(binomial(n, m));
      out.ratios.push_back(ratio);
      const std::string tag = std::to_string(m);
      Enclosure a0 = detail::abs_pow(P.coeff(0), Rational(m, n));
      out.rows.rows.push_back(detail::geq_row(n, "sigma_" + tag + "/C(n," + tag + ") >= |a_0|^(" + tag + "/n)",
                                              Enclosure::exact(ratio), a0, detail::Gate::checked));
      out.rows.rows.push_back(detail::geq_row(n, "|a_0|^(" + tag + "/n) >= 1", a0, Enclosure::exact(Rational(1)),
                                              detail::Gate::checked));
      if (cheb)
        out.rows.rows.push_back(detail::leq_row(n, "sigma_" + tag + "/C(n," + tag + ") vs 2^" + tag,
                                                Enclosure::exact(ratio), Enclosure::exact(Rational(Integer(1) << m)),
                                                detail::Gate::informational));
    }
    return out;
  };
  auto outs = parallel_map(members, threads, per_member);

  TraceTable t;
  t.check.id = "trace_mean";
  for (const auto& o : outs) t.check.append(o.rows);
  for (int m = 1; m <= m_max; ++m) {
    TrendSeries s;
    s.m = m;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (static_cast<int>(outs[i].ratios.size()) >= m)
        s.values.emplace_back(members[i].degree(), outs[i].ratios[static_cast<std::size_t>(m - 1)]);
    for (std::size_t i = 1; i < s.values.size(); ++i)
      if (!(s.values[i].first > s.values[i - 1].first && s.values[i].second > s.values[i - 1].second)) s.increasing = false;
    if (cheb) {
      s.limit = Rational(Integer(1) << m);
      if (!s.values.empty()) s.final_gap = Rational((*s.limit - s.values.back().second) / *s.limit).get_d();
    }
    if (!s.values.empty()) t.trends.push_back(std::move(s));
  }
  return t;
}

/// Pairs M(P)^{1/n} for [c-2, c+2] with the zero mean A_n, member by member.
/// Nothing is asserted: both rows are informational.
inline CheckResult generalized_mahler_hypothesis_report(const FamilySpec& F, const Rational& c, unsigned threads = 1,
                                                        double eps = 1e-15) {
  if (c < 2) throw PreconditionError("invalid_parameter", "c must be >= 2");
  auto members = generate_family(F);
  auto per_member = [&](const FamilyMember& mem) {
    detail::require_totally_positive(mem.poly);
    const int n = mem.poly.degree();
    auto gm = generalized_mahler_detail(mem.poly, c, eps);
    CheckResult out;
    Enclosure root = gm.value.root(static_cast<unsigned long>(n));
    out.rows.push_back(detail::leq_row(n, "M(P)^(1/n) vs 1", root, Enclosure::exact(Rational(1)), detail::Gate::informational));
    Rational mean = elementary_from_poly(mem.poly, 1)[0] / n;
    out.rows.push_back(detail::geq_row(n, "A_n vs c", Enclosure::exact(mean), Enclosure::exact(c), detail::Gate::informational));
    if (gm.ambiguous > 0)
      out.notes.push_back("n=" + std::to_string(n) + ": " + std::to_string(gm.ambiguous) +
                          " root(s) touch the segment; factor enclosed in [1, upper]");
    if (gm.boundary > 0)
      out.notes.push_back("n=" + std::to_string(n) + ": " + std::to_string(gm.boundary) + " root(s) at a segment endpoint");
    return out;
  };
  CheckResult res;
  res.id = "generalized_mahler_hypothesis";
  for (const auto& o : parallel_map(members, threads, per_member)) res.append(o);
  return res;
}

}  // namespace intcheb
