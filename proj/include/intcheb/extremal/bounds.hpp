#pragma once

#include <json.hpp>

#include <string>

#include "intcheb/core/resultant.hpp"
#include "intcheb/core/sturm.hpp"
#include "intcheb/numeric/sup_norm.hpp"

namespace intcheb {

/// A named bound with the data that certifies it.
struct BoundReport {
  std::string kind;  // upper_tZ | lower_L | hilbert | trigub
  Enclosure value;
  nlohmann::ordered_json certificate = nlohmann::ordered_json::object();
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

namespace detail {

/// Exact sqrt of a nonnegative rational when it is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

/// Enclosure of sqrt(q), exact when q is a rational square.
inline Enclosure sqrt_enclosure(const Rational& q) {
  if (auto r = exact_sqrt(q)) return Enclosure::exact(*r);
  return Enclosure::exact(q).sqrt();
}

}  // namespace detail

/// Upper bound min(1, sqrt((b-a)/4)) for the integer Chebyshev constant.
inline BoundReport hilbert_upper_bound(const Interval& I) {
  BoundReport r;
  r.kind = "hilbert";
  Rational quarter = I.length() / 4;
  bool capped = I.length() >= 4;
  r.value = capped ? Enclosure::exact(Rational(1)) : detail::sqrt_enclosure(quarter);
  r.certificate = {{"capped_at_one", capped}, {"length", to_string(I.length())}};
  r.params = {{"interval", I.str()}};
  return r;
}

/// Interval I_m = [1/(m+4), 1/m]: lower bound 1/(m+2) against the Hilbert
/// upper bound sqrt(|I_m|/4), and their ratio sqrt(1 - 4/(m+2)^2).
struct TrigubReport {
  long m;
  Interval interval;
  Rational lower;
  Enclosure upper;
  Enclosure ratio;
  BoundReport report;
};

inline TrigubReport trigub_interval_report(long m) {
  if (m < 1) throw PreconditionError("invalid_parameter", "trigub report requires m >= 1");
  Interval I(Rational(1, m + 4), Rational(1, m));
  Rational lower(1, m + 2);
  lower.canonicalize();
  Enclosure upper = detail::sqrt_enclosure(I.length() / 4);
  Rational t = Rational(4, (m + 2) * (m + 2));
  t.canonicalize();
  Enclosure ratio = detail::sqrt_enclosure(1 - t);
  BoundReport rep;
  rep.kind = "trigub";
  rep.value = ratio;
  rep.certificate = {{"lower", to_string(lower)},
                     {"upper", {{"value", upper.value_str()}, {"lower", upper.lower_str()}, {"upper", upper.upper_str()}}}};
  rep.params = {{"m", m}, {"interval", I.str()}};
  return {m, I, lower, upper, ratio, rep};
}

/// ||R||_I^{-1/deg R}: a lower bound for liminf |a_n|^{1/n} over integer
/// polynomials with simple zeros in I that share no zero with R. Also
/// reports the generic value 2/sqrt(b-a).
struct LeadingCoeffBound {
  Enclosure norm;
  Enclosure bound;
  Enclosure generic;
  bool vacuous = false;  // ||R||_I >= 1 (or R constant): bound <= 1
  BoundReport report;
};

inline LeadingCoeffBound leading_coeff_lower_bound(const IntPoly& R, const Interval& I, double eps = 1e-15) {
  if (R.is_zero()) throw PreconditionError("zero_polynomial", "R must be nonzero");
  LeadingCoeffBound out;
  auto sn = sup_norm_detail(R, I, eps);
  out.norm = sn.enclosure();
  out.generic = mul_nonneg(Enclosure::exact(Rational(2)), Enclosure::exact(1 / I.length()).sqrt());
  if (auto e = detail::exact_sqrt(I.length())) out.generic = Enclosure::exact(Rational(2) / *e);
  const int d = R.degree();
  out.vacuous = d < 1 || sn.lower >= 1;
  if (out.vacuous) {
    out.bound = Enclosure::exact(Rational(1));
  } else {
    // x^{-1/d} is decreasing: [upper^{-1/d}, lower^{-1/d}].
    Enclosure inv_hi = Enclosure::exact(1 / sn.lower).root(static_cast<unsigned long>(d));
    Enclosure inv_lo = Enclosure::exact(1 / sn.upper).root(static_cast<unsigned long>(d));
    out.bound = Enclosure(inv_lo.lower(), inv_hi.upper());
  }
  out.report.kind = "lower_L";
  out.report.value = out.bound;
  out.report.certificate = {
      {"polynomial", to_string(R)},
      {"norm", {{"value", out.norm.value_str()}, {"lower", to_string(sn.lower)}, {"upper", to_string(sn.upper)}}},
      {"argmax", to_string(sn.argmax)},
      {"vacuous", out.vacuous},
      {"generic", {{"value", out.generic.value_str()}, {"lower", out.generic.lower_str()}, {"upper", out.generic.upper_str()}}}};
  out.report.params = {{"interval", I.str()}, {"eps", eps}};
  return out;
}

/// Finite-degree form of the resultant inequality for P with all zeros in I
/// and R coprime to P: |a_n|^m ||R||_I^n >= |Res(P, R)| >= 1.
struct ResultantInequality {
  Integer res;
  Enclosure lhs;  // |a_n|^m ||R||_I^n
  bool roots_in_interval = false;
  bool holds = false;       // lhs.upper >= |res| and |res| >= 1
  bool certified = false;   // lhs.lower >= |res| >= 1 (no enclosure ambiguity)
};

inline ResultantInequality resultant_inequality(const IntPoly& P, const IntPoly& R, const Interval& I,
                                                double eps = 1e-20) {
  if (P.degree() < 1 || R.is_zero()) throw PreconditionError("invalid_parameter", "P nonconstant and R nonzero required");
  ResultantInequality out;
  int distinct = 0;
  for (const auto& [f, mult] : squarefree_decomposition(P)) distinct += count_real_roots(f, I.a(), I.b()) * mult;
  out.roots_in_interval = distinct == P.degree();
  out.res = resultant(P, R);
  auto sn = sup_norm_detail(R, I, eps);
  const unsigned long n = static_cast<unsigned long>(P.degree());
  const unsigned long m = static_cast<unsigned long>(std::max(R.degree(), 0));
  Rational lead_m = Rational(pow(abs(P.leading()), m));
  out.lhs = Enclosure::between(lead_m * pow(sn.lower, n), lead_m * pow(sn.upper, n));
  Real ares(abs(out.res), kEnclosureBits);
  bool res_ok = abs(out.res) >= 1;
  out.holds = res_ok && out.lhs.upper() >= ares;
  out.certified = res_ok && out.lhs.lower() >= ares;
  return out;
}

inline nlohmann::ordered_json enclosure_json(const Enclosure& e) {
  return {{"value", e.value_str()}, {"lower", e.lower_str()}, {"upper", e.upper_str()}};
}

inline nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = r.kind;
  j["value"] = r.value.value_double();
  j["enclosure"] = enclosure_json(r.value);
  j["certificate"] = r.certificate;
  j["params"] = r.params;
  return j;
}

}  // namespace intcheb
