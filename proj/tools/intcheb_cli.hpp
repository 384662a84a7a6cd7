#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "intcheb/core/chebyshev.hpp"
#include "intcheb/core/cyclotomic.hpp"
#include "intcheb/core/irreducible.hpp"
#include "intcheb/core/resultant.hpp"
#include "intcheb/core/symmetric.hpp"
#include "intcheb/extremal/basis.hpp"
#include "intcheb/io/report.hpp"
#include "intcheb/numeric/equilibrium.hpp"
#include "intcheb/numeric/mahler.hpp"
#include "intcheb/numeric/sup_norm.hpp"
#include "intcheb/numeric/zero_stats.hpp"
#include "intcheb/schur/checks.hpp"

namespace intcheb::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit statuses: 0 success, 2 precondition or usage error, 3 budget or
/// precision exhausted, 1 internal failure.
enum Exit { kOk = 0, kInternal = 1, kPrecondition = 2, kExhausted = 3 };

/// Raised when a computation completed but produced a partial result that
/// must exit with status 3 (the document is still printed).
struct PartialResult {
  Json doc;
};

/// Resolved parameters for one invocation: command line, then --config, then
/// the handler's default. Every value a handler reads is recorded, in read
/// order, for the manifest. `threads` is read but never recorded: output does
/// not depend on it.
class Params {
 public:
  Params(std::map<std::string, std::string> cli, Json config) : cli_(std::move(cli)), config_(std::move(config)) {}

  std::optional<std::string> raw(const std::string& name) const {
    if (auto it = cli_.find(name); it != cli_.end()) return it->second;
    for (const std::string& key : {name, underscored(name)}) {
      if (config_.contains(key)) {
        const Json& v = config_[key];
        if (v.is_null()) continue;
        return v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    return std::nullopt;
  }
  bool has(const std::string& name) const { return raw(name).has_value(); }

  std::string str(const std::string& name, std::optional<std::string> fallback = std::nullopt) {
    auto v = raw(name);
    if (!v) v = fallback;
    if (!v) throw PreconditionError("missing_argument", "--" + name + " is required");
    record(name, *v);
    return *v;
  }

  long integer(const std::string& name, std::optional<long> fallback = std::nullopt, long lo = LONG_MIN,
               long hi = LONG_MAX) {
    auto v = raw(name);
    long x = 0;
    if (v) {
      std::size_t used = 0;
      try {
        x = std::stol(*v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v->size())
        throw PreconditionError("invalid_parameter", "--" + name + " expects an integer, got '" + *v + "'");
    } else if (fallback) {
      x = *fallback;
    } else {
      throw PreconditionError("missing_argument", "--" + name + " is required");
    }
    if (x < lo || x > hi)
      throw PreconditionError("invalid_parameter", "--" + name + " out of range [" + std::to_string(lo) + ", " +
                                                       std::to_string(hi) + "]");
    if (name != "threads") params_[name] = x;
    return x;
  }

  /// Positive finite real.
  double positive(const std::string& name, double fallback) {
    auto v = raw(name);
    double x = fallback;
    if (v) {
      std::size_t used = 0;
      try {
        x = std::stod(*v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v->size())
        throw PreconditionError("invalid_parameter", "--" + name + " expects a number, got '" + *v + "'");
    }
    if (!(std::isfinite(x) && x > 0)) throw PreconditionError("invalid_parameter", "--" + name + " must be positive");
    params_[name] = x;
    return x;
  }

  Rational rational(const std::string& name, std::optional<std::string> fallback = std::nullopt) {
    return parse_rational(str(name, std::move(fallback)));
  }

  Interval interval(const std::string& name = "interval", std::optional<std::string> fallback = std::nullopt) {
    Interval I = Interval::parse(str(name, std::move(fallback)));
    params_[name] = I.str();
    return I;
  }

  Json json(const std::string& name) {
    auto text = str(name);
    if (!text.empty() && text[0] == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw PreconditionError("file_not_found", "cannot read " + text.substr(1));
      std::stringstream ss;
      ss << in.rdbuf();
      return parse_json_text(ss.str(), "--" + name);
    }
    return parse_json_text(text, "--" + name);
  }

  RatPoly rat_poly(const std::string& name = "coeffs") {
    RatPoly p = rat_poly_from_json(json(name));
    params_[name] = poly_to_json(p);
    return p;
  }

  IntPoly int_poly(const std::string& name = "coeffs") {
    IntPoly p = int_poly_from_json(json(name));
    params_[name] = poly_to_json(p);
    return p;
  }

  std::vector<Rational> rationals(const std::string& name) {
    Json j = json(name);
    if (!j.is_array()) throw PreconditionError("malformed_json", "--" + name + " must be a JSON array");
    std::vector<Rational> out;
    Json canon = Json::array();
    for (const auto& v : j) {
      out.push_back(coefficient_from_json(v));
      canon.push_back(to_string(out.back()));
    }
    params_[name] = canon;
    return out;
  }

  const Json& recorded() const { return params_; }

 private:
  static std::string underscored(std::string s) {
    for (auto& c : s)
      if (c == '-') c = '_';
    return s;
  }
  void record(const std::string& name, const std::string& v) {
    if (name != "threads") params_[name] = v;
  }

  std::map<std::string, std::string> cli_;
  Json config_;
  Json params_ = Json::object();
};

using Handler = std::function<Json(Params&)>;

struct Command {
  std::string group;   // empty for top-level commands
  std::string name;
  std::string help;
  std::vector<std::string> options;
  Handler handler;
  std::string full() const { return group.empty() ? name : group + " " + name; }
};

namespace detail {

inline const std::map<std::string, std::string>& option_help() {
  static const std::map<std::string, std::string> h = {
      {"coeffs", "polynomial as a JSON array of coefficients, low-to-high (\"@file\" reads a file)"},
      {"other", "second polynomial, same format as --coeffs"},
      {"interval", "segment a,b with rational endpoints (e.g. 1/3,1/2)"},
      {"at", "evaluation point (rational)"},
      {"order", "highest order m of the symmetric functions"},
      {"sigma", "elementary symmetric functions sigma_1..sigma_m as a JSON array"},
      {"powersums", "power sums s_1..s_m as a JSON array"},
      {"degree", "degree n (number of roots)"},
      {"square", "substitute x^2 for the variable"},
      {"from", "source interval of an affine change of variable"},
      {"to", "target interval of an affine change of variable"},
      {"n", "degree"},
      {"nmax", "largest degree"},
      {"height", "coefficient bound"},
      {"budget", "candidate polynomial budget"},
      {"threads", "worker threads (output does not depend on it)"},
      {"basis", "factor basis file: JSON list of polynomials"},
      {"grid-eps", "stop the exchange when the certified and grid maxima differ by at most this"},
      {"lp-eps", "tolerance for the integer realization of the weights"},
      {"grid-nodes", "initial Chebyshev grid size"},
      {"realization-degree", "starting total degree of the integer realization"},
      {"m", "order m"},
      {"mmax", "largest order m"},
      {"M", "bound on the leading coefficient"},
      {"c", "center c of the segment [c-2, c+2]"},
      {"family", "chebyshev04 | chebyshev04_trace | prime_cyclotomic | user_list"},
      {"params", "family parameters, e.g. 25,50,100 or 1..12"},
      {"eps", "target enclosure width"},
      {"max-bits", "precision cap in bits for root certificates"},
      {"config", "JSON file with parameter values (flat object or a manifest)"},
      {"timestamp", "timestamp recorded in the manifest"},
      {"csv", "emit CSV instead of JSON"},
  };
  return h;
}

inline bool is_flag(const std::string& name) { return name == "csv" || name == "square"; }

inline Json enc(const Enclosure& e) { return enclosure_json(e); }

inline std::vector<IntPoly> poly_list(const Json& j) {
  if (!j.is_array()) throw PreconditionError("malformed_polynomial", "expected a JSON list of polynomials");
  std::vector<IntPoly> out;
  for (const auto& p : j) out.push_back(int_poly_from_json(p));
  return out;
}

inline FamilySpec family_spec(Params& p) {
  FamilySpec F;
  F.kind = parse_family_kind(p.str("family", "chebyshev04"));
  if (F.kind == FamilyKind::user_list) {
    F.user = poly_list(p.json("coeffs"));
  } else {
    F.params = parse_param_list(p.str("params"));
  }
  return F;
}

inline unsigned threads(Params& p) { return static_cast<unsigned>(p.integer("threads", 1, 1, 256)); }

// ---- poly ----

inline Json poly_eval(Params& p) {
  RatPoly P = p.rat_poly();
  Rational x = p.rational("at");
  Rational v = P(x);
  return {{"op", "eval"}, {"at", to_string(x)}, {"value", to_string(v)}, {"approx", v.get_d()}};
}

inline Json poly_norm(Params& p) {
  RatPoly P = p.rat_poly();
  Interval I = p.interval();
  double eps = p.positive("eps", 1e-12);
  return sup_norm_json(sup_norm_detail(P, I, eps));
}

inline Json poly_resultant(Params& p) {
  IntPoly P = p.int_poly("coeffs"), Q = p.int_poly("other");
  Integer r = resultant(P, Q);
  return {{"op", "resultant"}, {"value", to_string(r)}, {"common_root", r == 0}};
}

inline Json poly_discriminant(Params& p) {
  IntPoly P = p.int_poly();
  Integer d = discriminant(P);
  return {{"op", "discriminant"}, {"value", to_string(d)}, {"squarefree", d != 0}};
}

inline Json poly_newton(Params& p) {
  SymmetricData d;
  if (p.has("coeffs")) {
    IntPoly P = p.int_poly();
    d = symmetric_data(P, static_cast<int>(p.integer("order", P.degree(), 1, P.degree())));
  } else if (p.has("sigma")) {
    d.sigma = p.rationals("sigma");
    d.n = static_cast<int>(p.integer("degree", 0, 0));
    d = newton_convert(std::move(d), NewtonDirection::ElementaryToPowerSums);
  } else if (p.has("powersums")) {
    d.powersums = p.rationals("powersums");
    d = newton_convert(std::move(d), NewtonDirection::PowerSumsToElementary);
  } else {
    throw PreconditionError("missing_argument", "one of --coeffs, --sigma, --powersums is required");
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < d.sigma.size(); ++i)
    rows.push_back({{"m", i + 1}, {"sigma", to_string(d.sigma[i])}, {"powersum", to_string(d.powersums[i])}});
  return {{"op", "newton"}, {"n", d.n}, {"rows", rows}};
}

inline Json poly_irreducible(Params& p) {
  IntPoly P = p.int_poly();
  return {{"op", "irreducible"}, {"irreducible", irreducible_over_Q(P)}, {"degree_cap", kIrreducibilityDegreeCap}};
}

inline Json poly_substitute(Params& p) {
  RatPoly P = p.rat_poly();
  RatPoly Q;
  if (p.has("square") && p.str("square") == "true") {
    Q = change_variable(P, SquareSubstitution{});
  } else {
    Interval from = p.interval("from"), to = p.interval("to");
    Q = change_variable(P, AffineChange{from, to});
  }
  return {{"op", "substitute"}, {"polynomial", poly_to_json(Q)}};
}

// ---- roots, mahler, cheb ----

inline Json roots(Params& p) {
  IntPoly P = p.int_poly();
  double eps = p.positive("eps", 1e-30);
  int mmax = static_cast<int>(p.integer("mmax", 4, 1, 1000));
  Json j = Json::object();
  Json r = roots_json(find_roots(P, eps));
  j["degree"] = r["degree"];
  j["precision_bits"] = r["precision_bits"];
  j["stats"] = zero_stats_json(zero_stats(P, mmax, eps));
  j["rows"] = r["rows"];
  return j;
}

inline Json mahler(Params& p) {
  IntPoly P = p.int_poly();
  double eps = p.positive("eps", 1e-15);
  Json j = {{"kind", "mahler"}, {"mahler", enc(mahler_measure(P, eps))}};
  if (p.has("c")) {
    Rational c = p.rational("c");
    auto g = generalized_mahler_detail(P, c, eps);
    j["generalized"] = {{"c", to_string(c)},
                        {"segment", Interval::centered4(c).str()},
                        {"value", enc(g.value)},
                        {"inside", g.inside},
                        {"outside", g.outside},
                        {"boundary", g.boundary},
                        {"ambiguous", g.ambiguous}};
    int mmax = static_cast<int>(p.integer("mmax", 4, 0, 200));
    Json moments = Json::array();
    for (int m = 0; m <= mmax; ++m)
      moments.push_back({{"m", m}, {"value", to_string(arcsine_moment({c}, static_cast<unsigned>(m)))}});
    j["equilibrium_moments"] = moments;
  }
  return j;
}

inline Json cheb_row(unsigned n, const Interval& I, double eps) {
  RatPoly t = monic_chebyshev(n, I);
  Rational exact = monic_chebyshev_norm(n, I);
  Enclosure e = sup_norm(t, I, eps);
  return {{"n", n},
          {"polynomial", poly_to_json(t)},
          {"norm_exact", to_string(exact)},
          {"norm", e.value_str()},
          {"norm_lower", e.lower_str()},
          {"norm_upper", e.upper_str()},
          {"relative_width", e.relative_width()}};
}

inline Json cheb(Params& p) {
  Interval I = p.interval("interval", "-1,1");
  double eps = p.positive("eps", 1e-12);
  Json j = {{"kind", "monic_chebyshev"}, {"interval", I.str()}};
  if (p.has("nmax")) {
    long nmax = p.integer("nmax", std::nullopt, 1, 2000);
    Json rows = Json::array();
    for (long n = 1; n <= nmax; ++n) rows.push_back(cheb_row(static_cast<unsigned>(n), I, eps));
    j["rows"] = rows;
  } else {
    j.update(cheb_row(static_cast<unsigned>(p.integer("n", std::nullopt, 1, 2000)), I, eps));
  }
  return j;
}

// ---- icheb ----

inline Json icheb_exhaustive(Params& p) {
  ExhaustiveOptions o;
  Interval I = p.interval("interval", "0,1");
  o.n_max = static_cast<int>(p.integer("nmax", 6, 1, 64));
  o.height = p.integer("height", 4, 1, 1'000'000);
  o.budget = static_cast<std::uint64_t>(p.integer("budget", 50'000'000, 1));
  o.eps = p.positive("eps", 1e-40);
  o.threads = threads(p);
  auto r = exhaustive_integer_chebyshev(I, o);
  Json j = exhaustive_json(r);
  if (r.truncated) throw PartialResult{j};
  return j;
}

inline Json icheb_factors(Params& p) {
  Interval I = p.interval("interval", "0,1");
  OptimizerOptions o;
  o.grid_eps = p.positive("grid-eps", o.grid_eps);
  o.lp_eps = p.positive("lp-eps", o.lp_eps);
  o.grid_nodes = static_cast<int>(p.integer("grid-nodes", o.grid_nodes, 8, 1 << 16));
  o.realization_degree = p.integer("realization-degree", o.realization_degree, 1, 1L << 44);
  FactorBasis B;
  if (p.has("basis")) {
    B = load_basis(p.str("basis"), I);
  } else if (I == Interval(Rational(0), Rational(1))) {
    B = default_basis_01();
    p.str("basis", "default");
  } else {
    throw PreconditionError("missing_basis", "--basis is required outside [0,1]");
  }
  return optimizer_json(factor_exponent_optimize(B, I, o));
}

inline Json icheb_hilbert(Params& p) { return to_json(hilbert_upper_bound(p.interval())); }

inline Json icheb_trigub(Params& p) {
  if (p.has("mmax")) {
    long mmax = p.integer("mmax", std::nullopt, 1, 100000);
    Json rows = Json::array();
    for (long m = 1; m <= mmax; ++m) rows.push_back(trigub_row_json(trigub_interval_report(m)));
    return {{"kind", "trigub"}, {"rows", rows}};
  }
  auto t = trigub_interval_report(p.integer("m", 1, 1, 1L << 30));
  Json j = to_json(t.report);
  j["ratio_row"] = trigub_row_json(t);
  return j;
}

inline Json icheb_leading(Params& p) {
  IntPoly R = p.int_poly();
  Interval I = p.interval();
  auto b = leading_coeff_lower_bound(R, I, p.positive("eps", 1e-15));
  Json j = to_json(b.report);
  j["generic"] = enc(b.generic);
  return j;
}

inline Json icheb_resultant_ineq(Params& p) {
  IntPoly P = p.int_poly("coeffs"), R = p.int_poly("other");
  Interval I = p.interval();
  auto r = resultant_inequality(P, R, I, p.positive("eps", 1e-20));
  return {{"kind", "resultant_inequality"},
          {"resultant", to_string(r.res)},
          {"lhs", enc(r.lhs)},
          {"roots_in_interval", r.roots_in_interval},
          {"holds", r.holds},
          {"certified", r.certified}};
}

// ---- schur ----

inline Json schur_growth(Params& p) {
  IntPoly P = p.int_poly();
  long M = p.integer("M", 1, 1);
  int mmax = static_cast<int>(p.integer("mmax", 5, 1, 1000));
  return check_json(schur_growth_check(P, M, mmax, p.positive("eps", 1e-30)));
}

inline Json schur_lipschitz(Params& p) {
  IntPoly P = p.int_poly();
  int m = static_cast<int>(p.integer("m", 2, 1, 1000));
  return check_json(lipschitz_mean_bound_check(P, m, p.positive("eps", 1e-30)));
}

inline Json schur_trace(Params& p) {
  FamilySpec F = family_spec(p);
  int mmax = static_cast<int>(p.integer("mmax", 3, 1, 1000));
  return trace_json(trace_mean_table(F, mmax, threads(p)));
}

inline Json schur_mahler_hyp(Params& p) {
  FamilySpec F = family_spec(p);
  Rational c = p.rational("c", "2");
  double eps = p.positive("eps", 1e-15);
  return check_json(generalized_mahler_hypothesis_report(F, c, threads(p), eps));
}

// ---- families ----

inline Json families(Params& p) {
  FamilySpec F = family_spec(p);
  Json rows = Json::array();
  for (const auto& m : generate_family(F)) {
    const int n = m.degree();
    Rational sum = -Rational(m.poly.coeff(static_cast<std::size_t>(n - 1))) / Rational(m.poly.leading());
    rows.push_back({{"param", m.param},
                    {"degree", n},
                    {"subleading", to_string(m.poly.coeff(static_cast<std::size_t>(n - 1)))},
                    {"root_sum", to_string(sum)},
                    {"polynomial", poly_to_json(m.poly)}});
  }
  return {{"family", to_string(F.kind)}, {"rows", rows}};
}

}  // namespace detail

inline const std::vector<Command>& commands() {
  using namespace detail;
  static const std::vector<Command> cmds = {
      {"poly", "eval", "exact value P(x)", {"coeffs", "at"}, poly_eval},
      {"poly", "norm", "certified sup-norm on an interval", {"coeffs", "interval", "eps"}, poly_norm},
      {"poly", "resultant", "integer resultant Res(P, Q)", {"coeffs", "other"}, poly_resultant},
      {"poly", "discriminant", "integer discriminant", {"coeffs"}, poly_discriminant},
      {"poly", "newton", "elementary symmetric functions <-> power sums",
       {"coeffs", "order", "sigma", "powersums", "degree"}, poly_newton},
      {"poly", "irreducible", "irreducibility over Q (degree <= 8)", {"coeffs"}, poly_irreducible},
      {"poly", "substitute", "change of variable: x -> x^2 or an affine map",
       {"coeffs", "square", "from", "to"}, poly_substitute},
      {"", "roots", "certified complex roots and zero statistics", {"coeffs", "eps", "mmax"}, roots},
      {"", "mahler", "Mahler measure; with --c the generalized measure for [c-2, c+2]",
       {"coeffs", "c", "eps", "mmax"}, mahler},
      {"", "cheb", "monic Chebyshev polynomial of an interval and its norm", {"n", "nmax", "interval", "eps"}, cheb},
      {"icheb", "exhaustive", "exhaustive integer Chebyshev search",
       {"interval", "nmax", "height", "budget", "threads", "eps"}, icheb_exhaustive},
      {"icheb", "factors", "factor-exponent optimizer upper bound",
       {"interval", "basis", "grid-eps", "lp-eps", "grid-nodes", "realization-degree"}, icheb_factors},
      {"icheb", "hilbert", "Hilbert upper bound", {"interval"}, icheb_hilbert},
      {"icheb", "trigub", "lower/upper bounds on I_m = [1/(m+4), 1/m]", {"m", "mmax"}, icheb_trigub},
      {"icheb", "leading", "leading-coefficient lower bound from R", {"coeffs", "interval", "eps"}, icheb_leading},
      {"icheb", "resultant-ineq", "|a_n|^m ||R||^n >= |Res(P,R)| >= 1", {"coeffs", "other", "interval", "eps"},
       icheb_resultant_ineq},
      {"schur", "growth", "coefficient and power-sum growth in the unit disk", {"coeffs", "M", "mmax", "eps"},
       schur_growth},
      {"schur", "lipschitz", "test-function mean against its bound", {"coeffs", "m", "eps"}, schur_lipschitz},
      {"schur", "trace", "trace and symmetric means of totally positive families",
       {"family", "params", "coeffs", "mmax", "threads"}, schur_trace},
      {"schur", "mahler-hyp", "generalized Mahler measure paired with the zero mean",
       {"family", "params", "coeffs", "c", "eps", "threads"}, schur_mahler_hyp},
      {"", "families", "generate family members", {"family", "params", "coeffs"}, families},
  };
  return cmds;
}

namespace detail {

inline std::string usage() {
  std::ostringstream os;
  os << "intcheb " << kToolVersion << "\n\nUsage: intcheb <command> [<action>] [options]\n\nCommands:\n";
  for (const auto& c : commands()) os << "  " << c.full() << std::string(24 - std::min<std::size_t>(22, c.full().size()), ' ') << c.help << "\n";
  os << "\nCommon options: --config FILE --csv --timestamp T --max-bits N\n"
        "Exit status: 0 ok, 1 internal error, 2 invalid input, 3 budget or precision exhausted.\n";
  return os.str();
}

/// Gathers the tokens of a bracketed JSON value split by the shell
/// ("--coeffs [ 0,1 ]") into one argument.
inline std::vector<std::string> join_json_values(const std::vector<std::string>& in) {
  static const std::vector<std::string> json_opts = {"--coeffs", "--other", "--sigma", "--powersums"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    out.push_back(in[i]);
    if (std::find(json_opts.begin(), json_opts.end(), in[i]) == json_opts.end()) continue;
    std::string joined;
    std::size_t j = i + 1;
    while (j < in.size() && in[j].rfind("--", 0) != 0) joined += (joined.empty() ? "" : " ") + in[j++];
    if (j > i + 1) out.push_back(joined);
    i = j - 1;
  }
  return out;
}

inline Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("file_not_found", "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = parse_json_text(ss.str(), "config");
  if (!j.is_object()) throw PreconditionError("malformed_json", "config must be a JSON object");
  if (j.contains("manifest") && j["manifest"].is_object()) j = j["manifest"];
  if (j.contains("parameters") && j["parameters"].is_object()) {
    Json merged = j["parameters"];
    if (j.contains("timestamp") && !j["timestamp"].is_null()) merged["timestamp"] = j["timestamp"];
    return merged;
  }
  return j;
}

inline Json error_doc(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

inline void emit(const Json& doc, bool csv, std::ostream& out) {
  if (csv && !doc.contains("error"))
    write_csv(doc, out);
  else
    out << doc.dump(2) << "\n";
}

/// Bounded precision override for the duration of one run.
class MaxBitsScope {
 public:
  explicit MaxBitsScope(long bits) : saved_(max_bits_setting().exchange(bits)) {}
  ~MaxBitsScope() { max_bits_setting().store(saved_); }
  MaxBitsScope(const MaxBitsScope&) = delete;
  MaxBitsScope& operator=(const MaxBitsScope&) = delete;

 private:
  long saved_;
};

}  // namespace detail

/// Runs one CLI invocation (args exclude the program name). Output documents
/// go to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  using detail::error_doc;
  const auto args = detail::join_json_values(raw_args);
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    out << detail::usage();
    return args.empty() ? kPrecondition : kOk;
  }
  if (args[0] == "--version") {
    out << kToolVersion << "\n";
    return kOk;
  }

  // Resolve "<command> [<action>]".
  const Command* cmd = nullptr;
  std::size_t consumed = 0;
  for (const auto& c : commands()) {
    if (c.group.empty() && c.name == args[0]) cmd = &c, consumed = 1;
    if (!c.group.empty() && c.group == args[0] && args.size() > 1 && c.name == args[1]) cmd = &c, consumed = 2;
  }
  if (!cmd) {
    bool group = false;
    for (const auto& c : commands()) group = group || c.group == args[0];
    std::string what = group ? (args.size() > 1 ? "unknown action '" + args[1] + "' for '" + args[0] + "'"
                                                : "'" + args[0] + "' needs an action")
                             : "unknown subcommand '" + args[0] + "'";
    if (group && args.size() > 1 && (args[1] == "--help" || args[1] == "-h")) {
      out << detail::usage();
      return kOk;
    }
    out << error_doc("unknown_subcommand", what).dump(2) << "\n";
    err << "intcheb: " << what << "\n";
    return kPrecondition;
  }

  CLI::App app{cmd->help, "intcheb " + cmd->full()};
  std::map<std::string, std::string> given;
  std::map<std::string, CLI::Option*> opts;
  std::map<std::string, std::string> values;
  std::vector<std::string> names = cmd->options;
  for (const char* common : {"config", "csv", "timestamp", "max-bits"}) names.emplace_back(common);
  for (const auto& name : names) {
    const std::string& help = detail::option_help().at(name);
    if (detail::is_flag(name))
      opts[name] = app.add_flag("--" + name, help);
    else
      opts[name] = app.add_option("--" + name, values[name], help);
  }
  std::vector<std::string> rest(args.begin() + static_cast<long>(consumed), args.end());
  std::reverse(rest.begin(), rest.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string code = dynamic_cast<const CLI::ExtrasError*>(&e) ? "unknown_option" : "usage";
    out << error_doc(code, e.what()).dump(2) << "\n";
    err << "intcheb: " << e.what() << "\n";
    return kPrecondition;
  }
  for (const auto& name : names)
    if (opts[name]->count() > 0) given[name] = detail::is_flag(name) ? "true" : values[name];

  Json manifest = {{"command", cmd->full()}, {"parameters", Json::object()}, {"tool_version", kToolVersion}};
  auto finish_manifest = [&](Params* p, long bits) {
    if (p) manifest["parameters"] = p->recorded();
    manifest["precision"] = {{"max_bits", bits}, {"enclosure_bits", kEnclosureBits}};
    std::optional<std::string> ts;
    if (p && p->has("timestamp")) ts = p->raw("timestamp");
    else if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) ts = e;
    manifest["timestamp"] = ts ? Json(*ts) : Json(nullptr);
  };

  std::optional<Params> params;
  bool csv = given.count("csv") > 0;
  auto fail = [&](const std::string& code, const std::string& message, int status) {
    if (params) manifest["parameters"] = params->recorded();
    Json doc = error_doc(code, message);
    doc["manifest"] = manifest;
    out << doc.dump(2) << "\n";
    err << "intcheb: " << code << ": " << message << "\n";
    return status;
  };
  try {
    Json config = given.count("config") ? detail::load_config(given["config"]) : Json::object();
    if (!csv && config.contains("csv") && config["csv"] == true) csv = true;
    params.emplace(given, config);
    long bits = params->has("max-bits") ? params->integer("max-bits", std::nullopt, 64, 1L << 20) : 0;
    detail::MaxBitsScope scope(bits);
    finish_manifest(&*params, default_max_bits());
    Json doc;
    int status = kOk;
    try {
      doc = cmd->handler(*params);
    } catch (PartialResult& partial) {
      doc = std::move(partial.doc);
      status = kExhausted;
      err << "intcheb: budget exhausted; the table is partial\n";
    }
    finish_manifest(&*params, default_max_bits());
    doc["manifest"] = manifest;
    detail::emit(doc, csv, out);
    return status;
  } catch (const BudgetExceeded& e) {
    return fail(e.code(), e.what(), kExhausted);
  } catch (const PrecisionExhausted& e) {
    return fail(e.code(), e.what(), kExhausted);
  } catch (const Error& e) {
    return fail(e.code(), e.what(), e.code() == "internal" ? kInternal : kPrecondition);
  } catch (const nlohmann::json::exception& e) {
    return fail("malformed_json", e.what(), kPrecondition);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInternal);
  }
}

}  // namespace intcheb::cli
