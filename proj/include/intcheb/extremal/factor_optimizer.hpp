#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "intcheb/extremal/basis.hpp"
#include "intcheb/extremal/bounds.hpp"
#include "intcheb/extremal/simplex.hpp"

namespace intcheb {

/// Exponent weights s_i >= 0 with sum_i s_i deg(Q_i) = 1 exactly.
struct Weights {
  std::vector<Rational> s;
};

struct OptimizerOptions {
  double grid_eps = 1e-10;  // exchange stops when certified max - grid max <= grid_eps
  double lp_eps = 1e-9;     // LP pivot tolerance; realization must be within lp_eps of the bound
  int grid_nodes = 2048;
  int max_exchange = 50;
  long realization_degree = 1L << 20;  // starting total degree m of the integer product
  int weight_bits = 40;                // weights are rationalized to this many bits
};

struct OptimizerResult {
  Weights weights;
  Enclosure potential_max;  // F(s) = max_I sum s_i log|Q_i|
  Enclosure bound;          // exp(F(s)), an upper bound for t_Z(I)
  Rational argmax;
  double grid_value = 0;    // LP value on the final grid
  int exchange_rounds = 0;
  std::size_t grid_size = 0;
  std::vector<long> exponents;  // integer realization prod Q_i^{e_i}
  long realized_degree = 0;
  Enclosure realized_bound;     // ||prod Q_i^{e_i}||_I^{1/deg}, certified
  bool realization_within_lp_eps = false;
  BoundReport report;
};

namespace detail {

inline double log_abs_double(const IntPoly& q, double x) {
  long double v = 0;
  for (auto it = q.coeffs().rbegin(); it != q.coeffs().rend(); ++it) v = v * x + static_cast<long double>(it->get_d());
  return static_cast<double>(std::log(std::abs(v)));
}

/// Rationalizes u (on the simplex) into s_i = r_i / (m_i sum r) with integer r_i.
inline Weights rationalize(const std::vector<double>& u, const std::vector<IntPoly>& Q, int bits) {
  const double scale = std::ldexp(1.0, bits);
  std::vector<Integer> r;
  Integer total = 0;
  for (double v : u) {
    double rv = std::round(std::max(0.0, v) * scale);
    r.emplace_back(rv);
    total += r.back();
  }
  if (total == 0) throw Error("internal", "all weights rounded to zero");
  Weights w;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    Rational s(r[i], total * Q[i].degree());
    s.canonicalize();
    w.s.push_back(s);
  }
  return w;
}

inline Enclosure exp_enclosure(const Enclosure& e) {
  return {exp(e.lower(), MPFR_RNDD), exp(e.upper(), MPFR_RNDU)};
}

}  // namespace detail

/// Minimizes F(s) = max_I sum_i s_i log|Q_i| over weights with
/// sum s_i m_i = 1. With u_i = s_i m_i on the simplex this is a matrix game
/// min_u max_x u^T g(x), g_i = log|Q_i(x)|/m_i, solved on a Chebyshev grid by
/// linear programming; the grid grows by the certified maximizer of the
/// current potential until the certified and grid maxima agree.
inline OptimizerResult factor_exponent_optimize(const FactorBasis& B, const Interval& I,
                                                const OptimizerOptions& opt = {}) {
  if (B.factors.empty()) throw PreconditionError("empty_basis", "factor basis must not be empty");
  for (const auto& q : B.factors)
    if (q.degree() < 1) throw PreconditionError("constant_factor", "basis factors must be nonconstant");
  if (opt.grid_nodes < 2) throw PreconditionError("invalid_parameter", "grid needs at least 2 nodes");
  const auto& Q = B.factors;
  const std::size_t K = Q.size();
  const double a = I.a().get_d(), b = I.b().get_d();

  std::vector<double> nodes;
  for (int j = 0; j < opt.grid_nodes; ++j)
    nodes.push_back((a + b) / 2 + (b - a) / 2 * std::cos((2.0 * j + 1) * M_PI / (2.0 * opt.grid_nodes)));
  nodes.push_back(a);
  nodes.push_back(b);

  // Payoff column per node; nodes at a root of some factor are skipped
  // (U = -inf there, so they never carry the maximum).
  constexpr double kFloor = -60.0;
  std::vector<std::vector<double>> G;  // G[j][i]
  auto add_node = [&](double x) {
    std::vector<double> col(K);
    for (std::size_t i = 0; i < K; ++i) {
      double v = detail::log_abs_double(Q[i], x);
      if (!std::isfinite(v)) return;
      col[i] = std::max(kFloor, v / Q[i].degree());
    }
    G.push_back(std::move(col));
  };
  for (double x : nodes) add_node(x);
  if (G.empty()) throw PreconditionError("degenerate_lp", "every grid node is a root of some factor");

  OptimizerResult res;
  for (int round = 0;; ++round) {
    // max 1^T x  s.t.  sum_i (G[j][i] + C) x_i <= 1, x >= 0; value = 1/(1^T x) - C.
    double gmin = 0;
    for (const auto& col : G)
      for (double v : col) gmin = std::min(gmin, v);
    const double C = 1.0 - gmin;
    std::vector<std::vector<double>> A(G.size(), std::vector<double>(K));
    for (std::size_t j = 0; j < G.size(); ++j)
      for (std::size_t i = 0; i < K; ++i) A[j][i] = G[j][i] + C;
    LpSolution lp = simplex_maximize(A, std::vector<double>(G.size(), 1.0), std::vector<double>(K, 1.0), opt.lp_eps * 1e-3);
    if (!(lp.objective > 0)) throw PreconditionError("degenerate_lp", "linear program has no positive solution");
    std::vector<double> u(K);
    for (std::size_t i = 0; i < K; ++i) u[i] = lp.x[i] / lp.objective;
    res.grid_value = 1.0 / lp.objective - C;

    res.weights = detail::rationalize(u, Q, opt.weight_bits);
    PotentialMax pm = log_potential_max(Q, res.weights.s, I);
    res.potential_max = pm.value;
    res.argmax = pm.argmax;
    res.exchange_rounds = round;
    const double gap = pm.value.upper().to_double(MPFR_RNDU) - res.grid_value;
    if (gap <= opt.grid_eps || round >= opt.max_exchange) break;
    std::size_t before = G.size();
    add_node(pm.argmax.get_d());
    if (G.size() == before) break;
  }
  res.grid_size = G.size();
  res.bound = detail::exp_enclosure(res.potential_max);

  // Integer realization prod Q_i^{e_i}, e_i = round(s_i m). Its norm^{1/deg}
  // is measured through the same potential (cost independent of m); m is
  // doubled from the requested degree until it certifies within lp_eps.
  if (opt.realization_degree < 1) throw PreconditionError("invalid_parameter", "realization degree must be >= 1");
  const Real tol(opt.lp_eps, 64);
  for (long m = opt.realization_degree;; m *= 2) {
    res.exponents.clear();
    res.realized_degree = 0;
    for (std::size_t i = 0; i < K; ++i) {
      Rational t = res.weights.s[i] * Rational(m) + Rational(1, 2);
      Integer e = t.get_num() / t.get_den();  // floor(s_i m + 1/2)
      res.exponents.push_back(e.get_si());
      res.realized_degree += res.exponents.back() * Q[i].degree();
    }
    if (res.realized_degree > 0) {
      std::vector<Rational> w;
      for (long e : res.exponents) w.emplace_back(e, res.realized_degree);
      for (auto& v : w) v.canonicalize();
      res.realized_bound = detail::exp_enclosure(log_potential_max(Q, w, I).value);
      res.realization_within_lp_eps = Real::sub(res.realized_bound.upper(), res.bound.upper(), MPFR_RNDU) <= tol;
    }
    if (res.realization_within_lp_eps || m > (1L << 43)) break;
  }

  res.report.kind = "upper_tZ";
  res.report.value = res.bound;
  Json factors = Json::array(), weights = Json::array(), exps = Json::array();
  for (std::size_t i = 0; i < K; ++i) {
    factors.push_back(poly_to_json(Q[i]));
    weights.push_back(to_string(res.weights.s[i]));
    exps.push_back(res.exponents[i]);
  }
  res.report.certificate = {{"factors", factors},
                            {"weights", weights},
                            {"argmax", to_string(res.argmax)},
                            {"potential_max", enclosure_json(res.potential_max)},
                            {"grid_value", res.grid_value},
                            {"grid_size", res.grid_size},
                            {"exchange_rounds", res.exchange_rounds},
                            {"realization", {{"exponents", exps},
                                             {"degree", res.realized_degree},
                                             {"root_norm", enclosure_json(res.realized_bound)},
                                             {"within_lp_eps", res.realization_within_lp_eps}}}};
  res.report.params = {{"interval", I.str()},        {"grid_eps", opt.grid_eps},
                       {"lp_eps", opt.lp_eps},        {"grid_nodes", opt.grid_nodes},
                       {"max_exchange", opt.max_exchange}, {"realization_degree", opt.realization_degree}};
  return res;
}

}  // namespace intcheb
