#pragma once

#include <cmath>
#include <vector>

#include "intcheb/core/error.hpp"

namespace intcheb {

struct LpSolution {
  std::vector<double> x;     // primal solution
  std::vector<double> dual;  // one multiplier per constraint
  double objective = 0;
  int pivots = 0;
};

/// maximize c^T x subject to A x <= b, x >= 0, with b >= 0 (the slack basis
/// is feasible). Condensed tableau. Entering by largest reduced cost; the
/// ratio test takes the exact minimum and, among near-ties, the largest pivot
/// element. After a run of degenerate pivots it switches to Bland's rule,
/// which cannot cycle.
inline LpSolution simplex_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                                   const std::vector<double>& c, double tol = 1e-12) {
  const std::size_t m = A.size(), n = c.size();
  for (double v : b)
    if (v < 0) throw PreconditionError("lp_infeasible_start", "simplex requires b >= 0");
  std::vector<std::vector<double>> T = A;
  std::vector<double> rhs = b, cost = c;
  double z = 0;
  std::vector<std::size_t> col_var(n), row_var(m);
  for (std::size_t j = 0; j < n; ++j) col_var[j] = j;
  for (std::size_t i = 0; i < m; ++i) row_var[i] = n + i;
  LpSolution sol;
  int degenerate_run = 0;
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw Error("lp_stalled", "simplex iteration limit reached");
    const bool bland = degenerate_run > static_cast<int>(2 * (m + n));
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (cost[j] <= tol) continue;
      if (enter == n || (bland ? col_var[j] < col_var[enter] : cost[j] > cost[enter])) enter = j;
    }
    if (enter == n) break;
    // Tiny pivots wreck the tableau; only entries near the column scale qualify.
    double col_max = 0;
    for (std::size_t i = 0; i < m; ++i) col_max = std::max(col_max, T[i][enter]);
    const double piv_tol = std::max(tol, 1e-9 * col_max);
    double best = INFINITY;
    for (std::size_t i = 0; i < m; ++i)
      if (T[i][enter] > piv_tol) best = std::min(best, std::max(rhs[i], 0.0) / T[i][enter]);
    if (!std::isfinite(best)) throw PreconditionError("lp_unbounded", "linear program is unbounded");
    std::size_t leave = m;
    const double slack = tol * std::max(1.0, best);
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= piv_tol || std::max(rhs[i], 0.0) / T[i][enter] > best + slack) continue;
      if (leave == m || (bland ? row_var[i] < row_var[leave] : T[i][enter] > T[leave][enter])) leave = i;
    }
    degenerate_run = best <= slack ? degenerate_run + 1 : 0;
    const double p = T[leave][enter];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      const double f = T[i][enter] / p;
      for (std::size_t k = 0; k < n; ++k)
        if (k != enter) T[i][k] -= f * T[leave][k];
      rhs[i] -= f * rhs[leave];
      T[i][enter] = -f;
    }
    {
      const double f = cost[enter] / p;
      for (std::size_t k = 0; k < n; ++k)
        if (k != enter) cost[k] -= f * T[leave][k];
      z += f * rhs[leave];
      cost[enter] = -f;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (k != enter) T[leave][k] /= p;
    rhs[leave] /= p;
    T[leave][enter] = 1 / p;
    std::swap(row_var[leave], col_var[enter]);
    ++sol.pivots;
  }
  sol.x.assign(n, 0.0);
  sol.dual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (row_var[i] < n) sol.x[row_var[i]] = rhs[i];
  for (std::size_t j = 0; j < n; ++j)
    if (col_var[j] >= n) sol.dual[col_var[j] - n] = -cost[j];
  sol.objective = z;
  return sol;
}

}  // namespace intcheb
