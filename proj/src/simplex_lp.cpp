#include "afpp/simplex_lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace afpp {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-8;

// Tableau layout: m constraint rows over columns [structural | artificial],
// one trailing rhs column. Row "obj" carries the phase objective as reduced
// costs (z_j - c_j convention: we keep plain c and subtract on pivots).
struct Tableau {
  int m = 0;           // constraint rows
  int n = 0;           // structural columns
  std::vector<std::vector<double>> t;  // (m+1) x (n+m+1)
  std::vector<int> basis;              // size m, column index per row

  double& at(int r, int c) { return t[r][c]; }
  int cols() const { return n + m + 1; }
  int rhs_col() const { return n + m; }
  int obj_row() const { return m; }

  void pivot(int prow, int pcol) {
    const double piv = t[prow][pcol];
    const int C = cols();
    std::vector<double>& pr = t[prow];
    for (int c = 0; c < C; ++c) pr[c] /= piv;
    pr[pcol] = 1.0;
    for (int r = 0; r <= m; ++r) {
      if (r == prow) continue;
      const double f = t[r][pcol];
      if (f == 0.0) continue;
      std::vector<double>& row = t[r];
      for (int c = 0; c < C; ++c) row[c] -= f * pr[c];
      row[pcol] = 0.0;
    }
    basis[prow] = pcol;
  }

  // Bland: entering = lowest-index column with negative reduced cost;
  // leaving = min ratio, ties by lowest basis column. Never cycles.
  // allow_artificial gates whether artificial columns may re-enter.
  LpStatus run(bool allow_artificial) {
    const int limit = allow_artificial ? n + m : n;
    for (;;) {
      int pcol = -1;
      for (int c = 0; c < limit; ++c) {
        if (t[obj_row()][c] < -kPivotTol) {
          pcol = c;
          break;
        }
      }
      if (pcol < 0) return LpStatus::Optimal;
      int prow = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        if (t[r][pcol] > kPivotTol) {
          const double ratio = t[r][rhs_col()] / t[r][pcol];
          if (ratio < best - 1e-14 ||
              (ratio < best + 1e-14 &&
               (prow < 0 || basis[r] < basis[prow]))) {
            best = ratio;
            prow = r;
          }
        }
      }
      if (prow < 0) return LpStatus::Unbounded;
      pivot(prow, pcol);
    }
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  const int m = static_cast<int>(problem.rows.size());
  const int n = static_cast<int>(problem.cost.size());
  if (static_cast<int>(problem.rhs.size()) != m)
    throw std::invalid_argument("solve_lp: rhs size mismatch");
  for (const auto& row : problem.rows)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_lp: row size mismatch");

  Tableau tab;
  tab.m = m;
  tab.n = n;
  tab.t.assign(m + 1, std::vector<double>(n + m + 1, 0.0));
  tab.basis.resize(m);

  // Constraint rows, sign-flipped so rhs >= 0; artificial basis.
  for (int r = 0; r < m; ++r) {
    const double sign = problem.rhs[r] < 0.0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) tab.at(r, c) = sign * problem.rows[r][c];
    tab.at(r, n + r) = 1.0;
    tab.at(r, tab.rhs_col()) = sign * problem.rhs[r];
    tab.basis[r] = n + r;
  }

  // Phase 1: minimize the artificial sum. Objective row = -sum of rows so
  // the artificial columns start with reduced cost 0.
  for (int c = 0; c < tab.cols(); ++c) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += tab.at(r, c);
    tab.at(tab.obj_row(), c) = -s;
  }
  for (int r = 0; r < m; ++r) tab.at(tab.obj_row(), n + r) = 0.0;

  if (tab.run(false) != LpStatus::Optimal)
    return {LpStatus::Infeasible, {}, 0.0, {}};
  if (-tab.at(tab.obj_row(), tab.rhs_col()) > kFeasTol)
    return {LpStatus::Infeasible, {}, 0.0, {}};

  // Drive any residual artificials out of the basis (degenerate rows).
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < n) continue;
    int pcol = -1;
    for (int c = 0; c < n; ++c) {
      if (std::abs(tab.at(r, c)) > kPivotTol) {
        pcol = c;
        break;
      }
    }
    if (pcol >= 0) tab.pivot(r, pcol);
    // else: the row is redundant; its artificial stays basic at value 0.
  }

  // Phase 2 objective: reduced costs of c relative to the current basis.
  for (int c = 0; c < tab.cols(); ++c)
    tab.at(tab.obj_row(), c) = c < n ? problem.cost[c] : 0.0;
  for (int r = 0; r < m; ++r) {
    const int bc = tab.basis[r];
    const double cb = bc < n ? problem.cost[bc] : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c < tab.cols(); ++c)
      tab.at(tab.obj_row(), c) -= cb * tab.at(r, c);
  }

  const LpStatus st = tab.run(false);
  if (st != LpStatus::Optimal) return {st, {}, 0.0, {}};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (tab.basis[r] < n) res.x[tab.basis[r]] = tab.at(r, tab.rhs_col());
  res.objective = 0.0;
  for (int c = 0; c < n; ++c) res.objective += problem.cost[c] * res.x[c];

  // Duals from the reduced costs under the artificial columns: that block
  // holds c_B B^{-1} for each original row, up to the phase-1 sign flips.
  res.duals.assign(m, 0.0);
  for (int r = 0; r < m; ++r) {
    const double sign = problem.rhs[r] < 0.0 ? -1.0 : 1.0;
    res.duals[r] = -sign * tab.at(tab.obj_row(), n + r);
  }
  return res;
}

}  // namespace afpp
