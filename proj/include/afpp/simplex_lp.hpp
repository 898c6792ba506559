#pragma once

#include <vector>

namespace afpp {

/// Linear program in equality standard form:
///   minimize c.x  subject to  A x = b,  x >= 0.
struct LpProblem {
  std::vector<std::vector<double>> rows;  // A, dense, rows.size() x n
  std::vector<double> rhs;                // b
  std::vector<double> cost;               // c
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Dual value per equality row (y with A^T y <= c at the optimum).
  std::vector<double> duals;
};

/// Dense two-phase primal simplex with Bland's rule. Deterministic; intended
/// for the small programs this project generates (tens of rows/columns).
LpResult solve_lp(const LpProblem& problem);

}  // namespace afpp
