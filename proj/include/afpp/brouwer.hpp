#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace afpp {

/// Point of the standard simplex in barycentric coordinates.
struct SimplexPoint {
  std::vector<double> coords;

  int dimension() const { return static_cast<int>(coords.size()) - 1; }

  /// Validates nonnegativity and unit sum; drift below the tolerance is
  /// clamped and renormalized, anything larger throws.
  static SimplexPoint from_coords(std::vector<double> coords,
                                  double drift_tol = 1e-12);
};

/// Continuous self-map of the standard d-simplex.
struct SimplexMap {
  int dimension = 0;
  std::function<SimplexPoint(const SimplexPoint&)> eval;
  std::optional<double> lipschitz;  // sup-coordinate modulus when known
};

/// Completely labeled cell: vertex k carries label labels[k], and the
/// labels are a permutation of 0..d.
struct SpernerCell {
  std::vector<std::vector<double>> vertices;
  std::vector<int> labels;
  int depth = 0;
};

struct SearchStats {
  long long cells_visited = 0;
  long long map_evaluations = 0;
  int max_depth = 0;
};

enum class SolveStatus { Converged, BudgetExceeded };

struct BrouwerResult {
  SimplexPoint point;
  double residual = 0.0;  // sup-coordinate |G(p) - p|
  SolveStatus status = SolveStatus::Converged;
  SearchStats stats;
  std::optional<SpernerCell> certificate;
};

double residual_sup(const SimplexMap& map, const SimplexPoint& p);

/// Walks the barycentric subdivision at the given depth in lexicographic
/// order and returns the first completely labeled cell's barycenter, or an
/// exactly fixed vertex if one is met first. Labels follow
/// l(v) = min { i : G(v)_i < v_i and v_i > 0 }. Throws BudgetError when the
/// cell budget is exhausted.
SimplexPoint sperner_search(const SimplexMap& map, int depth,
                            long long cell_budget = 10'000'000,
                            SearchStats* stats = nullptr,
                            SpernerCell* certificate = nullptr);

/// Approximate fixed point: iterative-deepening cell search, local zoom
/// into found cells, then damped / averaged iteration polish. Never throws
/// on exhaustion; a BudgetExceeded result carries the best point seen.
BrouwerResult fixed_point(const SimplexMap& map, double tol,
                          long long work_budget = 10'000'000);

}  // namespace afpp
