#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "afpp/brouwer.hpp"
#include "afpp/convex_body.hpp"
#include "afpp/enumeration.hpp"
#include "afpp/functional.hpp"
#include "afpp/self_map.hpp"

namespace afpp {

struct EngineBudgets {
  int net_points = 96;          // net size cap per refinement rung
  int net_samples = 4096;       // evaluation samples per net build
  int cover_centers = 128;      // partition-of-unity centers cap
  int rungs = 8;                // refinement ladder length
  long long brouwer_work = 60'000;  // per-rung solver work units
  long long cells = 10'000'000;     // cell cap for direct searches
  int orbit_burst = 4096;       // longest averaged trajectory seeded
  std::uint64_t seed = 0x9E3779B97F4A7C15ull;
};

/// Finite net over the evaluation image of the body: values q with
/// representatives y_q in the body satisfying (pair(fn_j, y_q))_j == q.
struct NetData {
  std::vector<std::vector<double>> points;
  std::vector<SparsePoint> reps;
  std::vector<std::vector<double>> rep_coeffs;  // over body vertices
  std::vector<Functional> functionals;
  double epsilon = 0.0;
  double cover_radius = 0.0;  // sup-radius certified on the sample set
  int sample_count = 0;
  bool covered_all_samples = true;
};

/// Hat partition over barycentric coordinates of the net representatives:
/// weight_i(p) proportional to max(0, radius_i - |p - center_i|_1).
struct PartitionOfUnity {
  std::vector<std::vector<double>> centers;
  std::vector<double> radii;
  std::vector<int> assigned_rep;

  std::vector<double> weights(std::span<const double> barycentric) const;
};

enum class AfpStatus { Converged, BudgetExceeded };

struct AfpReport {
  SparsePoint point;
  std::vector<double> residuals;  // |pair(fn_j, z - f(z))| per functional
  double epsilon = 0.0;
  AfpStatus status = AfpStatus::BudgetExceeded;
  int rungs_used = 0;
  std::vector<int> net_sizes;
  std::vector<int> cover_sizes;
  SearchStats brouwer;           // aggregated over rungs
  double membership_error = 0.0; // hull reconstruction error of the point
};

struct SequenceReport {
  std::vector<SparsePoint> points;
  std::vector<std::vector<double>> residuals;  // row n holds n entries
  AfpStatus status = AfpStatus::BudgetExceeded;
  std::vector<AfpReport> stages;
};

struct KyFanResult {
  SparsePoint point;
  double l1_residual = 0.0;
  AfpStatus status = AfpStatus::BudgetExceeded;
  int refinements = 0;
};

struct HullIterationStep {
  std::vector<SparsePoint> generators;
  double gap = 0.0;  // max distance of fresh images to the previous hull
};

struct HullIterationResult {
  std::vector<HullIterationStep> steps;
  AfpStatus status = AfpStatus::Converged;
};

/// Builds a finite net over the evaluation image from deterministic
/// sampling (vertices, a coefficient grid, map images, averaged orbits).
/// Coverage is certified on the sample set at sup-radius < epsilon / 2;
/// throws BudgetError when the cap prevents certification.
NetData build_net(const ConvexBody& body, const SelfMap& map,
                  std::span<const Functional> functionals, double epsilon,
                  const EngineBudgets& budgets = {},
                  std::span<const std::vector<double>> extra_samples = {},
                  bool throw_on_budget = true);

/// Weak approximate fixed point: every functional's residual at the
/// returned point is below epsilon when the status is Converged. Runs a
/// coarse-to-fine ladder of net + partition + simplex solves, enriching
/// the net near the best point between rungs; residuals are recomputed
/// exactly from the returned point before success is declared.
AfpReport approx_fixed_point(const ConvexBody& body, const SelfMap& map,
                             std::span<const Functional> functionals,
                             double epsilon,
                             const EngineBudgets& budgets = {});

/// Diagonal schedule: stage n uses the first n enumerated functionals and
/// epsilon = 1/n, so residuals satisfy r[n][i] < 1/n for i <= n.
SequenceReport afp_sequence(const ConvexBody& body, const SelfMap& map,
                            FunctionalEnumeration& enumeration, int stages,
                            const EngineBudgets& budgets = {});

/// Norm-approximate fixed point on a compact body: drives the l1 residual
/// below tol by refining the weak tolerance over coordinate functionals.
KyFanResult ky_fan_fixed_point(const ConvexBody& body, const SelfMap& map,
                               double tol, const EngineBudgets& budgets = {});

/// Iterates D_n = hull(D_{n-1} u f(D_{n-1})) from a start point, keeping
/// finite generator lists and the per-step hull growth gap.
HullIterationResult invariant_separable_hull(const ConvexBody& body,
                                             const SelfMap& map,
                                             const SparsePoint& start,
                                             int steps,
                                             int generator_budget = 512);

}  // namespace afpp
