#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "afpp/functional.hpp"
#include "afpp/seminorm.hpp"
#include "afpp/sparse_point.hpp"

namespace afpp {

struct AmbientL1Norm {};
struct AmbientSupNorm {};
struct FamilyLevelNorm {
  SeminormFamily family;
  int level = 1;
};

using BasisNorm = std::variant<AmbientL1Norm, AmbientSupNorm, FamilyLevelNorm>;

double basis_norm_eval(const BasisNorm& norm, const SparsePoint& x);

enum class BasisMethod { OrthantExact, GridBruteForce };

struct OrthantValue {
  std::vector<int> signs;  // one per vector, first entry +1
  double value = 0.0;
};

/// The lower bound constant M = min { p(sum a_i x_i) : sum |a_i| = 1 }.
/// M > 0 certifies the vectors dominate the l1 basis under p with that
/// constant; M = 0 exhibits a normalized combination p cannot see.
struct BasisConstantResult {
  double value = 0.0;
  std::vector<double> argmin;
  BasisMethod method = BasisMethod::OrthantExact;
  bool rank_deficient = false;         // kernel shortcut produced the argmin
  std::vector<OrthantValue> orthants;  // per-orthant optima in exact mode
};

/// Exact mode: a kernel test first (rank-deficient systems give M = 0 with
/// an exact witness), then one linear program per sign orthant. Throws
/// BudgetError when the vector count exceeds exact_cap and the kernel
/// shortcut does not apply.
BasisConstantResult basis_constant(const std::vector<SparsePoint>& vectors,
                                   const BasisNorm& norm, int exact_cap = 12);

/// Brute force over the coefficient grid with the given step; approximate
/// but cap-free.
BasisConstantResult basis_constant_grid(
    const std::vector<SparsePoint>& vectors, const BasisNorm& norm,
    double step);

struct DichotomyProfile {
  std::vector<int> horizons;
  std::vector<std::vector<double>> constants;  // [horizon][level - 1]
  std::vector<std::string> verdicts;           // per level
  double threshold = 0.01;
};

/// Lower-bound constants of sequence prefixes across family levels; the
/// verdict per level says whether the constants stay above the threshold
/// ("l1-like") or decay below it ("decayed").
DichotomyProfile ell1_profile(const std::vector<SparsePoint>& sequence,
                              const SeminormFamily& family,
                              const std::vector<int>& horizons,
                              double threshold = 0.01, int exact_cap = 12);

struct OscillationReport {
  Functional functional;
  double oscillation = 0.0;
  bool within = true;
};

/// Tail oscillation sup_{j,k >= tail_start} |<f, x_j - x_k>| per
/// functional; tail_start is 1-based.
std::vector<OscillationReport> weak_cauchy_check(
    const std::vector<SparsePoint>& sequence,
    std::span<const Functional> functionals, int tail_start, double tol);

struct RefuteResult {
  Functional functional;
  double oscillation = 0.0;
};

/// Searches sign functionals (periodic patterns up to period 8, then
/// greedy local flips over the support union) maximizing the oscillation
/// over the first `horizon` elements.
RefuteResult weak_cauchy_refute(const std::vector<SparsePoint>& sequence,
                                int horizon);

}  // namespace afpp
