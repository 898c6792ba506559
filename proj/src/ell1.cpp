#include "afpp/ell1.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "afpp/errors.hpp"
#include "afpp/simplex_lp.hpp"

namespace afpp {

double basis_norm_eval(const BasisNorm& norm, const SparsePoint& x) {
  if (std::holds_alternative<AmbientL1Norm>(norm)) return x.l1_norm();
  if (std::holds_alternative<AmbientSupNorm>(norm)) return x.sup_norm();
  const auto& fl = std::get<FamilyLevelNorm>(norm);
  return fl.family.eval(fl.level, x);
}

namespace {

// Every supported norm of a combination sum a_i x_i factors through rows
// R a: either max_r |(R a)_r| (sup type) or sum_r |(R a)_r| (l1 type).
struct NormRows {
  std::vector<std::vector<double>> rows;  // rows x n
  bool sup_type = false;
};

NormRows make_rows(const std::vector<SparsePoint>& vectors,
                   const BasisNorm& norm) {
  NormRows out;
  const std::size_t n = vectors.size();

  auto coordinate_rows = [&](int max_index, const SupPrefix* weights) {
    std::set<int> coords;
    for (const auto& x : vectors) {
      for (const auto& [i, v] : x.entries()) {
        if (max_index <= 0 || i <= max_index) coords.insert(i);
      }
    }
    for (int c : coords) {
      std::vector<double> row(n, 0.0);
      double w = 1.0;
      if (weights) {
        const auto& ws = weights->weights;
        w = c <= static_cast<int>(ws.size()) ? ws[c - 1] : ws.back();
      }
      for (std::size_t i = 0; i < n; ++i) row[i] = w * vectors[i].at(c);
      out.rows.push_back(std::move(row));
    }
  };

  if (std::holds_alternative<AmbientL1Norm>(norm)) {
    out.sup_type = false;
    coordinate_rows(0, nullptr);
    return out;
  }
  if (std::holds_alternative<AmbientSupNorm>(norm)) {
    out.sup_type = true;
    coordinate_rows(0, nullptr);
    return out;
  }
  const auto& fl = std::get<FamilyLevelNorm>(norm);
  const auto& family = fl.family;
  if (fl.level < 1 || fl.level > family.levels()) {
    throw std::out_of_range("family level out of range");
  }
  if (std::holds_alternative<Ell1Prefix>(family.kind())) {
    out.sup_type = false;
    coordinate_rows(fl.level, nullptr);
    return out;
  }
  if (const auto* sp = std::get_if<SupPrefix>(&family.kind())) {
    out.sup_type = true;
    coordinate_rows(fl.level, sp);
    return out;
  }
  const auto& fs = std::get<FunctionalSup>(family.kind());
  out.sup_type = true;
  for (int b = 0; b < fl.level; ++b) {
    for (const auto& f : fs.batches[b]) {
      std::vector<double> row(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) row[i] = pair(f, vectors[i]);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

double rows_value(const NormRows& nr, std::span<const double> a) {
  double acc = 0.0;
  for (const auto& row : nr.rows) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += row[i] * a[i];
    if (nr.sup_type) {
      acc = std::max(acc, std::abs(s));
    } else {
      acc += std::abs(s);
    }
  }
  return acc;
}

// Null vector of the row system within tolerance, or empty. Gaussian
// elimination with partial pivoting; the first free column yields the
// witness.
std::vector<double> kernel_vector(const NormRows& nr, std::size_t n) {
  std::vector<std::vector<double>> a = nr.rows;  // m x n, copied
  const std::size_t m = a.size();
  if (m == 0) {
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    return v;
  }
  double scale = 0.0;
  for (const auto& row : a) {
    for (double x : row) scale = std::max(scale, std::abs(x));
  }
  if (scale == 0.0) {
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    return v;
  }
  const double tol = 1e-10 * scale;

  std::vector<int> pivot_row_of_col(n, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t best = rank;
    for (std::size_t r = rank + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    }
    if (std::abs(a[best][col]) <= tol) continue;
    std::swap(a[rank], a[best]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank) continue;
      const double factor = a[r][col] / a[rank][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[rank][c];
    }
    pivot_row_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  if (rank >= n) return {};

  std::size_t free_col = 0;
  while (free_col < n && pivot_row_of_col[free_col] >= 0) ++free_col;
  std::vector<double> v(n, 0.0);
  v[free_col] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    const int pr = pivot_row_of_col[col];
    if (pr < 0) continue;
    v[col] = -a[pr][free_col] / a[pr][col];
  }
  double l1 = 0.0;
  for (double x : v) l1 += std::abs(x);
  double lead = 0.0;
  for (double x : v) {
    if (x != 0.0) {
      lead = x;
      break;
    }
  }
  const double sign = lead < 0.0 ? -1.0 : 1.0;
  for (double& x : v) x = sign * x / l1;
  return v;
}

// Per-orthant program: substitute a = sign .* b with b on the unit
// simplex; both norm types become small equality-form programs.
double orthant_optimum(const NormRows& nr, const std::vector<int>& signs,
                       std::vector<double>& b_out) {
  const std::size_t n = signs.size();
  const std::size_t m = nr.rows.size();
  LpProblem lp;
  if (nr.sup_type) {
    // vars: b (n), t, slacks (2m); rows: +/- (R sb) - t + s = 0, sum b = 1
    const std::size_t nv = n + 1 + 2 * m;
    lp.rows.assign(2 * m + 1, std::vector<double>(nv, 0.0));
    lp.rhs.assign(2 * m + 1, 0.0);
    lp.cost.assign(nv, 0.0);
    lp.cost[n] = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        const double v = signs[i] * nr.rows[r][i];
        lp.rows[2 * r][i] = v;
        lp.rows[2 * r + 1][i] = -v;
      }
      lp.rows[2 * r][n] = -1.0;
      lp.rows[2 * r + 1][n] = -1.0;
      lp.rows[2 * r][n + 1 + 2 * r] = 1.0;
      lp.rows[2 * r + 1][n + 1 + 2 * r + 1] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) lp.rows[2 * m][i] = 1.0;
    lp.rhs[2 * m] = 1.0;
  } else {
    // vars: b (n), u (m), slacks (2m); rows: +/- (R sb) - u_r + s = 0
    const std::size_t nv = n + m + 2 * m;
    lp.rows.assign(2 * m + 1, std::vector<double>(nv, 0.0));
    lp.rhs.assign(2 * m + 1, 0.0);
    lp.cost.assign(nv, 0.0);
    for (std::size_t r = 0; r < m; ++r) lp.cost[n + r] = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        const double v = signs[i] * nr.rows[r][i];
        lp.rows[2 * r][i] = v;
        lp.rows[2 * r + 1][i] = -v;
      }
      lp.rows[2 * r][n + r] = -1.0;
      lp.rows[2 * r + 1][n + r] = -1.0;
      lp.rows[2 * r][n + m + 2 * r] = 1.0;
      lp.rows[2 * r + 1][n + m + 2 * r + 1] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) lp.rows[2 * m][i] = 1.0;
    lp.rhs[2 * m] = 1.0;
  }
  LpResult sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw std::runtime_error("orthant program did not solve");
  }
  b_out.assign(sol.x.begin(), sol.x.begin() + n);
  return std::max(0.0, sol.objective);
}

}  // namespace

BasisConstantResult basis_constant(const std::vector<SparsePoint>& vectors,
                                   const BasisNorm& norm, int exact_cap) {
  if (vectors.empty()) throw std::invalid_argument("need at least one vector");
  const std::size_t n = vectors.size();
  NormRows nr = make_rows(vectors, norm);

  BasisConstantResult res;
  res.method = BasisMethod::OrthantExact;

  std::vector<double> kernel = kernel_vector(nr, n);
  if (!kernel.empty()) {
    res.rank_deficient = true;
    res.argmin = std::move(kernel);
    res.value = rows_value(nr, res.argmin);
    return res;
  }

  if (static_cast<int>(n) > exact_cap) {
    throw BudgetError("exact basis constant capped; use the grid mode");
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> signs(n, 1);
  std::vector<double> b;
  const std::size_t combos = n >= 1 ? (1ull << (n - 1)) : 1;
  for (std::size_t mask = 0; mask < combos; ++mask) {
    for (std::size_t i = 1; i < n; ++i) {
      signs[i] = (mask >> (i - 1)) & 1 ? -1 : 1;
    }
    double val = orthant_optimum(nr, signs, b);
    res.orthants.push_back({signs, val});
    if (val < best) {
      best = val;
      res.argmin.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) res.argmin[i] = signs[i] * b[i];
    }
  }
  res.value = best;
  return res;
}

BasisConstantResult basis_constant_grid(
    const std::vector<SparsePoint>& vectors, const BasisNorm& norm,
    double step) {
  if (vectors.empty()) throw std::invalid_argument("need at least one vector");
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("step must be in (0, 1]");
  }
  const std::size_t n = vectors.size();
  const long long g = std::max<long long>(1, std::llround(1.0 / step));
  NormRows nr = make_rows(vectors, norm);

  BasisConstantResult res;
  res.method = BasisMethod::GridBruteForce;
  double best = std::numeric_limits<double>::infinity();

  std::vector<long long> parts(n, 0);
  std::vector<double> a(n, 0.0);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t pos,
                                                        long long left) {
    if (pos + 1 == n) {
      parts[pos] = left;
      // sign masks over nonzero parts, first nonzero kept positive
      std::vector<std::size_t> nz;
      for (std::size_t i = 0; i < n; ++i) {
        if (parts[i] != 0) nz.push_back(i);
      }
      const std::size_t flips = nz.empty() ? 0 : nz.size() - 1;
      for (std::size_t mask = 0; mask < (1ull << flips); ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
          a[i] = static_cast<double>(parts[i]) / static_cast<double>(g);
        }
        for (std::size_t t = 0; t < flips; ++t) {
          if ((mask >> t) & 1) a[nz[t + 1]] = -a[nz[t + 1]];
        }
        const double val = rows_value(nr, a);
        if (val < best) {
          best = val;
          res.argmin = a;
        }
      }
      return;
    }
    for (long long v = left; v >= 0; --v) {
      parts[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, g);
  res.value = best;
  return res;
}

DichotomyProfile ell1_profile(const std::vector<SparsePoint>& sequence,
                              const SeminormFamily& family,
                              const std::vector<int>& horizons,
                              double threshold, int exact_cap) {
  if (sequence.empty()) throw std::invalid_argument("empty sequence");
  DichotomyProfile prof;
  prof.threshold = threshold;
  for (int h : horizons) {
    if (h < 1 || h > static_cast<int>(sequence.size())) {
      throw std::out_of_range("horizon outside the sequence");
    }
    prof.horizons.push_back(h);
    std::vector<SparsePoint> prefix(sequence.begin(), sequence.begin() + h);
    std::vector<double> row;
    for (int level = 1; level <= family.levels(); ++level) {
      auto r = basis_constant(prefix, FamilyLevelNorm{family, level},
                              exact_cap);
      row.push_back(r.value);
    }
    prof.constants.push_back(std::move(row));
  }
  for (int level = 0; level < family.levels(); ++level) {
    const double last = prof.constants.back()[level];
    prof.verdicts.push_back(last >= threshold ? "l1-like" : "decayed");
  }
  return prof;
}

std::vector<OscillationReport> weak_cauchy_check(
    const std::vector<SparsePoint>& sequence,
    std::span<const Functional> functionals, int tail_start, double tol) {
  if (sequence.empty()) throw std::invalid_argument("empty sequence");
  if (tail_start < 1 || tail_start > static_cast<int>(sequence.size())) {
    throw std::out_of_range("tail start outside the sequence");
  }
  std::vector<OscillationReport> out;
  for (const auto& f : functionals) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t j = tail_start - 1; j < sequence.size(); ++j) {
      const double v = pair(f, sequence[j]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double osc = hi - lo;
    out.push_back({f, osc, osc <= tol});
  }
  return out;
}

RefuteResult weak_cauchy_refute(const std::vector<SparsePoint>& sequence,
                                int horizon) {
  if (sequence.empty()) throw std::invalid_argument("empty sequence");
  const int h =
      std::clamp(horizon, 1, static_cast<int>(sequence.size()));

  auto oscillation_of = [&](const Functional& f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int j = 0; j < h; ++j) {
      const double v = pair(f, sequence[j]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };

  Functional best = Functional::constant_tail(1.0);
  double best_osc = oscillation_of(best);
  for (int period = 1; period <= 8; ++period) {
    for (unsigned mask = 0; mask < (1u << period); ++mask) {
      std::vector<int> pattern(period);
      for (int t = 0; t < period; ++t) {
        pattern[t] = (mask >> t) & 1 ? -1 : 1;
      }
      Functional f = Functional::periodic(std::move(pattern));
      const double osc = oscillation_of(f);
      if (osc > best_osc) {
        best_osc = osc;
        best = f;
      }
    }
  }

  // Greedy local flips over the support union, seeded from the best
  // periodic pattern; pairings over the horizon only see these indices.
  std::set<int> support;
  for (int j = 0; j < h; ++j) {
    for (const auto& [i, v] : sequence[j].entries()) support.insert(i);
  }
  if (!support.empty()) {
    std::map<int, double> head;
    for (int i : support) {
      head[i] = best.coefficient(i) >= 0.0 ? 1.0 : -1.0;
    }
    Functional flipped(head, TailZero{});
    double flipped_osc = oscillation_of(flipped);
    for (int pass = 0; pass < 8; ++pass) {
      bool improved = false;
      for (int i : support) {
        head[i] = -head[i];
        Functional cand(head, TailZero{});
        const double osc = oscillation_of(cand);
        if (osc > flipped_osc) {
          flipped_osc = osc;
          flipped = cand;
          improved = true;
        } else {
          head[i] = -head[i];
        }
      }
      if (!improved) break;
    }
    if (flipped_osc > best_osc) {
      best_osc = flipped_osc;
      best = flipped;
    }
  }
  return {best, best_osc};
}

}  // namespace afpp
