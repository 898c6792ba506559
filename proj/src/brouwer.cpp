#include "afpp/brouwer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "afpp/errors.hpp"

namespace afpp {

SimplexPoint SimplexPoint::from_coords(std::vector<double> coords,
                                       double drift_tol) {
  if (coords.empty()) {
    throw std::invalid_argument("simplex point needs at least one coordinate");
  }
  double sum = 0.0;
  for (double& c : coords) {
    if (c < 0.0) {
      if (c < -drift_tol) {
        throw std::invalid_argument("coordinate below the simplex");
      }
      c = 0.0;
    }
    sum += c;
  }
  if (std::abs(sum - 1.0) > drift_tol * std::max(1.0, sum)) {
    throw std::invalid_argument("coordinates do not sum to one");
  }
  for (double& c : coords) c /= sum;
  return SimplexPoint{std::move(coords)};
}

namespace {

using Coords = std::vector<double>;

SimplexPoint eval_checked(const SimplexMap& map, const SimplexPoint& p,
                          SearchStats& stats) {
  SimplexPoint g = map.eval(p);
  ++stats.map_evaluations;
  if (static_cast<int>(g.coords.size()) != map.dimension + 1) {
    throw std::runtime_error("simplex map returned wrong arity");
  }
  return g;
}

double sup_dist(const Coords& a, const Coords& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

double cell_diameter(const std::vector<Coords>& cell) {
  double d = 0.0;
  for (std::size_t a = 0; a < cell.size(); ++a) {
    for (std::size_t b = a + 1; b < cell.size(); ++b) {
      d = std::max(d, sup_dist(cell[a], cell[b]));
    }
  }
  return d;
}

// Descending cell search over the barycentric subdivision. Shared
// subdivision vertices are averaged over the lexicographically sorted
// source set so equal vertices are bit-identical across parent cells.
struct Search {
  const SimplexMap& map;
  SearchStats& stats;
  long long cells_left;
  std::map<Coords, int> label_cache;

  bool budget_hit = false;
  bool found = false;
  std::vector<Coords> cell_out;
  std::vector<int> labels_out;
  Coords exact_out;  // nonempty when an exactly fixed vertex was met

  Search(const SimplexMap& m, SearchStats& s, long long budget)
      : map(m), stats(s), cells_left(budget) {}

  int label_of(const Coords& v) {
    auto it = label_cache.find(v);
    if (it != label_cache.end()) return it->second;
    SimplexPoint g = eval_checked(map, SimplexPoint{v}, stats);
    int label = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] > 0.0 && g.coords[i] < v[i]) {
        label = static_cast<int>(i);
        break;
      }
    }
    label_cache.emplace(v, label);
    return label;
  }

  static Coords barycenter_of(std::vector<const Coords*> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Coords* a, const Coords* b) { return *a < *b; });
    Coords out(pts.front()->size(), 0.0);
    for (const Coords* p : pts) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += (*p)[i];
    }
    for (double& c : out) c /= static_cast<double>(pts.size());
    return out;
  }

  // Returns true when traversal must stop (found, exact, or budget).
  bool run(const std::vector<Coords>& cell, int remaining_depth) {
    ++stats.cells_visited;
    if (--cells_left < 0) {
      budget_hit = true;
      return true;
    }
    if (remaining_depth == 0) {
      unsigned mask = 0;
      std::vector<int> labels(cell.size());
      for (std::size_t k = 0; k < cell.size(); ++k) {
        int l = label_of(cell[k]);
        if (l < 0) {
          exact_out = cell[k];
          return true;
        }
        labels[k] = l;
        mask |= 1u << l;
      }
      if (mask == (1u << cell.size()) - 1u) {
        found = true;
        cell_out = cell;
        labels_out = std::move(labels);
        return true;
      }
      return false;
    }
    const std::size_t n = cell.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Coords> child(n);
      std::vector<const Coords*> prefix;
      prefix.reserve(n);
      for (std::size_t k = 0; k < n; ++k) {
        prefix.push_back(&cell[perm[k]]);
        child[k] = barycenter_of(prefix);
      }
      if (run(child, remaining_depth - 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }
};

std::vector<Coords> root_cell(int dimension) {
  std::vector<Coords> cell(dimension + 1, Coords(dimension + 1, 0.0));
  for (int i = 0; i <= dimension; ++i) cell[i][i] = 1.0;
  return cell;
}

// Damped and averaged iteration from a start point; keeps the best
// residual seen in (best_point, best_res). Returns map evaluations spent.
long long polish(const SimplexMap& map, SearchStats& stats,
                 const SimplexPoint& start, long long max_evals, double target,
                 SimplexPoint& best_point, double& best_res) {
  const long long before = stats.map_evaluations;
  const std::size_t n = start.coords.size();
  static constexpr double kDamping[] = {1.0, 0.5, 0.25};

  auto renormalize = [n](Coords& c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] < 0.0) c[i] = 0.0;
      sum += c[i];
    }
    for (std::size_t i = 0; i < n; ++i) c[i] /= sum;
  };

  auto consider = [&](const Coords& c) {
    SimplexPoint p{c};
    SimplexPoint g = eval_checked(map, p, stats);
    double res = sup_dist(c, g.coords);
    if (res < best_res) {
      best_res = res;
      best_point = p;
    }
    return g;
  };

  for (double t : kDamping) {
    Coords x = start.coords;
    Coords avg = x;
    long long per_mode = max_evals / 3 + 1;
    for (long long k = 1; k <= per_mode; ++k) {
      if (stats.map_evaluations - before >= max_evals) break;
      SimplexPoint g = consider(x);
      if (best_res <= target) return stats.map_evaluations - before;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = (1.0 - t) * x[i] + t * g.coords[i];
        avg[i] += (x[i] - avg[i]) / static_cast<double>(k + 1);
      }
      renormalize(x);
      renormalize(avg);
      if (k % 16 == 0) {
        consider(avg);
        if (best_res <= target) return stats.map_evaluations - before;
      }
    }
    consider(avg);
    if (best_res <= target) break;
  }
  return stats.map_evaluations - before;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double residual_sup(const SimplexMap& map, const SimplexPoint& p) {
  SearchStats scratch;
  SimplexPoint g = eval_checked(map, p, scratch);
  return sup_dist(p.coords, g.coords);
}

SimplexPoint sperner_search(const SimplexMap& map, int depth,
                            long long cell_budget, SearchStats* stats,
                            SpernerCell* certificate) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (map.dimension < 0) throw std::invalid_argument("negative dimension");
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  st.max_depth = std::max(st.max_depth, depth);

  Search search(map, st, cell_budget);
  search.run(root_cell(map.dimension), depth);
  if (search.budget_hit) {
    throw BudgetError("sperner search exceeded the cell budget");
  }
  if (!search.exact_out.empty()) {
    if (certificate) {
      certificate->vertices = {search.exact_out};
      certificate->labels = {-1};
      certificate->depth = depth;
    }
    return SimplexPoint{search.exact_out};
  }
  if (!search.found) {
    // A completely labeled cell exists at every depth for this labeling;
    // reaching this line means the map broke the simplex contract.
    throw std::runtime_error("subdivision exhausted without a labeled cell");
  }
  if (certificate) {
    certificate->vertices = search.cell_out;
    certificate->labels = search.labels_out;
    certificate->depth = depth;
  }
  std::vector<const Coords*> all;
  for (const auto& v : search.cell_out) all.push_back(&v);
  return SimplexPoint{Search::barycenter_of(all)};
}

BrouwerResult fixed_point(const SimplexMap& map, double tol,
                          long long work_budget) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  BrouwerResult out;
  SearchStats& st = out.stats;
  const int d = map.dimension;
  const std::size_t n = static_cast<std::size_t>(d) + 1;

  auto work_used = [&]() { return st.cells_visited + st.map_evaluations; };
  auto work_left = [&]() { return work_budget - work_used(); };

  out.point = SimplexPoint{Coords(n, 1.0 / static_cast<double>(n))};
  out.residual = residual_sup(map, out.point);
  ++st.map_evaluations;
  if (out.residual <= tol || d == 0) {
    out.status = out.residual <= tol ? SolveStatus::Converged
                                     : SolveStatus::BudgetExceeded;
    return out;
  }

  polish(map, st, out.point, std::min<long long>(work_left(), 1200), tol * 0.5,
         out.point, out.residual);

  const double children = factorial(d + 1);  // (d+1)! children per cell
  for (int depth = 1; out.residual > tol && work_left() > 0; ++depth) {
    double projected = 1.0;
    double total = 1.0;
    for (int t = 0; t < depth; ++t) {
      projected *= children;
      total += projected;
      if (total > 1e18) break;
    }
    if (total > static_cast<double>(work_left())) break;

    Search search(map, st, work_left());
    st.max_depth = std::max(st.max_depth, depth);
    search.run(root_cell(d), depth);
    if (search.budget_hit) break;

    if (!search.exact_out.empty()) {
      out.point = SimplexPoint{search.exact_out};
      out.residual = 0.0;
      break;
    }
    if (!search.found) break;

    out.certificate = SpernerCell{search.cell_out, search.labels_out, depth};
    std::vector<Coords> cell = search.cell_out;

    // Zoom: keep subdividing the found cell once per step. The labeling
    // loses its boundary guarantee off the standard simplex, so a miss
    // just ends the zoom and polishing takes over.
    while (cell_diameter(cell) > tol && work_left() > 1024) {
      Search zoom(map, st, work_left());
      zoom.run(cell, 1);
      if (zoom.budget_hit || !zoom.exact_out.empty() || !zoom.found) {
        if (!zoom.exact_out.empty()) {
          out.point = SimplexPoint{zoom.exact_out};
          out.residual = 0.0;
        }
        break;
      }
      cell = zoom.cell_out;
    }
    if (out.residual == 0.0) break;

    std::vector<const Coords*> all;
    for (const auto& v : cell) all.push_back(&v);
    SimplexPoint zoomed{Search::barycenter_of(all)};
    double res = residual_sup(map, zoomed);
    ++st.map_evaluations;
    if (res < out.residual) {
      out.residual = res;
      out.point = zoomed;
    }
    polish(map, st, zoomed, std::min<long long>(work_left(), 4000), tol * 0.5,
           out.point, out.residual);
  }

  if (out.residual > tol && work_left() > 0) {
    polish(map, st, out.point, work_left(), tol * 0.5, out.point,
           out.residual);
  }
  out.status = out.residual <= tol ? SolveStatus::Converged
                                   : SolveStatus::BudgetExceeded;
  return out;
}

}  // namespace afpp
