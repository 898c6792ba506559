#include "afpp/afp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "afpp/errors.hpp"

namespace afpp {

std::vector<double> PartitionOfUnity::weights(
    std::span<const double> barycentric) const {
  if (centers.empty()) throw std::logic_error("partition has no patches");
  std::vector<double> w(centers.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (centers[i].size() != barycentric.size()) {
      throw std::invalid_argument("partition center arity mismatch");
    }
    double dist = 0.0;
    for (std::size_t t = 0; t < barycentric.size(); ++t) {
      dist += std::abs(barycentric[t] - centers[i][t]);
    }
    w[i] = std::max(0.0, radii[i] - dist);
    total += w[i];
  }
  if (!(total > 0.0)) {
    throw std::logic_error("point escapes every partition patch");
  }
  for (double& x : w) x /= total;
  return w;
}

namespace {

// Everything the ladder needs, precomputed once: the map and the pairing
// family as dense operators on vertex-coefficient vectors.
struct Ctx {
  const ConvexBody* body;
  const SelfMap* map;
  std::span<const Functional> fns;
  std::size_t k = 0;                    // vertex count
  std::size_t n = 0;                    // functional count
  std::vector<std::vector<double>> M;   // M[q] = coefficients of f(vertex q)
  std::vector<std::vector<double>> P;   // P[j][q] = pair(fn_j, vertex q)
  double max_pair = 0.0;
};

Ctx make_ctx(const ConvexBody& body, const SelfMap& map,
             std::span<const Functional> fns) {
  Ctx ctx;
  ctx.body = &body;
  ctx.map = &map;
  ctx.fns = fns;
  ctx.k = body.vertices().size();
  ctx.n = fns.size();
  ctx.M.reserve(ctx.k);
  for (const auto& image : map.vertex_images()) {
    auto res = membership(body, image, 1e-7);
    const auto* in = std::get_if<Inside>(&res);
    if (!in) throw std::logic_error("vertex image escaped the body");
    ctx.M.push_back(in->coefficients);
  }
  ctx.P.assign(ctx.n, std::vector<double>(ctx.k, 0.0));
  for (std::size_t j = 0; j < ctx.n; ++j) {
    for (std::size_t q = 0; q < ctx.k; ++q) {
      ctx.P[j][q] = pair(fns[j], body.vertices()[q]);
      ctx.max_pair = std::max(ctx.max_pair, std::abs(ctx.P[j][q]));
    }
  }
  return ctx;
}

std::vector<double> f_step(const Ctx& ctx, std::span<const double> c) {
  std::vector<double> out(ctx.k, 0.0);
  for (std::size_t q = 0; q < ctx.k; ++q) {
    const double cq = c[q];
    if (cq == 0.0) continue;
    const auto& col = ctx.M[q];
    for (std::size_t r = 0; r < ctx.k; ++r) out[r] += col[r] * cq;
  }
  return out;
}

std::vector<double> phi_vals(const Ctx& ctx, std::span<const double> c) {
  std::vector<double> out(ctx.n, 0.0);
  for (std::size_t j = 0; j < ctx.n; ++j) {
    const auto& row = ctx.P[j];
    double s = 0.0;
    for (std::size_t q = 0; q < ctx.k; ++q) s += row[q] * c[q];
    out[j] = s;
  }
  return out;
}

double sup_dist(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

// Averaged-orbit burst length that plants a representative whose weak
// residual beats eps / 8 when the budget allows.
int burst_length(const Ctx& ctx, double eps, const EngineBudgets& budgets) {
  double needed = 16.0 * std::max(1.0, ctx.max_pair) / eps;
  needed = std::min(needed, static_cast<double>(budgets.orbit_burst));
  return std::max(64, static_cast<int>(std::ceil(needed)));
}

// Trajectory marks, descending so the best points claim net slots first.
std::vector<int> orbit_marks(int burst, std::size_t frame_size) {
  std::set<int, std::greater<int>> marks;
  for (int t = burst; t >= 4; t /= 2) marks.insert(t);
  marks.insert(2);
  marks.insert(1);
  if (frame_size > 0) {
    const int m = static_cast<int>(frame_size);
    if (burst >= m) marks.insert((burst / m) * m);  // full rotations align
  }
  return {marks.begin(), marks.end()};
}

// Emits f^t and the running average a_t at the marks, best-first.
void emit_orbit(const Ctx& ctx, std::vector<double> start,
                const std::vector<int>& marks,
                std::vector<std::vector<double>>& out, std::size_t cap) {
  std::vector<double> cur = std::move(start);
  std::vector<double> sum = cur;
  std::vector<std::vector<double>> at_t(marks.size());
  std::vector<std::vector<double>> avg_t(marks.size());
  const int maxt = marks.empty() ? 0 : marks.front();
  for (int t = 1; t <= maxt; ++t) {
    cur = f_step(ctx, cur);
    for (std::size_t r = 0; r < cur.size(); ++r) sum[r] += cur[r];
    for (std::size_t mi = 0; mi < marks.size(); ++mi) {
      if (marks[mi] == t) {
        at_t[mi] = cur;
        avg_t[mi] = sum;
        const double inv = 1.0 / static_cast<double>(t + 1);
        for (double& v : avg_t[mi]) v *= inv;
      }
    }
  }
  for (std::size_t mi = 0; mi < marks.size(); ++mi) {
    if (out.size() < cap && !at_t[mi].empty()) out.push_back(at_t[mi]);
    if (out.size() < cap && !avg_t[mi].empty()) out.push_back(avg_t[mi]);
  }
}

// Largest grid granularity whose simplex lattice stays under the cap.
int grid_granularity(std::size_t k, std::size_t cap) {
  if (k <= 1) return 0;
  int best = 0;
  for (int g = 1; g <= 64; ++g) {
    double count = 1.0;
    for (std::size_t i = 1; i < k; ++i) {
      count *= static_cast<double>(g + i) / static_cast<double>(i);
      if (count > static_cast<double>(cap)) break;
    }
    if (count > static_cast<double>(cap)) break;
    best = g;
  }
  return best;
}

void emit_grid(std::size_t k, int g, std::vector<std::vector<double>>& out,
               std::size_t cap) {
  if (g <= 0) return;
  std::vector<int> parts(k, 0);
  // lexicographic compositions of g into k parts
  auto emit = [&]() {
    std::vector<double> c(k);
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = static_cast<double>(parts[i]) / static_cast<double>(g);
    }
    out.push_back(std::move(c));
  };
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (out.size() >= cap) return;
    if (pos + 1 == k) {
      parts[pos] = left;
      emit();
      return;
    }
    for (int v = left; v >= 0 && out.size() < cap; --v) {
      parts[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, g);
}

struct GreedyNet {
  std::vector<std::size_t> owners;  // sample index backing each net point
  bool covered = true;
};

GreedyNet greedy_cover(const std::vector<std::vector<double>>& values,
                       double radius, int cap) {
  GreedyNet net;
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool covered = false;
    for (const auto& p : pts) {
      if (sup_dist(p, values[i]) < radius) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    if (static_cast<int>(pts.size()) >= cap) {
      net.covered = false;
      continue;
    }
    pts.push_back(values[i]);
    net.owners.push_back(i);
  }
  return net;
}

std::vector<std::vector<double>> collect_samples(
    const Ctx& ctx, double eps, const EngineBudgets& budgets,
    std::span<const std::vector<double>> extra) {
  const std::size_t cap = static_cast<std::size_t>(
      std::max(16, budgets.net_samples));
  std::vector<std::vector<double>> samples;
  samples.reserve(cap);

  for (const auto& c : extra) {
    if (c.size() != ctx.k) {
      throw std::invalid_argument("extra sample arity mismatch");
    }
    if (samples.size() < cap) samples.push_back(c);
  }

  const int burst = burst_length(ctx, eps, budgets);
  const auto marks = orbit_marks(burst, ctx.body->frame().size());
  std::vector<double> bary(ctx.k, 1.0 / static_cast<double>(ctx.k));
  emit_orbit(ctx, bary, marks, samples, cap);

  for (std::size_t q = 0; q < ctx.k && samples.size() < cap; ++q) {
    std::vector<double> c(ctx.k, 0.0);
    c[q] = 1.0;
    samples.push_back(std::move(c));
  }
  if (samples.size() < cap) samples.push_back(bary);

  const std::size_t grid_cap =
      std::min<std::size_t>(1024, cap > samples.size() ? cap - samples.size()
                                                       : 0);
  if (grid_cap > 0) {
    int g = grid_granularity(ctx.k, grid_cap);
    emit_grid(ctx.k, g, samples, samples.size() + grid_cap);
  }

  const std::size_t base = samples.size();
  for (std::size_t i = 0; i < base && samples.size() < cap; ++i) {
    samples.push_back(f_step(ctx, samples[i]));
  }
  return samples;
}

}  // namespace

NetData build_net(const ConvexBody& body, const SelfMap& map,
                  std::span<const Functional> functionals, double epsilon,
                  const EngineBudgets& budgets,
                  std::span<const std::vector<double>> extra_samples,
                  bool throw_on_budget) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (functionals.empty()) {
    throw std::invalid_argument("functional list must be nonempty");
  }
  Ctx ctx = make_ctx(body, map, functionals);

  auto samples = collect_samples(ctx, epsilon, budgets, extra_samples);
  std::vector<std::vector<double>> values;
  values.reserve(samples.size());
  for (const auto& c : samples) values.push_back(phi_vals(ctx, c));

  double radius = epsilon / 4.0;
  GreedyNet greedy = greedy_cover(values, radius, budgets.net_points);
  if (!greedy.covered) {
    radius = epsilon / 2.0 * (1.0 - 1e-9);
    greedy = greedy_cover(values, radius, budgets.net_points);
  }

  NetData net;
  net.epsilon = epsilon;
  net.functionals.assign(functionals.begin(), functionals.end());
  net.cover_radius = radius;
  net.sample_count = static_cast<int>(samples.size());
  net.covered_all_samples = greedy.covered;
  for (std::size_t owner : greedy.owners) {
    net.points.push_back(values[owner]);
    net.rep_coeffs.push_back(samples[owner]);
    net.reps.push_back(body.combine(samples[owner]));
  }
  if (throw_on_budget && !net.covered_all_samples) {
    throw BudgetError("net budget too small to certify sample coverage");
  }
  return net;
}

namespace {

std::vector<std::vector<double>> make_enrichment(const Ctx& ctx,
                                                 const std::vector<double>& z,
                                                 double eps,
                                                 const EngineBudgets& budgets) {
  std::vector<std::vector<double>> out;
  const std::size_t cap = 48;
  out.push_back(z);
  out.push_back(f_step(ctx, z));
  const int burst = burst_length(ctx, eps, budgets);
  emit_orbit(ctx, z, orbit_marks(burst, ctx.body->frame().size()), out, cap);
  return out;
}

}  // namespace

AfpReport approx_fixed_point(const ConvexBody& body, const SelfMap& map,
                             std::span<const Functional> functionals,
                             double epsilon, const EngineBudgets& budgets) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (functionals.empty()) {
    throw std::invalid_argument("functional list must be nonempty");
  }
  Ctx ctx = make_ctx(body, map, functionals);

  AfpReport report;
  report.epsilon = epsilon;
  double best_max = std::numeric_limits<double>::infinity();
  std::vector<double> best_coeffs;
  std::vector<std::vector<double>> enrich;

  // Success is always declared from residuals recomputed at the exact
  // point, never from solver-side estimates.
  auto consider = [&](const std::vector<double>& coeffs) {
    SparsePoint z = body.combine(coeffs);
    SparsePoint fz = map.apply_combination(coeffs);
    SparsePoint diff = z - fz;
    std::vector<double> residuals(ctx.n, 0.0);
    double max_res = 0.0;
    for (std::size_t j = 0; j < ctx.n; ++j) {
      residuals[j] = std::abs(pair(functionals[j], diff));
      max_res = std::max(max_res, residuals[j]);
    }
    if (max_res < best_max) {
      best_max = max_res;
      best_coeffs = coeffs;
      report.point = std::move(z);
      report.residuals = std::move(residuals);
    }
  };

  for (int rung = 0; rung < std::max(1, budgets.rungs); ++rung) {
    NetData net = build_net(body, map, functionals, epsilon, budgets, enrich,
                            /*throw_on_budget=*/false);
    const std::size_t L = net.reps.size();
    report.net_sizes.push_back(static_cast<int>(L));

    // Image values and nearest-point assignment z_x per patch.
    std::vector<std::vector<double>> image_vals(L);
    for (std::size_t i = 0; i < L; ++i) {
      image_vals[i] = phi_vals(ctx, f_step(ctx, net.rep_coeffs[i]));
    }
    std::vector<int> assigned(L, 0);
    for (std::size_t i = 0; i < L; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t p = 0; p < L; ++p) {
        double d = sup_dist(image_vals[i], net.points[p]);
        if (d < best) {
          best = d;
          assigned[i] = static_cast<int>(p);
        }
      }
    }

    // Hat partition over the representative simplex: one patch per
    // representative, radius 2 (the simplex l1 diameter), which makes the
    // weights exactly the barycentric coordinates and keeps the total
    // positive everywhere without a guard patch.
    PartitionOfUnity pou;
    pou.centers.assign(L, std::vector<double>(L, 0.0));
    for (std::size_t i = 0; i < L; ++i) pou.centers[i][i] = 1.0;
    pou.radii.assign(L, 2.0);
    pou.assigned_rep = assigned;
    report.cover_sizes.push_back(static_cast<int>(L));

    // A representative the net rounds onto itself is a candidate by
    // itself; when one beats epsilon the rung skips the simplex solve.
    std::size_t self_best = 0;
    double self_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < L; ++i) {
      const double d = sup_dist(image_vals[i], net.points[i]);
      if (d < self_gap) {
        self_gap = d;
        self_best = i;
      }
    }
    consider(net.rep_coeffs[self_best]);
    report.rungs_used = rung + 1;
    if (best_max < epsilon) break;

    std::vector<double> z_bary;
    if (L == 1) {
      z_bary = {1.0};
    } else {
      SimplexMap G;
      G.dimension = static_cast<int>(L) - 1;
      G.eval = [&pou, L](const SimplexPoint& p) {
        std::vector<double> w = pou.weights(p.coords);
        std::vector<double> out(L, 0.0);
        for (std::size_t i = 0; i < L; ++i) {
          out[pou.assigned_rep[i]] += w[i];
        }
        return SimplexPoint{std::move(out)};
      };
      const double tol_g = std::clamp(
          epsilon / (8.0 * std::max(1.0, ctx.max_pair) *
                     static_cast<double>(L)),
          1e-13, 1e-4);
      BrouwerResult b = fixed_point(G, tol_g, budgets.brouwer_work);
      report.brouwer.cells_visited += b.stats.cells_visited;
      report.brouwer.map_evaluations += b.stats.map_evaluations;
      report.brouwer.max_depth =
          std::max(report.brouwer.max_depth, b.stats.max_depth);
      z_bary = std::move(b.point.coords);
    }

    std::vector<double> z_coeffs(ctx.k, 0.0);
    for (std::size_t i = 0; i < L; ++i) {
      if (z_bary[i] == 0.0) continue;
      for (std::size_t r = 0; r < ctx.k; ++r) {
        z_coeffs[r] += z_bary[i] * net.rep_coeffs[i][r];
      }
    }

    consider(z_coeffs);
    if (best_max < epsilon) break;
    enrich = make_enrichment(ctx, best_coeffs, epsilon, budgets);
  }

  report.status =
      best_max < epsilon ? AfpStatus::Converged : AfpStatus::BudgetExceeded;
  auto mem = membership(body, report.point, 1e-6);
  if (const auto* in = std::get_if<Inside>(&mem)) {
    report.membership_error = in->error;
  } else {
    report.membership_error = std::get<Outside>(mem).margin;
  }
  return report;
}

SequenceReport afp_sequence(const ConvexBody& body, const SelfMap& map,
                            FunctionalEnumeration& enumeration, int stages,
                            const EngineBudgets& budgets) {
  if (stages < 1) throw std::invalid_argument("need at least one stage");
  SequenceReport seq;
  bool all_ok = true;
  for (int n = 1; n <= stages; ++n) {
    std::vector<Functional> fns = enumeration.prefix(n);
    AfpReport r = approx_fixed_point(body, map, fns,
                                     1.0 / static_cast<double>(n), budgets);
    all_ok = all_ok && r.status == AfpStatus::Converged;
    seq.points.push_back(r.point);
    seq.residuals.push_back(r.residuals);
    seq.stages.push_back(std::move(r));
  }
  seq.status = all_ok ? AfpStatus::Converged : AfpStatus::BudgetExceeded;
  return seq;
}

KyFanResult ky_fan_fixed_point(const ConvexBody& body, const SelfMap& map,
                               double tol, const EngineBudgets& budgets) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  std::vector<Functional> fns;
  for (int i : body.frame()) fns.push_back(Functional::coordinate(i));
  if (fns.empty()) throw std::invalid_argument("body frame is empty");

  KyFanResult out;
  double eps = tol / static_cast<double>(fns.size());
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 10; ++it) {
    AfpReport r = approx_fixed_point(body, map, fns, eps, budgets);
    SparsePoint fz = map.apply(r.point);
    double l1 = l1_distance(r.point, fz);
    out.refinements = it + 1;
    if (l1 < best) {
      best = l1;
      out.point = r.point;
      out.l1_residual = l1;
    }
    if (best <= tol) {
      out.status = AfpStatus::Converged;
      return out;
    }
    eps /= 4.0;
  }
  out.status = AfpStatus::BudgetExceeded;
  return out;
}

HullIterationResult invariant_separable_hull(const ConvexBody& body,
                                             const SelfMap& map,
                                             const SparsePoint& start,
                                             int steps, int generator_budget) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (std::holds_alternative<Outside>(membership(body, start, 1e-6))) {
    throw std::domain_error("start point lies outside the body");
  }
  HullIterationResult out;
  std::vector<SparsePoint> gens{start};
  out.steps.push_back({gens, 0.0});
  for (int s = 1; s <= steps; ++s) {
    ConvexBody hull_prev = ConvexBody::hull(gens);
    std::vector<SparsePoint> fresh;
    double gap = 0.0;
    for (const auto& g : gens) {
      SparsePoint img = map.apply(g);
      double d = hull_distance(hull_prev, img);
      if (d > 1e-9) {
        bool dup = false;
        for (const auto& h : fresh) {
          if (h == img) {
            dup = true;
            break;
          }
        }
        if (!dup) {
          fresh.push_back(img);
          gap = std::max(gap, d);
        }
      }
    }
    for (auto& p : fresh) gens.push_back(std::move(p));
    if (static_cast<int>(gens.size()) > generator_budget) {
      out.status = AfpStatus::BudgetExceeded;
      break;
    }
    out.steps.push_back({gens, gap});
  }
  return out;
}

}  // namespace afpp
