#include "afpp/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "afpp/simplex_lp.hpp"

namespace afpp {

namespace {

std::vector<int> support_union(const std::vector<SparsePoint>& points) {
  std::set<int> indices;
  for (const auto& p : points) {
    for (const auto& [i, v] : p.entries()) indices.insert(i);
  }
  return {indices.begin(), indices.end()};
}

bool is_unit_basis(const SparsePoint& p) {
  return p.support_size() == 1 && p.entries().begin()->second == 1.0;
}

}  // namespace

ConvexBody::ConvexBody(std::vector<SparsePoint> generators,
                       BodyStructure structure, bool closed_hull)
    : generators_(std::move(generators)),
      structure_(structure),
      closed_hull_(closed_hull) {
  if (generators_.empty()) {
    throw std::invalid_argument("convex body needs at least one generator");
  }
  if (std::holds_alternative<SimplexFace>(structure_)) {
    std::set<int> seen;
    for (const auto& g : generators_) {
      if (!is_unit_basis(g)) {
        throw std::invalid_argument(
            "simplex face generators must be unit basis vectors");
      }
      if (!seen.insert(g.entries().begin()->first).second) {
        throw std::invalid_argument("simplex face generators must be distinct");
      }
    }
    vertices_ = generators_;
  } else if (const auto* cap = std::get_if<PositiveConeCap>(&structure_)) {
    if (!(cap->bound > 0.0)) {
      throw std::invalid_argument("cone cap bound must be positive");
    }
    vertices_.push_back(SparsePoint{});
    for (int i : support_union(generators_)) {
      SparsePoint v;
      v.set(i, cap->bound);
      vertices_.push_back(std::move(v));
    }
  } else {
    vertices_ = generators_;
  }
  frame_ = support_union(vertices_);
  for (const auto& v : vertices_) {
    norm_bound_ = std::max(norm_bound_, v.l1_norm());
  }
}

ConvexBody ConvexBody::simplex_face(const std::vector<int>& indices) {
  std::vector<SparsePoint> gens;
  gens.reserve(indices.size());
  for (int i : indices) gens.push_back(SparsePoint::basis(i));
  return ConvexBody(std::move(gens), SimplexFace{});
}

ConvexBody ConvexBody::positive_cone_cap(const std::vector<int>& frame,
                                         double bound) {
  std::vector<SparsePoint> gens;
  gens.reserve(frame.size());
  for (int i : frame) gens.push_back(SparsePoint::basis(i));
  return ConvexBody(std::move(gens), PositiveConeCap{bound});
}

SparsePoint ConvexBody::combine(std::span<const double> coefficients) const {
  if (coefficients.size() != vertices_.size()) {
    throw std::invalid_argument("coefficient count must match vertex count");
  }
  SparsePoint out;
  for (std::size_t q = 0; q < vertices_.size(); ++q) {
    if (coefficients[q] != 0.0) out.add_scaled(vertices_[q], coefficients[q]);
  }
  return out;
}

SparsePoint ConvexBody::barycenter() const {
  std::vector<double> uniform(vertices_.size(),
                              1.0 / static_cast<double>(vertices_.size()));
  return combine(uniform);
}

namespace {

// Reconstruction program over the frame J and vertex count k:
// min sum(s+ + s-) over lambda >= 0, s >= 0
// s.t. sum_q lambda_q v_q(j) - s+_j + s-_j = x(j) for j in J, sum lambda = 1.
// Optimal value is the l1 distance from x to the hull; the equality duals
// y_j recover a separating functional when the distance is positive.
struct HullProgram {
  std::vector<int> coords;  // frame u support(x)
  LpProblem lp;
};

HullProgram build_hull_program(const ConvexBody& body, const SparsePoint& x) {
  HullProgram prog;
  std::set<int> coord_set(body.frame().begin(), body.frame().end());
  for (const auto& [i, v] : x.entries()) coord_set.insert(i);
  prog.coords.assign(coord_set.begin(), coord_set.end());

  const auto& verts = body.vertices();
  const std::size_t k = verts.size();
  const std::size_t m = prog.coords.size();
  const std::size_t nvars = k + 2 * m;

  prog.lp.rows.assign(m + 1, std::vector<double>(nvars, 0.0));
  prog.lp.rhs.assign(m + 1, 0.0);
  prog.lp.cost.assign(nvars, 0.0);

  std::map<int, std::size_t> row_of;
  for (std::size_t r = 0; r < m; ++r) row_of[prog.coords[r]] = r;

  for (std::size_t q = 0; q < k; ++q) {
    for (const auto& [i, v] : verts[q].entries()) {
      prog.lp.rows[row_of[i]][q] = v;
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    prog.lp.rows[r][k + 2 * r] = -1.0;      // s+
    prog.lp.rows[r][k + 2 * r + 1] = 1.0;   // s-
    prog.lp.cost[k + 2 * r] = 1.0;
    prog.lp.cost[k + 2 * r + 1] = 1.0;
    prog.lp.rhs[r] = x.at(prog.coords[r]);
  }
  for (std::size_t q = 0; q < k; ++q) prog.lp.rows[m][q] = 1.0;
  prog.lp.rhs[m] = 1.0;
  return prog;
}

}  // namespace

MembershipResult membership(const ConvexBody& body, const SparsePoint& x,
                            double tol) {
  if (tol < 0.0) throw std::invalid_argument("membership tol must be >= 0");

  if (body.is_simplex_face()) {
    // Coordinates on the face are the coefficients; off-frame mass and
    // sum drift are exactly the reconstruction error.
    const auto& verts = body.vertices();
    std::map<int, std::size_t> slot;
    for (std::size_t q = 0; q < verts.size(); ++q) {
      slot[verts[q].entries().begin()->first] = q;
    }
    std::vector<double> coeffs(verts.size(), 0.0);
    double off_mass = 0.0;
    double neg_mass = 0.0;
    double on_sum = 0.0;
    for (const auto& [i, v] : x.entries()) {
      auto it = slot.find(i);
      if (it == slot.end()) {
        off_mass += std::abs(v);
      } else if (v < 0.0) {
        neg_mass += -v;
      } else {
        coeffs[it->second] = v;
        on_sum += v;
      }
    }
    double drift = std::abs(on_sum - 1.0);
    if (off_mass + neg_mass + drift <= tol && on_sum > 0.0) {
      for (auto& c : coeffs) c /= on_sum;
      return Inside{std::move(coeffs), off_mass + neg_mass + drift};
    }
    // fall through to the program for a proper witness
  }

  auto prog = build_hull_program(body, x);
  LpResult sol = solve_lp(prog.lp);
  if (sol.status != LpStatus::Optimal) {
    throw std::runtime_error("membership program did not solve");
  }

  const std::size_t k = body.vertices().size();
  if (sol.objective <= tol) {
    std::vector<double> coeffs(sol.x.begin(), sol.x.begin() + k);
    double sum = 0.0;
    for (auto& c : coeffs) {
      if (c < 0.0) c = 0.0;
      sum += c;
    }
    if (sum <= 0.0) throw std::runtime_error("degenerate membership solution");
    for (auto& c : coeffs) c /= sum;
    return Inside{std::move(coeffs), std::max(sol.objective, 0.0)};
  }

  // Equality duals y satisfy |y_j| <= 1, y.v_q + mu <= 0 per vertex and
  // y.x + mu = distance, so y separates x from the hull by the distance.
  std::map<int, double> head;
  for (std::size_t r = 0; r < prog.coords.size(); ++r) {
    double y = sol.duals[r];
    if (std::abs(y) > 1e-13) head[prog.coords[r]] = y;
  }
  return Outside{Functional(std::move(head), TailZero{}), sol.objective};
}

double hull_distance(const ConvexBody& body, const SparsePoint& x) {
  auto res = membership(body, x, 0.0);
  if (const auto* in = std::get_if<Inside>(&res)) return in->error;
  return std::get<Outside>(res).margin;
}

}  // namespace afpp
