#pragma once

#include <span>
#include <variant>
#include <vector>

#include "afpp/functional.hpp"
#include "afpp/sparse_point.hpp"

namespace afpp {

// Structural flags refining how the generator list is read.
struct HullOnly {};

// Generators are distinct basis vectors; the body is the face of
// probability vectors over their indices.
struct SimplexFace {};

// Nonnegative vectors over the generator frame with coordinate sum <= bound.
struct PositiveConeCap {
  double bound = 1.0;
};

using BodyStructure = std::variant<HullOnly, SimplexFace, PositiveConeCap>;

/// Bounded convex set given by generators plus a structural flag.
/// Internally the body is canonicalized to a vertex list whose convex hull
/// is the set, so membership and map evaluation run over one representation.
class ConvexBody {
 public:
  ConvexBody(std::vector<SparsePoint> generators, BodyStructure structure,
             bool closed_hull = true);

  static ConvexBody hull(std::vector<SparsePoint> generators) {
    return ConvexBody(std::move(generators), HullOnly{});
  }

  static ConvexBody simplex_face(const std::vector<int>& indices);

  static ConvexBody positive_cone_cap(const std::vector<int>& frame,
                                      double bound);

  const std::vector<SparsePoint>& generators() const { return generators_; }
  const BodyStructure& structure() const { return structure_; }
  bool closed_hull() const { return closed_hull_; }

  /// Canonical vertex set: generators for hulls and simplex faces,
  /// {0} u {bound * e_i} for positive cone caps.
  const std::vector<SparsePoint>& vertices() const { return vertices_; }

  /// Sorted union of the vertex supports.
  const std::vector<int>& frame() const { return frame_; }

  /// Max l1 norm over vertices (the declared bound of the set).
  double norm_bound() const { return norm_bound_; }

  bool is_simplex_face() const {
    return std::holds_alternative<SimplexFace>(structure_);
  }

  /// Convex combination of the canonical vertices.
  SparsePoint combine(std::span<const double> coefficients) const;

  SparsePoint barycenter() const;

 private:
  std::vector<SparsePoint> generators_;
  BodyStructure structure_;
  bool closed_hull_;
  std::vector<SparsePoint> vertices_;
  std::vector<int> frame_;
  double norm_bound_ = 0.0;
};

struct Inside {
  std::vector<double> coefficients;  // over the canonical vertices
  double error = 0.0;                // l1 reconstruction error
};

struct Outside {
  Functional witness;  // pairs against x strictly above every vertex
  double margin = 0.0;  // l1 distance from x to the hull
};

using MembershipResult = std::variant<Inside, Outside>;

/// Decides hull membership within tol (l1 reconstruction error) via a
/// linear program; an Outside verdict carries a separating functional
/// recovered from the program's dual values.
MembershipResult membership(const ConvexBody& body, const SparsePoint& x,
                            double tol = 1e-9);

/// The l1 distance from x to the body (0 when inside).
double hull_distance(const ConvexBody& body, const SparsePoint& x);

}  // namespace afpp
