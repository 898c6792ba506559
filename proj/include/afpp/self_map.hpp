#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "afpp/convex_body.hpp"
#include "afpp/sparse_point.hpp"

namespace afpp {

/// Continuous self-map of a convex body. Every built-in kind is affine on
/// the body, so the map is stored as the image list of the canonical
/// vertices; evaluation of any convex combination is an exact combination
/// of those images and needs no solver.
class SelfMap {
 public:
  enum class Kind { Constant, Affine, Shift, WeightedShift, Composition };

  static SelfMap constant(ConvexBody domain, SparsePoint value);

  /// images[q] is the image of generator q; each must lie in the body.
  static SelfMap affine(ConvexBody domain, std::vector<SparsePoint> images);

  /// Cyclic coordinate shift along the body frame.
  static SelfMap shift(ConvexBody domain);

  /// Cyclic shift with per-position damping weights (|w| <= 1 keeps the
  /// body invariant for faces and cone caps).
  static SelfMap weighted_shift(ConvexBody domain, std::vector<double> weights);

  /// Left-to-right composition; all stages share one domain.
  static SelfMap composition(std::vector<SelfMap> stages);

  Kind kind() const { return kind_; }
  const std::string& kind_name() const { return kind_name_; }
  const ConvexBody& domain() const { return *domain_; }

  /// Images of the canonical vertices, fixed at construction.
  const std::vector<SparsePoint>& vertex_images() const {
    return vertex_images_;
  }

  /// f(sum c_q v_q) = sum c_q f(v_q); exact and solver-free.
  SparsePoint apply_combination(std::span<const double> vertex_coeffs) const;

  /// Evaluates at a point of the body; resolves the point to vertex
  /// coefficients first (throws std::domain_error when x is outside).
  SparsePoint apply(const SparsePoint& x) const;

  /// An l1 Lipschitz modulus on the body: exact for coordinate kinds and
  /// faces, a pairwise displacement estimate for general hulls.
  double lipschitz_l1() const { return lipschitz_; }

 private:
  SelfMap(Kind kind, std::string kind_name, ConvexBody domain,
          std::vector<SparsePoint> vertex_images, double lipschitz);

  Kind kind_;
  std::string kind_name_;
  std::shared_ptr<const ConvexBody> domain_;
  std::vector<SparsePoint> vertex_images_;
  double lipschitz_;
};

}  // namespace afpp
