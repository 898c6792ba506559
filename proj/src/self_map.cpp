#include "afpp/self_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace afpp {

namespace {

SparsePoint shift_point(const SparsePoint& x, const std::vector<int>& frame,
                        const std::vector<double>* weights) {
  std::map<int, std::size_t> pos;
  for (std::size_t t = 0; t < frame.size(); ++t) pos[frame[t]] = t;
  SparsePoint out;
  for (const auto& [i, v] : x.entries()) {
    auto it = pos.find(i);
    if (it == pos.end()) {
      throw std::domain_error("shift: point leaves the body frame");
    }
    const std::size_t t = it->second;
    const double w = weights ? (*weights)[t] : 1.0;
    const int dest = frame[(t + 1) % frame.size()];
    if (w * v != 0.0) out.set(dest, out.at(dest) + w * v);
  }
  return out;
}

bool same_body(const ConvexBody& a, const ConvexBody& b) {
  if (a.structure().index() != b.structure().index()) return false;
  if (a.vertices().size() != b.vertices().size()) return false;
  for (std::size_t q = 0; q < a.vertices().size(); ++q) {
    if (!(a.vertices()[q] == b.vertices()[q])) return false;
  }
  return true;
}

// On a face the vertex coefficients are the coordinates, so coefficient
// differences sum to zero and the modulus is half the image diameter.
double half_image_diameter(const std::vector<SparsePoint>& images) {
  double m = 0.0;
  for (std::size_t q = 0; q < images.size(); ++q) {
    for (std::size_t r = q + 1; r < images.size(); ++r) {
      m = std::max(m, l1_distance(images[q], images[r]));
    }
  }
  return 0.5 * m;
}

// Largest image-to-vertex displacement ratio; exact on faces where vertex
// coefficients are coordinates, an estimate on general hulls.
double pairwise_ratio(const std::vector<SparsePoint>& vertices,
                      const std::vector<SparsePoint>& images) {
  double ratio = 0.0;
  for (std::size_t q = 0; q < vertices.size(); ++q) {
    for (std::size_t r = q + 1; r < vertices.size(); ++r) {
      const double dv = l1_distance(vertices[q], vertices[r]);
      if (dv < 1e-12) continue;
      ratio = std::max(ratio, l1_distance(images[q], images[r]) / dv);
    }
  }
  return ratio;
}

}  // namespace

SelfMap::SelfMap(Kind kind, std::string kind_name, ConvexBody domain,
                 std::vector<SparsePoint> vertex_images, double lipschitz)
    : kind_(kind),
      kind_name_(std::move(kind_name)),
      domain_(std::make_shared<const ConvexBody>(std::move(domain))),
      vertex_images_(std::move(vertex_images)),
      lipschitz_(lipschitz) {
  if (vertex_images_.size() != domain_->vertices().size()) {
    throw std::invalid_argument("self map needs one image per vertex");
  }
  // The map is affine, so the body is invariant iff every vertex lands
  // inside the (closed) hull.
  for (const auto& img : vertex_images_) {
    auto res = membership(*domain_, img, 1e-7);
    if (std::holds_alternative<Outside>(res)) {
      throw std::invalid_argument(
          "self map rejected: a vertex image escapes the body");
    }
  }
}

SelfMap SelfMap::constant(ConvexBody domain, SparsePoint value) {
  std::vector<SparsePoint> images(domain.vertices().size(), value);
  return SelfMap(Kind::Constant, "constant", std::move(domain),
                 std::move(images), 0.0);
}

SelfMap SelfMap::affine(ConvexBody domain, std::vector<SparsePoint> images) {
  if (std::holds_alternative<PositiveConeCap>(domain.structure())) {
    throw std::invalid_argument(
        "affine maps take one image per generator; cone caps have extra "
        "canonical vertices, use a hull body instead");
  }
  if (images.size() != domain.generators().size()) {
    throw std::invalid_argument("affine map needs one image per generator");
  }
  double lip = domain.is_simplex_face()
                   ? half_image_diameter(images)
                   : pairwise_ratio(domain.vertices(), images);
  return SelfMap(Kind::Affine, "affine", std::move(domain), std::move(images),
                 lip);
}

SelfMap SelfMap::shift(ConvexBody domain) {
  std::vector<SparsePoint> images;
  images.reserve(domain.vertices().size());
  for (const auto& v : domain.vertices()) {
    images.push_back(shift_point(v, domain.frame(), nullptr));
  }
  return SelfMap(Kind::Shift, "shift", std::move(domain), std::move(images),
                 1.0);
}

SelfMap SelfMap::weighted_shift(ConvexBody domain,
                                std::vector<double> weights) {
  if (weights.size() != domain.frame().size()) {
    throw std::invalid_argument(
        "weighted shift needs one weight per frame position");
  }
  std::vector<SparsePoint> images;
  images.reserve(domain.vertices().size());
  for (const auto& v : domain.vertices()) {
    images.push_back(shift_point(v, domain.frame(), &weights));
  }
  double lip = 0.0;
  for (double w : weights) lip = std::max(lip, std::abs(w));
  return SelfMap(Kind::WeightedShift, "weighted-shift", std::move(domain),
                 std::move(images), lip);
}

SelfMap SelfMap::composition(std::vector<SelfMap> stages) {
  if (stages.empty()) {
    throw std::invalid_argument("composition needs at least one stage");
  }
  for (std::size_t s = 1; s < stages.size(); ++s) {
    if (!same_body(stages[s].domain(), stages[0].domain())) {
      throw std::invalid_argument("composition stages must share the domain");
    }
  }
  std::vector<SparsePoint> images = stages[0].vertex_images();
  for (std::size_t s = 1; s < stages.size(); ++s) {
    for (auto& img : images) img = stages[s].apply(img);
  }
  double lip = 1.0;
  for (const auto& st : stages) lip *= st.lipschitz_l1();
  return SelfMap(Kind::Composition, "composition", stages[0].domain(),
                 std::move(images), lip);
}

SparsePoint SelfMap::apply_combination(
    std::span<const double> vertex_coeffs) const {
  if (vertex_coeffs.size() != vertex_images_.size()) {
    throw std::invalid_argument("coefficient count must match vertex count");
  }
  SparsePoint out;
  for (std::size_t q = 0; q < vertex_images_.size(); ++q) {
    if (vertex_coeffs[q] != 0.0) {
      out.add_scaled(vertex_images_[q], vertex_coeffs[q]);
    }
  }
  return out;
}

SparsePoint SelfMap::apply(const SparsePoint& x) const {
  auto res = membership(*domain_, x, 1e-6);
  if (const auto* in = std::get_if<Inside>(&res)) {
    return apply_combination(in->coefficients);
  }
  throw std::domain_error("self map applied outside its body");
}

}  // namespace afpp
