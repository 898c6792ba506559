#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afpp/convex_body.hpp"
#include "afpp/self_map.hpp"
#include "afpp/seminorm.hpp"
#include "afpp/sparse_point.hpp"

namespace afpp {

/// Weak neighborhood of a point in the positive cone whose conforming
/// points are automatically l1-close: a finite window set F with a
/// per-coordinate bound on F and a mass cap off F.
struct ConeNeighborhood {
  SparsePoint center;
  double epsilon = 0.0;
  std::vector<int> f_set;
  double u_bound = 0.0;      // |y - x| window per coordinate of F
  double v_bound = 0.0;      // cap on the mass of y off F
  double center_tail = 0.0;  // mass of the center off F, < epsilon / 4

  /// Nonnegative, inside the window on F, and under the mass cap off F.
  bool contains(const SparsePoint& y) const;
};

/// Picks the smallest window set F (largest coordinates first) holding all
/// but epsilon / 4 of the center's mass, then sizes the bounds so that
/// containment forces |y - x|_1 < epsilon.
ConeNeighborhood cone_neighborhood(const SparsePoint& center, double epsilon);

struct ConeVerification {
  int samples_accepted = 0;
  int samples_rejected = 0;
  double worst_distance = 0.0;   // max l1 distance over accepted samples
  double worst_f_gap = 0.0;      // max window mass sum_F |y - x|
  double worst_tail_gain = 0.0;  // max mass gained off F
  double center_tail = 0.0;
  bool all_within_epsilon = true;
  bool bounds_hold = true;  // the three partial estimates individually
  bool starved = false;
};

/// Samples conforming points of the neighborhood and confirms the chain
/// window mass + off-F gain + 2 * center tail < epsilon on every draw.
ConeVerification verify_cone_coincidence(const ConeNeighborhood& nbhd,
                                         int samples, std::uint64_t seed);

struct GalleryInstance {
  std::string name;
  std::string claim;
  std::optional<ConvexBody> body;
  std::optional<SelfMap> map;
  std::string enumeration_tag;  // empty when the instance has no stream
  std::vector<SparsePoint> sequence;
  std::optional<SeminormFamily> family;
};

const std::vector<std::string>& gallery_names();

/// Throws std::invalid_argument for unknown names.
GalleryInstance gallery_instance(const std::string& name);

struct GalleryOutcome {
  bool passed = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::string detail;
};

/// Reproduces the instance's claim numerically and reports the measured
/// quantities.
GalleryOutcome run_gallery_expectation(const GalleryInstance& instance,
                                       std::uint64_t seed);

}  // namespace afpp
