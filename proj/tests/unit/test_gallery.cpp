#include <doctest.h>

#include <cmath>

#include "afpp/gallery.hpp"

using namespace afpp;

TEST_CASE("window set of a geometric center") {
  SparsePoint x;
  for (int i = 1; i <= 20; ++i) x.set(i, std::pow(0.5, i));
  ConeNeighborhood nbhd = cone_neighborhood(x, 0.2);

  // Head must exceed total - 0.05; five leading terms are the first to do.
  CHECK(nbhd.f_set == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(nbhd.u_bound == doctest::Approx(0.01));
  const double tail = std::pow(0.5, 5) - std::pow(0.5, 20);
  CHECK(nbhd.center_tail == doctest::Approx(tail));
  CHECK(nbhd.v_bound == doctest::Approx(0.05 + tail));
}

TEST_CASE("containment checks window and mass cap") {
  SparsePoint x;
  for (int i = 1; i <= 20; ++i) x.set(i, std::pow(0.5, i));
  ConeNeighborhood nbhd = cone_neighborhood(x, 0.2);

  CHECK(nbhd.contains(x));

  SparsePoint y = x;
  y.set(1, x.at(1) + 0.009);
  CHECK(nbhd.contains(y));
  y.set(1, x.at(1) + 0.011);
  CHECK(!nbhd.contains(y));

  SparsePoint z = x;
  z.set(50, 0.06);  // above the off-window mass cap
  CHECK(!nbhd.contains(z));

  SparsePoint neg = x;
  neg.set(2, -0.001);
  CHECK(!nbhd.contains(neg));
}

TEST_CASE("conforming points of the zero center stay within epsilon") {
  ConeNeighborhood nbhd = cone_neighborhood(SparsePoint{}, 1.0);
  CHECK(nbhd.f_set == std::vector<int>{1});
  CHECK(nbhd.u_bound == doctest::Approx(0.25));
  CHECK(nbhd.v_bound == doctest::Approx(0.25));

  ConeVerification v = verify_cone_coincidence(nbhd, 500, 42);
  CHECK(v.samples_accepted == 500);
  CHECK(v.samples_rejected == 0);
  CHECK(v.all_within_epsilon);
  CHECK(v.bounds_hold);
  CHECK(!v.starved);
  CHECK(v.worst_distance < 0.5);  // window plus mass cap
}

TEST_CASE("verification on a spread center") {
  SparsePoint x;
  for (int i = 1; i <= 30; ++i) x.set(i, 1.0 / 60.0);
  ConeNeighborhood nbhd = cone_neighborhood(x, 0.1);
  ConeVerification v = verify_cone_coincidence(nbhd, 300, 7);
  CHECK(v.all_within_epsilon);
  CHECK(v.bounds_hold);
  CHECK(!v.starved);
  CHECK(v.worst_distance < 0.1);
}

TEST_CASE("neighborhood validation") {
  CHECK_THROWS_AS(cone_neighborhood(SparsePoint::basis(1), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      cone_neighborhood(SparsePoint::from_entries({{1, -0.5}}), 0.1),
      std::invalid_argument);
}

TEST_CASE("gallery catalog") {
  const auto& names = gallery_names();
  REQUIRE(names.size() == 4);
  for (const auto& name : names) {
    GalleryInstance g = gallery_instance(name);
    CHECK(g.name == name);
    CHECK(!g.claim.empty());
  }
  CHECK_THROWS_AS(gallery_instance("missing"), std::invalid_argument);

  GalleryInstance shift = gallery_instance("l1-simplex-shift-c0dual");
  REQUIRE(shift.body.has_value());
  REQUIRE(shift.map.has_value());
  CHECK(shift.enumeration_tag == "dyadic");

  GalleryInstance basis = gallery_instance("canonical-basis-weak");
  CHECK(basis.sequence.size() == 400);
  REQUIRE(basis.family.has_value());
}

TEST_CASE("compact instance expectation holds") {
  GalleryOutcome out =
      run_gallery_expectation(gallery_instance("compact-kyfan"), 1);
  CHECK(out.passed);
  CHECK(!out.metrics.empty());
}

TEST_CASE("norm convergent demo expectation holds") {
  GalleryOutcome out =
      run_gallery_expectation(gallery_instance("schur-demo"), 1);
  CHECK(out.passed);
}
