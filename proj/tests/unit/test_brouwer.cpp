#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "afpp/brouwer.hpp"
#include "afpp/errors.hpp"

using namespace afpp;

namespace {

SimplexMap swap_map() {
  SimplexMap m;
  m.dimension = 1;
  m.lipschitz = 1.0;
  m.eval = [](const SimplexPoint& p) {
    return SimplexPoint::from_coords({p.coords[1], p.coords[0]});
  };
  return m;
}

SimplexMap rotate3() {
  SimplexMap m;
  m.dimension = 2;
  m.lipschitz = 1.0;
  m.eval = [](const SimplexPoint& p) {
    return SimplexPoint::from_coords(
        {p.coords[2], p.coords[0], p.coords[1]});
  };
  return m;
}

double cell_diameter(const SpernerCell& cell) {
  double d = 0.0;
  for (std::size_t a = 0; a < cell.vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < cell.vertices.size(); ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < cell.vertices[a].size(); ++i) {
        s = std::max(s, std::abs(cell.vertices[a][i] - cell.vertices[b][i]));
      }
      d = std::max(d, s);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("simplex point validation") {
  auto p = SimplexPoint::from_coords({0.5, 0.5});
  CHECK(p.dimension() == 1);
  // Tiny negative drift is clamped and renormalized.
  auto q = SimplexPoint::from_coords({1.0 + 1e-13, -1e-13});
  CHECK(q.coords[1] == 0.0);
  CHECK(q.coords[0] == doctest::Approx(1.0));
  CHECK_THROWS(SimplexPoint::from_coords({0.7, 0.7}));
  CHECK_THROWS(SimplexPoint::from_coords({1.5, -0.5}));
}

TEST_CASE("identity map yields an exactly labeled vertex") {
  SimplexMap id;
  id.dimension = 2;
  id.eval = [](const SimplexPoint& p) { return p; };

  SearchStats stats;
  SpernerCell cert;
  SimplexPoint p = sperner_search(id, 3, 1000, &stats, &cert);
  CHECK(residual_sup(id, p) == 0.0);
  REQUIRE(cert.labels.size() == 1);
  CHECK(cert.labels[0] == -1);
}

TEST_CASE("swap map converges to the midpoint") {
  BrouwerResult r = fixed_point(swap_map(), 1e-6);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.residual <= 1e-6);
  CHECK(std::abs(r.point.coords[0] - 0.5) <= 1e-6);
}

TEST_CASE("rotation on the 2-simplex converges to the center") {
  BrouwerResult r = fixed_point(rotate3(), 1e-5);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.residual <= 1e-5);
  for (double c : r.point.coords) CHECK(std::abs(c - 1.0 / 3.0) <= 1e-4);
}

TEST_CASE("sperner cells are completely labeled and shrink with depth") {
  // Pull toward (1/3, 2/3): the fixed point avoids every dyadic
  // subdivision vertex, so the search must exhibit a labeled cell.
  SimplexMap m;
  m.dimension = 1;
  m.eval = [](const SimplexPoint& p) {
    return SimplexPoint::from_coords({0.5 * p.coords[0] + 0.5 / 3.0,
                                      0.5 * p.coords[1] + 0.5 * 2.0 / 3.0});
  };

  double prev = 2.0;
  for (int depth = 1; depth <= 4; ++depth) {
    SpernerCell cert;
    SimplexPoint p = sperner_search(m, depth, 100000, nullptr, &cert);
    (void)p;
    std::vector<int> labels = cert.labels;
    std::sort(labels.begin(), labels.end());
    CHECK(labels == std::vector<int>{0, 1});
    const double diam = cell_diameter(cert);
    CHECK(diam <= prev + 1e-15);
    prev = diam;
  }
  // Four barycentric subdivisions of a segment shrink cells to 2^-4.
  CHECK(prev <= std::pow(0.5, 4) + 1e-12);
}

TEST_CASE("cell budget exhaustion throws") {
  CHECK_THROWS_AS(sperner_search(swap_map(), 8, 2), BudgetError);
}

TEST_CASE("work budget exhaustion returns the best point seen") {
  // Damped rotation toward an off-center target: the start point is not
  // fixed and three evaluations cannot reach the tolerance.
  SimplexMap m;
  m.dimension = 2;
  m.eval = [](const SimplexPoint& p) {
    const std::vector<double> t = {0.7, 0.2, 0.1};
    std::vector<double> out(3);
    for (int i = 0; i < 3; ++i) {
      out[i] = 0.5 * p.coords[(i + 2) % 3] + 0.5 * t[i];
    }
    return SimplexPoint::from_coords(std::move(out), 1e-9);
  };
  BrouwerResult r = fixed_point(m, 1e-15, 3);
  CHECK(r.status == SolveStatus::BudgetExceeded);
  CHECK(r.residual <= 1.0);  // still a valid simplex point with a residual
  CHECK(r.point.dimension() == 2);
}

TEST_CASE("degenerate zero dimensional simplex") {
  SimplexMap m;
  m.dimension = 0;
  m.eval = [](const SimplexPoint& p) { return p; };
  BrouwerResult r = fixed_point(m, 1e-9);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.point.coords == std::vector<double>{1.0});
  CHECK(r.residual == 0.0);
}
