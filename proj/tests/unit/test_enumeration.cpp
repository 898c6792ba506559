#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "afpp/enumeration.hpp"

using namespace afpp;

namespace {

// Reduced textual key, mirroring the dedup rule of the stream.
std::string key_of(const Functional& f) {
  std::string k;
  for (const auto& [i, v] : f.head()) {
    k += std::to_string(i) + ":" + std::to_string(v) + ";";
  }
  return k;
}

bool is_dyadic(double v) {
  if (v == 0.0) return true;
  double scaled = std::abs(v);
  for (int k = 0; k < 32 && scaled < (1ll << 30); ++k) {
    if (scaled == std::floor(scaled)) return true;
    scaled *= 2.0;
  }
  return false;
}

}  // namespace

TEST_CASE("dyadic stream starts with the signed first coordinate") {
  DyadicEnumeration e;
  CHECK(e.at(0) == Functional({{1, -1.0}}, TailZero{}));
  CHECK(e.at(1) == Functional({{1, 1.0}}, TailZero{}));
  CHECK(e.at(2) == Functional({{1, -0.5}}, TailZero{}));
  CHECK(e.at(3) == Functional({{1, 0.5}}, TailZero{}));
}

TEST_CASE("dyadic stream is deduplicated and 1-bounded") {
  DyadicEnumeration e;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 120; ++i) {
    const Functional& f = e.at(i);
    CHECK(!f.head().empty());
    CHECK(f.sup_norm() <= 1.0);
    CHECK(f.tail_magnitude() == 0.0);
    for (const auto& [idx, v] : f.head()) {
      CHECK(idx <= 8);  // low weight keeps the support small early on
      CHECK(is_dyadic(v));
    }
    CHECK(seen.insert(key_of(f)).second);
  }
}

TEST_CASE("dyadic prefix eventually separates the first two coordinates") {
  DyadicEnumeration e;
  auto fns = e.prefix(40);
  bool saw_e2 = false;
  for (const auto& f : fns) {
    if (f == Functional({{2, 1.0}}, TailZero{})) saw_e2 = true;
  }
  CHECK(saw_e2);
}

TEST_CASE("coordinate stream") {
  CoordinateEnumeration e;
  CHECK(e.at(0) == Functional::coordinate(1));
  CHECK(e.at(4) == Functional::coordinate(5));
  CHECK(e.name() == "coordinate");
}

TEST_CASE("enumeration factory") {
  CHECK(make_enumeration("dyadic")->name() == "dyadic");
  CHECK(make_enumeration("coordinate")->name() == "coordinate");
  CHECK_THROWS_AS(make_enumeration("nope"), std::invalid_argument);
}
