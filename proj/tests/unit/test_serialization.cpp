#include <doctest.h>

#include <json.hpp>

#include "afpp/errors.hpp"
#include "afpp/runner.hpp"
#include "afpp/serialization.hpp"

using namespace afpp;
using nlohmann::json;

TEST_CASE("point round trip") {
  SparsePoint x = SparsePoint::from_entries({{1, 0.5}, {7, -2.0}});
  CHECK(point_from_json(point_to_json(x)) == x);
  CHECK(point_from_json(point_to_json(SparsePoint{})) == SparsePoint{});
}

TEST_CASE("functional round trip covers every tail") {
  std::vector<Functional> fns = {
      Functional::coordinate(3),
      Functional::all_ones(),
      Functional({{2, -0.5}}, TailPeriodic{{1, -1, 1}, 0.25}),
  };
  for (const auto& f : fns) {
    CHECK(functional_from_json(functional_to_json(f)) == f);
  }
}

TEST_CASE("family round trip preserves evaluation") {
  SparsePoint probe = SparsePoint::from_entries({{1, 0.3}, {2, -0.7}, {5, 1}});
  std::vector<SeminormFamily> fams = {
      SeminormFamily::ell1_prefix(4),
      SeminormFamily::sup_prefix({1.0, 2.0, 0.5}, 5),
      SeminormFamily::functional_sup(
          {{Functional::coordinate(1)}, {Functional::all_ones()}}),
  };
  for (const auto& fam : fams) {
    SeminormFamily back = family_from_json(family_to_json(fam));
    REQUIRE(back.levels() == fam.levels());
    for (int level = 1; level <= fam.levels(); ++level) {
      CHECK(back.eval(level, probe) == fam.eval(level, probe));
    }
  }
}

TEST_CASE("body round trip preserves vertices") {
  std::vector<ConvexBody> bodies = {
      ConvexBody::hull({SparsePoint::basis(1),
                        SparsePoint::from_entries({{1, 0.5}, {2, 0.5}})}),
      ConvexBody::simplex_face({2, 4, 6}),
      ConvexBody::positive_cone_cap({1, 2, 3}, 0.5),
  };
  for (const auto& body : bodies) {
    ConvexBody back = body_from_json(body_to_json(body));
    REQUIRE(back.vertices().size() == body.vertices().size());
    for (std::size_t i = 0; i < body.vertices().size(); ++i) {
      CHECK(back.vertices()[i] == body.vertices()[i]);
    }
    CHECK(back.frame() == body.frame());
  }
}

TEST_CASE("map parsing by kind") {
  ConvexBody face = ConvexBody::simplex_face({1, 2, 3});

  SelfMap shift = map_from_json(json{{"kind", "shift"}}, face);
  CHECK(shift.apply(SparsePoint::basis(1)) == SparsePoint::basis(2));

  json comp = {{"kind", "composition"},
               {"stages", json::array({{{"kind", "shift"}},
                                       {{"kind", "shift"}}})}};
  SelfMap twice = map_from_json(comp, face);
  CHECK(twice.apply(SparsePoint::basis(1)) == SparsePoint::basis(3));

  CHECK_THROWS_AS(map_from_json(json{{"kind", "sideways"}}, face),
                  ConfigError);
  CHECK_THROWS_AS(map_from_json(json::array(), face), ConfigError);
}

TEST_CASE("norm parsing") {
  CHECK(std::holds_alternative<AmbientL1Norm>(
      norm_from_json(json{{"kind", "ambient-l1"}})));
  CHECK(std::holds_alternative<AmbientSupNorm>(
      norm_from_json(json{{"kind", "ambient-sup"}})));
  CHECK_THROWS_AS(norm_from_json(json{{"kind", "euclid"}}), ConfigError);
}

TEST_CASE("runner rejects malformed configs") {
  RunOptions opts;
  CHECK(run_config(json::array(), opts).exit_code == kExitConfig);
  CHECK(run_config(json{{"kind", "mystery"}}, opts).exit_code == kExitConfig);
  CHECK(run_config(json{{"kind", "afp"}}, opts).exit_code == kExitConfig);

  json bad_format = {{"kind", "gallery"}, {"name", "compact-kyfan"}};
  RunOptions csv;
  csv.format = "csv";
  CHECK(run_config(bad_format, csv).exit_code == kExitConfig);
}

TEST_CASE("runner reports are stable modulo timestamp") {
  json config = {
      {"kind", "afp"},
      {"body", {{"structure", "simplex-face"}, {"indices", {1, 2, 3, 4}}}},
      {"map", {{"kind", "shift"}}},
      {"functionals", json::array({{{"head", {{1, 1.0}}}},
                                   {{"head", {{2, 1.0}}}}})},
      {"epsilon", 0.05},
      {"seed", 11}};

  RunOptions opts;
  RunOutcome a = run_config(config, opts);
  RunOutcome b = run_config(config, opts);
  REQUIRE(a.exit_code == kExitOk);
  REQUIRE(b.exit_code == kExitOk);
  a.report.erase("timestamp");
  b.report.erase("timestamp");
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["schema"] == "afpp-report/1");
  CHECK(a.report["result"]["status"] == "converged");
}

TEST_CASE("runner seed override changes the hash") {
  json config = {{"kind", "cone-verify"},
                 {"center", {{"entries", json::array({{1, 0.5}})}}},
                 {"epsilon", 0.5},
                 {"samples", 50}};
  RunOptions opts;
  RunOutcome a = run_config(config, opts);
  RunOptions seeded;
  seeded.seed_override = 99;
  RunOutcome b = run_config(config, seeded);
  REQUIRE(a.exit_code == kExitOk);
  REQUIRE(b.exit_code == kExitOk);
  CHECK(a.report["configHash"] != b.report["configHash"]);
  CHECK(b.report["seed"] == 99);
}
