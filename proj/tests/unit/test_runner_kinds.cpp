#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "afpp/gallery.hpp"
#include "afpp/runner.hpp"
#include "afpp/serialization.hpp"

using namespace afpp;
using nlohmann::json;

namespace {

RunOutcome run(const json& config, const std::string& format = "json") {
  RunOptions opts;
  opts.format = format;
  return run_config(config, opts);
}

}  // namespace

TEST_CASE("afp kind emits residuals and a csv table") {
  json config = {
      {"kind", "afp"},
      {"body", {{"structure", "simplex-face"}, {"indices", {1, 2, 3}}}},
      {"map", {{"kind", "shift"}}},
      {"functionals", json::array({{{"head", {{1, 1.0}}}}})},
      {"epsilon", 0.05}};

  RunOutcome out = run(config);
  REQUIRE(out.exit_code == kExitOk);
  CHECK(out.report["result"]["residuals"].size() == 1);
  CHECK(out.report["result"]["rungsUsed"].get<int>() >= 1);
  REQUIRE(out.files.size() == 1);
  CHECK(out.files[0].name == "report.json");

  RunOutcome csv = run(config, "csv");
  REQUIRE(csv.exit_code == kExitOk);
  REQUIRE(csv.files.size() == 2);
  CHECK(csv.files[1].name == "report.csv");
  CHECK(csv.files[1].content.rfind("stage,functional,residual\n", 0) == 0);
}

TEST_CASE("afp-sequence kind scales residuals by the stage") {
  json config = {
      {"kind", "afp-sequence"},
      {"body", {{"structure", "simplex-face"}, {"indices", {1, 2, 3, 4}}}},
      {"map", {{"kind", "shift"}}},
      {"enumeration", "coordinate"},
      {"stages", 3}};

  RunOutcome out = run(config, "csv");
  REQUIRE(out.exit_code == kExitOk);
  const auto& residuals = out.report["result"]["residuals"];
  REQUIRE(residuals.size() == 3);
  for (std::size_t n = 0; n < 3; ++n) {
    REQUIRE(residuals[n].size() == n + 1);
    for (const auto& v : residuals[n]) {
      CHECK(v.get<double>() < 1.0 / static_cast<double>(n + 1));
    }
  }
  CHECK(out.report["result"]["enumeration"] == "coordinate");
}

TEST_CASE("kyfan kind reports the l1 residual") {
  json config = {
      {"kind", "kyfan"},
      {"body",
       {{"structure", "hull"},
        {"generators", json::array({{{"entries", {{1, 1.0}}}},
                                    {{"entries", {{2, 1.0}}}}})}}},
      {"map",
       {{"kind", "affine"},
        {"images",
         json::array({{{"entries", {{1, 0.5}, {2, 0.5}}}},
                      {{"entries", {{1, 0.5}, {2, 0.5}}}}})}}},
      {"tol", 1e-7}};

  RunOutcome out = run(config);
  REQUIRE(out.exit_code == kExitOk);
  CHECK(out.report["result"]["l1Residual"].get<double>() <= 1e-7);
}

TEST_CASE("ell1-profile kind with the canonical generator") {
  json config = {{"kind", "ell1-profile"},
                 {"sequence", {{"generator", "canonical-basis"}, {"count", 8}}},
                 {"family",
                  {{"kind", "functional-sup"},
                   {"batches",
                    json::array({json::array({{{"head", {{1, 1.0}}}}}),
                                 json::array({{{"head", {{2, 1.0}}}}})})}}},
                 {"horizons", {1, 2, 4, 8}}};

  RunOutcome out = run(config, "csv");
  REQUIRE(out.exit_code == kExitOk);
  CHECK(out.report["result"]["verdicts"].size() == 2);
  CHECK(out.files[1].content.rfind("horizon,level,constant,verdict\n", 0) ==
        0);
}

TEST_CASE("basis-constant kind in both modes") {
  json vectors = json::array({{{"entries", {{1, 1.0}}}},
                              {{"entries", {{1, 0.5}, {2, 0.5}}}}});

  json exact = {{"kind", "basis-constant"},
                {"vectors", vectors},
                {"norm", {{"kind", "ambient-l1"}}}};
  RunOutcome a = run(exact);
  REQUIRE(a.exit_code == kExitOk);
  CHECK(a.report["result"]["value"].get<double>() ==
        doctest::Approx(1.0 / 3.0));
  CHECK(a.report["result"]["method"] == "orthant-exact");

  json grid = {{"kind", "basis-constant"},
               {"vectors", vectors},
               {"norm", {{"kind", "ambient-l1"}}},
               {"mode", "grid"},
               {"step", 1e-3}};
  RunOutcome b = run(grid);
  REQUIRE(b.exit_code == kExitOk);
  CHECK(b.report["result"]["method"] == "grid");
  CHECK(std::abs(b.report["result"]["value"].get<double>() -
                 a.report["result"]["value"].get<double>()) <= 2e-3);

  // The exact cap surfaces as a budget exit, not a wrong answer.
  json capped = exact;
  capped["vectors"] = json::array();
  for (int i = 1; i <= 14; ++i) {
    capped["vectors"].push_back(point_to_json(SparsePoint::basis(i)));
  }
  CHECK(run(capped).exit_code == kExitBudget);
}

TEST_CASE("gallery kind passes for every shipped instance") {
  for (const auto& name : gallery_names()) {
    json config = {{"kind", "gallery"}, {"name", name}};
    RunOutcome out = run(config);
    REQUIRE(out.exit_code == kExitOk);
    CHECK(out.report["result"]["passed"] == true);
    CHECK(!out.report["result"]["claim"].get<std::string>().empty());
  }
  json unknown = {{"kind", "gallery"}, {"name", "missing"}};
  CHECK(run(unknown).exit_code == kExitConfig);
}

TEST_CASE("budget override flows into the engine") {
  json config = {
      {"kind", "afp"},
      {"body",
       {{"structure", "hull"},
        {"generators", json::array({{{"entries", {{1, 1.0}}}},
                                    {{"entries", {{2, 1.0}}}},
                                    {{"entries", {{3, 1.0}}}}})}}},
      {"map",
       {{"kind", "affine"},
        {"images",
         json::array({{{"entries", {{1, 0.92}, {2, 0.03}, {3, 0.05}}}},
                      {{"entries", {{1, 0.02}, {2, 0.93}, {3, 0.05}}}},
                      {{"entries", {{1, 0.02}, {2, 0.03}, {3, 0.95}}}}})}}},
      {"functionals", json::array({{{"head", {{1, 1.0}}}}})},
      {"epsilon", 1e-12},
      {"budgets", {{"netPoints", 4}, {"netSamples", 16}, {"rungs", 1},
                   {"orbitBurst", 4}}}};

  RunOptions opts;
  opts.budget_override = 8;
  RunOutcome out = run_config(config, opts);
  CHECK(out.exit_code == kExitBudget);
  CHECK(out.report["status"] == "budget-exceeded");
}
