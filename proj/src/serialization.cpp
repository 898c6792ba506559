#include "afpp/serialization.hpp"

#include <string>

#include "afpp/errors.hpp"

namespace afpp {

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw ConfigError(std::string("missing field: ") + field);
  }
  return *it;
}

template <typename T>
T as(const nlohmann::json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("bad value for ") + what);
  }
}

}  // namespace

nlohmann::json point_to_json(const SparsePoint& x) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [i, v] : x.entries()) {
    entries.push_back(nlohmann::json::array({i, v}));
  }
  return {{"entries", entries}};
}

SparsePoint point_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("point must be an object");
  SparsePoint x;
  for (const auto& e : require(j, "entries")) {
    if (!e.is_array() || e.size() != 2) {
      throw ConfigError("point entry must be [index, value]");
    }
    try {
      x.set(as<int>(e[0], "point index"), as<double>(e[1], "point value"));
    } catch (const std::out_of_range& ex) {
      throw ConfigError(ex.what());
    }
  }
  return x;
}

nlohmann::json functional_to_json(const Functional& f) {
  nlohmann::json head = nlohmann::json::array();
  for (const auto& [i, v] : f.head()) {
    head.push_back(nlohmann::json::array({i, v}));
  }
  nlohmann::json tail;
  if (std::holds_alternative<TailZero>(f.tail())) {
    tail = {{"kind", "zero"}};
  } else if (const auto* c = std::get_if<TailConstant>(&f.tail())) {
    tail = {{"kind", "constant"}, {"value", c->value}};
  } else {
    const auto& p = std::get<TailPeriodic>(f.tail());
    tail = {{"kind", "periodic"}, {"pattern", p.pattern}, {"scale", p.scale}};
  }
  return {{"head", head}, {"tail", tail}};
}

Functional functional_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("functional must be an object");
  std::map<int, double> head;
  if (j.contains("head")) {
    for (const auto& e : j["head"]) {
      if (!e.is_array() || e.size() != 2) {
        throw ConfigError("functional head entry must be [index, value]");
      }
      head[as<int>(e[0], "head index")] = as<double>(e[1], "head value");
    }
  }
  Tail tail = TailZero{};
  if (j.contains("tail")) {
    const auto& t = j["tail"];
    const std::string kind = as<std::string>(require(t, "kind"), "tail kind");
    if (kind == "zero") {
      tail = TailZero{};
    } else if (kind == "constant") {
      tail = TailConstant{as<double>(require(t, "value"), "tail value")};
    } else if (kind == "periodic") {
      TailPeriodic p;
      p.pattern = as<std::vector<int>>(require(t, "pattern"), "tail pattern");
      p.scale = t.contains("scale") ? as<double>(t["scale"], "tail scale")
                                    : 1.0;
      tail = std::move(p);
    } else {
      throw ConfigError("unknown tail kind: " + kind);
    }
  }
  try {
    return Functional(std::move(head), std::move(tail));
  } catch (const std::exception& ex) {
    throw ConfigError(ex.what());
  }
}

nlohmann::json family_to_json(const SeminormFamily& family) {
  if (std::holds_alternative<Ell1Prefix>(family.kind())) {
    return {{"kind", "ell1-prefix"}, {"levels", family.levels()}};
  }
  if (const auto* sp = std::get_if<SupPrefix>(&family.kind())) {
    return {{"kind", "sup-prefix"},
            {"levels", family.levels()},
            {"weights", sp->weights}};
  }
  const auto& fs = std::get<FunctionalSup>(family.kind());
  nlohmann::json batches = nlohmann::json::array();
  for (const auto& batch : fs.batches) {
    nlohmann::json b = nlohmann::json::array();
    for (const auto& f : batch) b.push_back(functional_to_json(f));
    batches.push_back(std::move(b));
  }
  return {{"kind", "functional-sup"}, {"batches", batches}};
}

SeminormFamily family_from_json(const nlohmann::json& j) {
  const std::string kind = as<std::string>(require(j, "kind"), "family kind");
  try {
    if (kind == "ell1-prefix") {
      return SeminormFamily::ell1_prefix(
          as<int>(require(j, "levels"), "levels"));
    }
    if (kind == "sup-prefix") {
      return SeminormFamily::sup_prefix(
          as<std::vector<double>>(require(j, "weights"), "weights"),
          as<int>(require(j, "levels"), "levels"));
    }
    if (kind == "functional-sup") {
      std::vector<std::vector<Functional>> batches;
      for (const auto& batch : require(j, "batches")) {
        std::vector<Functional> fs;
        for (const auto& f : batch) fs.push_back(functional_from_json(f));
        batches.push_back(std::move(fs));
      }
      return SeminormFamily::functional_sup(std::move(batches));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(ex.what());
  }
  throw ConfigError("unknown family kind: " + kind);
}

nlohmann::json body_to_json(const ConvexBody& body) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : body.generators()) gens.push_back(point_to_json(g));
  nlohmann::json structure;
  if (std::holds_alternative<HullOnly>(body.structure())) {
    structure = "hull";
  } else if (std::holds_alternative<SimplexFace>(body.structure())) {
    structure = "simplex-face";
  } else {
    structure = "positive-cone-cap";
  }
  nlohmann::json out = {{"structure", structure},
                        {"generators", gens},
                        {"closedHull", body.closed_hull()}};
  if (const auto* cap = std::get_if<PositiveConeCap>(&body.structure())) {
    out["bound"] = cap->bound;
  }
  return out;
}

ConvexBody body_from_json(const nlohmann::json& j) {
  const std::string structure =
      as<std::string>(require(j, "structure"), "body structure");
  try {
    if (structure == "simplex-face" && j.contains("indices")) {
      return ConvexBody::simplex_face(
          as<std::vector<int>>(j["indices"], "indices"));
    }
    if (structure == "positive-cone-cap" && j.contains("frame")) {
      return ConvexBody::positive_cone_cap(
          as<std::vector<int>>(j["frame"], "frame"),
          as<double>(require(j, "bound"), "bound"));
    }
    std::vector<SparsePoint> gens;
    for (const auto& g : require(j, "generators")) {
      gens.push_back(point_from_json(g));
    }
    const bool closed =
        j.contains("closedHull") ? as<bool>(j["closedHull"], "closedHull")
                                 : true;
    if (structure == "hull") {
      return ConvexBody(std::move(gens), HullOnly{}, closed);
    }
    if (structure == "simplex-face") {
      return ConvexBody(std::move(gens), SimplexFace{}, closed);
    }
    if (structure == "positive-cone-cap") {
      return ConvexBody(std::move(gens),
                        PositiveConeCap{as<double>(require(j, "bound"),
                                                   "bound")},
                        closed);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(ex.what());
  }
  throw ConfigError("unknown body structure: " + structure);
}

SelfMap map_from_json(const nlohmann::json& j, const ConvexBody& domain) {
  const std::string kind = as<std::string>(require(j, "kind"), "map kind");
  try {
    if (kind == "constant") {
      return SelfMap::constant(domain, point_from_json(require(j, "value")));
    }
    if (kind == "affine") {
      std::vector<SparsePoint> images;
      for (const auto& img : require(j, "images")) {
        images.push_back(point_from_json(img));
      }
      return SelfMap::affine(domain, std::move(images));
    }
    if (kind == "shift") {
      return SelfMap::shift(domain);
    }
    if (kind == "weighted-shift") {
      return SelfMap::weighted_shift(
          domain, as<std::vector<double>>(require(j, "weights"), "weights"));
    }
    if (kind == "composition") {
      std::vector<SelfMap> stages;
      for (const auto& stage : require(j, "stages")) {
        stages.push_back(map_from_json(stage, domain));
      }
      return SelfMap::composition(std::move(stages));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(ex.what());
  }
  throw ConfigError("unknown map kind: " + kind);
}

BasisNorm norm_from_json(const nlohmann::json& j) {
  const std::string kind = as<std::string>(require(j, "kind"), "norm kind");
  if (kind == "ambient-l1") return AmbientL1Norm{};
  if (kind == "ambient-sup") return AmbientSupNorm{};
  if (kind == "family-level") {
    return FamilyLevelNorm{family_from_json(require(j, "family")),
                           as<int>(require(j, "level"), "level")};
  }
  throw ConfigError("unknown norm kind: " + kind);
}

}  // namespace afpp
