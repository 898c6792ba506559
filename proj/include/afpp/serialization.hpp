#pragma once

#include <json.hpp>

#include "afpp/convex_body.hpp"
#include "afpp/ell1.hpp"
#include "afpp/functional.hpp"
#include "afpp/self_map.hpp"
#include "afpp/seminorm.hpp"
#include "afpp/sparse_point.hpp"

namespace afpp {

// Emitters used by reports.
nlohmann::json point_to_json(const SparsePoint& x);
nlohmann::json functional_to_json(const Functional& f);
nlohmann::json family_to_json(const SeminormFamily& family);
nlohmann::json body_to_json(const ConvexBody& body);

// Parsers; all throw ConfigError with a field-level message on bad input.
SparsePoint point_from_json(const nlohmann::json& j);
Functional functional_from_json(const nlohmann::json& j);
SeminormFamily family_from_json(const nlohmann::json& j);
ConvexBody body_from_json(const nlohmann::json& j);
SelfMap map_from_json(const nlohmann::json& j, const ConvexBody& domain);
BasisNorm norm_from_json(const nlohmann::json& j);

}  // namespace afpp
