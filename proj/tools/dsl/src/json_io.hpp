#pragma once

// JSON conversions shared by the parser, the renderer and the command runner.

#include "json.hpp"
#include "stonedual/dsl.hpp"

namespace stonedual::dsl {

Algebra parse_algebra(const nlohmann::json& j);
Object parse_json(const nlohmann::json& j);

nlohmann::json to_json(const Algebra& algebra);
nlohmann::json to_json(const Algebra& algebra, const Element& a);
nlohmann::json to_json(const Algebra* algebra, const Point& p);
nlohmann::json to_json(const PointSet& x);
nlohmann::json to_json(const Ideal& ideal);
nlohmann::json to_json(const SpacePresentation& space);
/// Point-map rules; labels are used for finite blocks when an algebra is given.
nlohmann::json to_json(const PointMap& map, const Algebra* source_labels, const Algebra* target_labels);
nlohmann::json to_json(const Object& object);

}  // namespace stonedual::dsl
