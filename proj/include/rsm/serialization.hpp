#pragma once

#include <json.hpp>

#include "rsm/families.hpp"
#include "rsm/forms.hpp"
#include "rsm/geodesics.hpp"

namespace rsm {

using Json = nlohmann::ordered_json;

// Doubles are written in shortest round-trip form, so parse(dump(x)) == x.

Json to_json(const CharacterForm& form);
CharacterForm form_from_json(const Json& j);

Json to_json(const HeartParams& params);
HeartParams heart_params_from_json(const Json& j);

Json to_json(const ThreeFootballParams& params);
ThreeFootballParams three_football_params_from_json(const Json& j);

Json to_json(const GeodesicPath& path);
Json to_json(const TriangleReport& report);
Json to_json(const HeartReport& report);

const char* to_string(Branch branch);
/// "plus" or "minus" (case-sensitive). Throws InvalidConfig.
Branch parse_branch(const std::string& text);

}  // namespace rsm
