#pragma once

// JSON form of the results printed by the command-line tool (schema "krlab/1").

#include <json.hpp>

#include "krlab/mf.hpp"
#include "krlab/qamod.hpp"
#include "krlab/ratfun.hpp"

namespace krlab::io {

inline constexpr const char* kSchema = "krlab/1";

nlohmann::json to_json(const qamod::GradedQaModule& m);
// Throws ParseError on a malformed document.
qamod::GradedQaModule module_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::vector<qamod::Tail>& tails);
nlohmann::json to_json(const std::map<std::pair<int, int>, ratfun::Rational>& series);
nlohmann::json to_json(const mf::GdimSeries& g);

}  // namespace krlab::io
