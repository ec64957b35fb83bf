#pragma once

#include "ahcert/schedule.hpp"

#include <nlohmann/json.hpp>

namespace ahcert {

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

inline nlohmann::json rat_json(const Rat& q) { return rat_to_string(q); }
Rat rat_from_json(const nlohmann::json& j);

// big integers travel as decimal strings
inline nlohmann::json int_json(const Int& v) { return v.str(); }
Int int_from_json(const nlohmann::json& j);

}  // namespace ahcert
