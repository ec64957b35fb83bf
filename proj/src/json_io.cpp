#include "ahcert/json_io.hpp"

#include <stdexcept>

namespace ahcert {

nlohmann::json schedule_to_json(const Schedule& s) {
  nlohmann::json j;
  if (s.kind == Schedule::Kind::Geometric) {
    j["kind"] = "geometric";
    j["coeff"] = s.coeff.str();
    j["base"] = s.base.str();
  } else {
    j["kind"] = "explicit";
    nlohmann::json d = nlohmann::json::array();
    for (const Int& v : s.prefix) d.push_back(v.str());
    j["d"] = d;
  }
  return j;
}

Schedule schedule_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "geometric") {
    return Schedule::geometric(int_from_json(j.at("coeff")), int_from_json(j.at("base")));
  }
  if (kind == "explicit") {
    std::vector<Int> d;
    for (const auto& v : j.at("d")) d.push_back(int_from_json(v));
    return Schedule::explicit_prefix(std::move(d));
  }
  throw std::invalid_argument("unknown schedule kind '" + kind + "'");
}

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw std::invalid_argument("rational must be a \"num/den\" string");
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw std::invalid_argument("integer must be a decimal string or number");
}

}  // namespace ahcert
