#pragma once

#include <json.hpp>

#include "hopi/checker.hpp"
#include "hopi/equiv.hpp"
#include "hopi/lts.hpp"

namespace hopi {

nlohmann::json to_json(const Budget& b);
nlohmann::json to_json(const Verdict& v, const Budget& b);
nlohmann::json to_json(const Transition& t);
nlohmann::json to_json(const equiv::EquivReport& r);

}  // namespace hopi
