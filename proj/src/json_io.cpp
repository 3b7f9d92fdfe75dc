#include "hopi/json_io.hpp"

namespace hopi {

using nlohmann::json;

json to_json(const Budget& b) {
  return json{{"payload_depth", b.payload_depth},
              {"pool_size", b.pool_size},
              {"tau_fuel", b.tau_fuel},
              {"mu_fuel", b.mu_fuel}};
}

json to_json(const Verdict& v, const Budget& b) {
  json j;
  switch (v.outcome) {
    case Outcome::Holds: j["verdict"] = "holds"; break;
    case Outcome::Fails: j["verdict"] = "fails"; break;
    case Outcome::Unknown: j["verdict"] = "unknown"; break;
  }
  if (!v.witness.empty()) j["witness"] = v.witness;
  else j["witness"] = nullptr;
  j["budget_hit"] = v.budget_hit;
  j["budget"] = to_json(b);
  return j;
}

json to_json(const Transition& t) {
  json action;
  switch (t.action.kind) {
    case Action::Tau:
      action["kind"] = "tau";
      break;
    case Action::In:
      action["kind"] = "in";
      action["subject"] = t.action.subject.id;
      action["payload"] = print(t.action.payload);
      break;
    case Action::Out: {
      action["kind"] = "out";
      action["subject"] = t.action.subject.id;
      json ext = json::array();
      for (auto& e : t.action.extruded) ext.push_back(e.id);
      action["extruded"] = ext;
      action["payload"] = print(t.action.payload);
      break;
    }
  }
  return json{{"source", print(t.source)}, {"action", action}, {"target", print(t.target)}};
}

json to_json(const equiv::EquivReport& r) {
  json j;
  j["result"] = r.distinguished ? "distinguished" : "none_found";
  if (r.witness) j["witness"] = print(*r.witness);
  if (!r.trace.empty()) j["trace"] = r.trace;
  j["bounds"] = r.bounds;
  return j;
}

}  // namespace hopi
