#include "duelmap/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "duelmap/errors.hpp"

namespace duelmap {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw ParseError("unknown key \"" + (where.empty() ? key : where + "." + key) + "\"");
    }
  }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
  auto it = parent.find(key);
  if (it == parent.end()) throw ParseError("missing required field \"" + path + "\"");
  if (!it->is_object()) throw ParseError("field \"" + path + "\" must be an object");
  return *it;
}

double finite_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError("field \"" + path + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError("field \"" + path + "\" is not finite");
  return d;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario document must be a JSON object");
  reject_unknown_keys(doc, "", {"name", "params", "simulate", "game"});

  Scenario s;
  auto name = doc.find("name");
  if (name == doc.end()) throw ParseError("missing required field \"name\"");
  if (!name->is_string() || name->get<std::string>().empty()) {
    throw ParseError("field \"name\" must be a nonempty string");
  }
  s.name = name->get<std::string>();

  const json& params = require_object(doc, "params", "params");
  for (const auto& [key, value] : params.items()) {
    if (!param_from_name(key)) throw ParseError("unknown key \"params." + key + "\"");
  }
  for (ParamId id : kAllParams) {
    const std::string key(param_name(id));
    auto it = params.find(key);
    if (it == params.end()) throw ParseError("missing required field \"params." + key + "\"");
    set_param(s.params, id, finite_number(*it, "params." + key));
  }

  if (auto sim = doc.find("simulate"); sim != doc.end()) {
    if (!sim->is_object()) throw ParseError("field \"simulate\" must be an object");
    reject_unknown_keys(*sim, "simulate", {"initial", "steps", "clamp"});
    if (auto init = sim->find("initial"); init != sim->end()) {
      if (!init->is_array() || init->size() != 2) {
        throw ParseError("field \"simulate.initial\" must be an array [x, y]");
      }
      s.simulate.initial = {finite_number((*init)[0], "simulate.initial[0]"),
                            finite_number((*init)[1], "simulate.initial[1]")};
    }
    if (auto steps = sim->find("steps"); steps != sim->end()) {
      if (!steps->is_number_unsigned()) {
        throw ParseError("field \"simulate.steps\" must be a non-negative integer");
      }
      s.simulate.steps = steps->get<std::size_t>();
    }
    if (auto clamp = sim->find("clamp"); clamp != sim->end()) {
      if (!clamp->is_boolean()) throw ParseError("field \"simulate.clamp\" must be a boolean");
      s.simulate.clamp = clamp->get<bool>();
    }
  }

  if (auto game = doc.find("game"); game != doc.end()) {
    if (!game->is_object()) throw ParseError("field \"game\" must be an object");
    reject_unknown_keys(*game, "game", {"variant", "benefit", "cost"});
    GameBlock g;
    if (auto v = game->find("variant"); v != game->end()) {
      if (!v->is_string()) throw ParseError("field \"game.variant\" must be a string");
      auto variant = variant_from_name(v->get<std::string>());
      if (!variant) {
        throw ParseError("field \"game.variant\" must be \"symmetric\" or \"first-injurer\"");
      }
      g.variant = *variant;
    }
    if (auto b = game->find("benefit"); b != game->end()) g.benefit = finite_number(*b, "game.benefit");
    if (auto c = game->find("cost"); c != game->end()) g.cost = finite_number(*c, "game.cost");
    s.game = g;
  }

  auto outcome = validate_params(s.params, /*strict=*/false);
  if (!outcome.accepted) throw ParseError("scenario parameters are not finite");
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  json params = json::object();
  for (ParamId id : kAllParams) params[std::string(param_name(id))] = get_param(s.params, id);
  json doc = {
      {"name", s.name},
      {"params", params},
      {"simulate",
       {{"initial", {s.simulate.initial.x, s.simulate.initial.y}},
        {"steps", s.simulate.steps},
        {"clamp", s.simulate.clamp}}},
  };
  if (s.game) {
    doc["game"] = {{"variant", std::string(to_string(s.game->variant))},
                   {"benefit", s.game->benefit},
                   {"cost", s.game->cost}};
  }
  return doc.dump(2) + "\n";
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ModelParams salamis_baseline() {
  ModelParams p;
  p.P_x = 0.25;
  p.P_y = 0.8;
  p.TN_x = 0.7;
  p.TN_y = 0.35;
  p.G = 0.4;
  p.D_x = 0.8;
  p.D_y = 0.2;
  p.E_x = 0.3;
  p.E_y = 0.7;
  return p;
}

const std::vector<Scenario>& presets() {
  static const std::vector<Scenario> catalog = [] {
    auto make = [](std::string name, auto tweak) {
      Scenario s;
      s.name = std::move(name);
      s.params = salamis_baseline();
      tweak(s.params);
      return s;
    };
    return std::vector<Scenario>{
        make("salamis_straits", [](ModelParams&) {}),
        make("open_saronic", [](ModelParams& p) { p.G = 0.64; }),
        make("isthmus", [](ModelParams& p) { p.G = 0.7; }),
        make("damage_even", [](ModelParams& p) { p.D_x = 0.5; p.D_y = 0.5; }),
        make("damage_persian_edge", [](ModelParams& p) { p.D_x = 0.3; p.D_y = 0.7; }),
        make("damage_greek_edge", [](ModelParams& p) { p.D_x = 0.8; p.D_y = 0.2; }),
    };
  }();
  return catalog;
}

std::optional<Scenario> find_preset(std::string_view name) {
  for (const auto& s : presets()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace duelmap
