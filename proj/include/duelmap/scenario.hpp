#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "duelmap/game.hpp"
#include "duelmap/model.hpp"

namespace duelmap {

struct SimulateBlock {
  State initial{0.5, 0.5};
  std::size_t steps = 24;
  bool clamp = false;

  bool operator==(const SimulateBlock&) const = default;
};

struct GameBlock {
  HawkDoveVariant variant = HawkDoveVariant::FirstInjurer;
  double benefit = 2.0;
  double cost = 1.0;

  bool operator==(const GameBlock&) const = default;
  BimatrixGame build() const { return hawk_dove(variant, benefit, cost); }
};

struct Scenario {
  std::string name;
  ModelParams params;
  SimulateBlock simulate;
  std::optional<GameBlock> game;

  bool operator==(const Scenario&) const = default;
};

/// Parses the JSON scenario format:
///   { "name": ..., "params": {P_x ... E_y},
///     "simulate": {"initial": [x, y], "steps": n, "clamp": b},   (optional)
///     "game": {"variant": ..., "benefit": B, "cost": C} }        (optional)
/// Unknown keys are rejected. Throws ParseError with a line or field path.
Scenario parse_scenario(std::string_view text);

std::string serialize_scenario(const Scenario& s);

Scenario load_scenario_file(const std::string& path);

/// Built-in scenarios. Every other preset differs from salamis_straits only
/// in the fields its name refers to.
const std::vector<Scenario>& presets();
std::optional<Scenario> find_preset(std::string_view name);

ModelParams salamis_baseline();

}  // namespace duelmap
