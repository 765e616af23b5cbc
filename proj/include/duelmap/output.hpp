#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "duelmap/attractor.hpp"
#include "duelmap/game.hpp"
#include "duelmap/model.hpp"
#include "duelmap/scenario.hpp"
#include "duelmap/stability.hpp"

namespace duelmap {

// CSV numbers: 9 significant digits, '.' decimal point, ',' separator, '\n'.
std::string format_sig9(double v);

void write_orbit_csv(std::ostream& out, const Orbit& orbit);

void write_sweep_samples_csv(std::ostream& out, const std::vector<SweepResult>& results);
void write_sweep_summary_csv(std::ostream& out, const std::vector<SweepResult>& results);

/// Settle time of an orbit against the admissible attracting fixed point
/// nearest to where the orbit ends up.
struct SettleSummary {
  std::optional<State> target;
  std::optional<std::size_t> time;
  bool diverged = false;
  double epsilon = 1e-3;
  std::size_t window = 10;
};

SettleSummary summarize_settle(const ModelParams& params,
                               const std::vector<FixedPointReport>& reports, const State& initial,
                               const SettleOptions& options = {});

nlohmann::json analysis_json(const std::vector<FixedPointReport>& reports);
std::string analysis_text(const std::vector<FixedPointReport>& reports);

struct GameSummary {
  BimatrixGame game;
  std::vector<Equilibrium> equilibria;
  std::vector<DominanceFact> dominance;
};

GameSummary summarize_game(const BimatrixGame& game);
nlohmann::json game_json(const GameSummary& summary);
std::string game_text(const GameSummary& summary);

nlohmann::json settle_json(const SettleSummary& s);

/// Combined document: fixed points, behavior labels, correspondence against
/// the scenario's game (default first-injurer, B=2, C=1) and settle time.
nlohmann::json report_json(const Scenario& scenario);

}  // namespace duelmap
