#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "duelmap/model.hpp"
#include "duelmap/stability.hpp"

namespace duelmap {

using PayoffTable = std::vector<std::vector<double>>;

/// Two-player strategic-form game. `row` holds the row player's payoffs,
/// `column` the column player's, both indexed [row strategy][column strategy].
struct BimatrixGame {
  PayoffTable row;
  PayoffTable column;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;

  std::size_t rows() const { return row.size(); }
  std::size_t cols() const { return row.empty() ? 0 : row.front().size(); }

  /// Throws ValidationError on shape mismatch or non-finite payoffs.
  void validate() const;
};

enum class EquilibriumKind { Pure, Mixed };

struct Equilibrium {
  std::vector<double> row_strategy;
  std::vector<double> column_strategy;
  std::pair<double, double> payoffs;
  EquilibriumKind kind = EquilibriumKind::Pure;
};

enum class Strictness { Strict, Weak };

struct DominanceFact {
  int player = 0;  // 0: row player, 1: column player
  std::size_t dominating = 0;
  std::size_t dominated = 0;
  Strictness strictness = Strictness::Weak;
};

inline constexpr double kPayoffTol = 1e-9;

enum class HawkDoveVariant { Symmetric, FirstInjurer };

std::string_view to_string(HawkDoveVariant v);
std::optional<HawkDoveVariant> variant_from_name(std::string_view name);

/// Row payoffs [[(B-C)/2, B], [0, B/2]], column payoffs the transpose.
BimatrixGame hawk_dove_symmetric(double benefit, double cost);

/// Row payoffs as symmetric; the column player gets nothing whenever the row
/// player (who strikes first) plays Hawk: [[0, 0], [B, B/2]].
BimatrixGame hawk_dove_first_injurer(double benefit, double cost);

BimatrixGame hawk_dove(HawkDoveVariant variant, double benefit, double cost);

std::pair<double, double> expected_payoffs(const BimatrixGame& g, const std::vector<double>& p,
                                           const std::vector<double>& q);

/// Largest gain either player obtains by a unilateral pure deviation.
double deviation_gain(const BimatrixGame& g, const std::vector<double>& p,
                      const std::vector<double>& q);

/// Pure profiles where both strategies are best responses, row-major order.
std::vector<Equilibrium> pure_nash(const BimatrixGame& game);

/// Support enumeration over equal-size support pairs (games up to 4x4).
/// Includes pure equilibria; singular indifference systems are skipped.
std::vector<Equilibrium> mixed_nash_support_enum(const BimatrixGame& game);

std::vector<DominanceFact> dominant_strategies(const BimatrixGame& game);

enum class Behavior { HawkLike, DoveLike };

std::string_view to_string(Behavior b);

/// Per-coordinate reading of a state: >= threshold is aggressive.
std::pair<Behavior, Behavior> behavior_label(const State& s, double threshold = 0.5);

/// Which state coordinate plays the game's row role. The default seats x
/// (the weaker side, which strikes first) in the row, injuring role.
enum class RowRole { X, Y };

struct CorrespondenceRow {
  std::size_t fixed_point_index = 0;
  State location;
  Behavior x_behavior = Behavior::DoveLike;
  Behavior y_behavior = Behavior::DoveLike;
  std::size_t row_strategy = 0;  // 0 Hawk, 1 Dove
  std::size_t column_strategy = 0;
  bool is_nash = false;
};

/// One row per admissible fixed point, pairing its behavior labels with the
/// matching pure profile of a 2x2 Hawk/Dove game.
std::vector<CorrespondenceRow> correspondence_report(const std::vector<FixedPointReport>& reports,
                                                     const BimatrixGame& game,
                                                     RowRole row_role = RowRole::X,
                                                     double threshold = 0.5);

}  // namespace duelmap
