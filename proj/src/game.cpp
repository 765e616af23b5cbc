#include "duelmap/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <tuple>

#include "duelmap/errors.hpp"

namespace duelmap {

void BimatrixGame::validate() const {
  const std::size_t m = rows();
  const std::size_t n = cols();
  if (m == 0 || n == 0) throw ValidationError("game needs at least one strategy per player", {});
  if (column.size() != m) throw ValidationError("payoff tables differ in row count", {});
  for (std::size_t i = 0; i < m; ++i) {
    if (row[i].size() != n || column[i].size() != n) {
      throw ValidationError("payoff tables are not rectangular with equal shape", {});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(row[i][j]) || !std::isfinite(column[i][j])) {
        throw ValidationError("payoff entries must be finite", {});
      }
    }
  }
  if (!row_labels.empty() && row_labels.size() != m) {
    throw ValidationError("row label count does not match strategies", {});
  }
  if (!column_labels.empty() && column_labels.size() != n) {
    throw ValidationError("column label count does not match strategies", {});
  }
}

std::string_view to_string(HawkDoveVariant v) {
  return v == HawkDoveVariant::Symmetric ? "symmetric" : "first-injurer";
}

std::optional<HawkDoveVariant> variant_from_name(std::string_view name) {
  if (name == "symmetric") return HawkDoveVariant::Symmetric;
  if (name == "first-injurer") return HawkDoveVariant::FirstInjurer;
  return std::nullopt;
}

namespace {

void require_finite(double benefit, double cost) {
  if (!std::isfinite(benefit) || !std::isfinite(cost)) {
    throw ValidationError("benefit and cost must be finite", {"benefit", "cost"});
  }
}

PayoffTable hawk_dove_row(double b, double c) { return {{(b - c) / 2.0, b}, {0.0, b / 2.0}}; }

}  // namespace

BimatrixGame hawk_dove_symmetric(double benefit, double cost) {
  require_finite(benefit, cost);
  BimatrixGame g;
  g.row = hawk_dove_row(benefit, cost);
  g.column = {{g.row[0][0], g.row[1][0]}, {g.row[0][1], g.row[1][1]}};
  g.row_labels = g.column_labels = {"Hawk", "Dove"};
  return g;
}

BimatrixGame hawk_dove_first_injurer(double benefit, double cost) {
  require_finite(benefit, cost);
  BimatrixGame g;
  g.row = hawk_dove_row(benefit, cost);
  g.column = {{0.0, 0.0}, {benefit, benefit / 2.0}};
  g.row_labels = g.column_labels = {"Hawk", "Dove"};
  return g;
}

BimatrixGame hawk_dove(HawkDoveVariant variant, double benefit, double cost) {
  return variant == HawkDoveVariant::Symmetric ? hawk_dove_symmetric(benefit, cost)
                                               : hawk_dove_first_injurer(benefit, cost);
}

std::pair<double, double> expected_payoffs(const BimatrixGame& g, const std::vector<double>& p,
                                           const std::vector<double>& q) {
  double u = 0.0, w = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      u += p[i] * q[j] * g.row[i][j];
      w += p[i] * q[j] * g.column[i][j];
    }
  }
  return {u, w};
}

double deviation_gain(const BimatrixGame& g, const std::vector<double>& p,
                      const std::vector<double>& q) {
  const auto [u, w] = expected_payoffs(g, p, q);
  double gain = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    double ui = 0.0;
    for (std::size_t j = 0; j < g.cols(); ++j) ui += q[j] * g.row[i][j];
    gain = std::max(gain, ui - u);
  }
  for (std::size_t j = 0; j < g.cols(); ++j) {
    double wj = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) wj += p[i] * g.column[i][j];
    gain = std::max(gain, wj - w);
  }
  return gain;
}

namespace {

std::vector<double> unit(std::size_t n, std::size_t k) {
  std::vector<double> v(n, 0.0);
  v[k] = 1.0;
  return v;
}

bool is_pure(const std::vector<double>& v) {
  return std::any_of(v.begin(), v.end(), [](double x) { return x >= 1.0 - 1e-12; });
}

Equilibrium make_equilibrium(const BimatrixGame& g, std::vector<double> p, std::vector<double> q) {
  Equilibrium e;
  e.payoffs = expected_payoffs(g, p, q);
  e.kind = is_pure(p) && is_pure(q) ? EquilibriumKind::Pure : EquilibriumKind::Mixed;
  e.row_strategy = std::move(p);
  e.column_strategy = std::move(q);
  return e;
}

// Solves the dense system a * x = b by Gaussian elimination with partial
// pivoting. Returns false for (numerically) singular systems.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= a[r][k] * x[k];
    x[r] = acc / a[r][r];
  }
  return true;
}

// Mixed strategy over `support` (of the mover) that makes the opponent
// indifferent across `opp_support`. payoff(i_opp, j_mover) is the opponent's
// payoff.
template <class Payoff>
std::optional<std::vector<double>> indifference(std::size_t size,
                                                const std::vector<std::size_t>& support,
                                                const std::vector<std::size_t>& opp_support,
                                                Payoff payoff) {
  const std::size_t k = support.size();
  // Unknowns: probabilities on the support, then the opponent's value.
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> b(k + 1, 0.0);
  for (std::size_t r = 0; r < opp_support.size(); ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = payoff(opp_support[r], support[c]);
    a[r][k] = -1.0;
  }
  for (std::size_t c = 0; c < k; ++c) a[k][c] = 1.0;
  b[k] = 1.0;
  std::vector<double> x;
  if (!solve_linear(std::move(a), std::move(b), x)) return std::nullopt;
  std::vector<double> strategy(size, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    if (!(x[c] >= -1e-12)) return std::nullopt;
    strategy[support[c]] = std::max(0.0, x[c]);
  }
  const double total = std::accumulate(strategy.begin(), strategy.end(), 0.0);
  if (!(total > 0.0)) return std::nullopt;
  for (double& v : strategy) v /= total;
  return strategy;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

double strategy_distance(const Equilibrium& a, const Equilibrium& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.row_strategy.size(); ++i) {
    d = std::max(d, std::abs(a.row_strategy[i] - b.row_strategy[i]));
  }
  for (std::size_t j = 0; j < a.column_strategy.size(); ++j) {
    d = std::max(d, std::abs(a.column_strategy[j] - b.column_strategy[j]));
  }
  return d;
}

}  // namespace

std::vector<Equilibrium> pure_nash(const BimatrixGame& game) {
  game.validate();
  std::vector<Equilibrium> out;
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      bool row_best = true, col_best = true;
      for (std::size_t k = 0; k < game.rows(); ++k) {
        row_best = row_best && game.row[k][j] <= game.row[i][j] + kPayoffTol;
      }
      for (std::size_t k = 0; k < game.cols(); ++k) {
        col_best = col_best && game.column[i][k] <= game.column[i][j] + kPayoffTol;
      }
      if (row_best && col_best) {
        out.push_back(make_equilibrium(game, unit(game.rows(), i), unit(game.cols(), j)));
      }
    }
  }
  return out;
}

std::vector<Equilibrium> mixed_nash_support_enum(const BimatrixGame& game) {
  game.validate();
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  if (m > 4 || n > 4) throw UsageError("support enumeration is limited to games up to 4x4");

  std::vector<Equilibrium> out = pure_nash(game);
  for (std::size_t k = 2; k <= std::min(m, n); ++k) {
    for (const auto& rows : subsets_of_size(m, k)) {
      for (const auto& cols : subsets_of_size(n, k)) {
        // q keeps the row player indifferent over `rows`; p does the same
        // for the column player over `cols`.
        auto q = indifference(n, cols, rows,
                              [&](std::size_t i, std::size_t j) { return game.row[i][j]; });
        if (!q) continue;
        auto p = indifference(m, rows, cols,
                              [&](std::size_t j, std::size_t i) { return game.column[i][j]; });
        if (!p) continue;
        if (deviation_gain(game, *p, *q) > kPayoffTol) continue;
        Equilibrium e = make_equilibrium(game, std::move(*p), std::move(*q));
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Equilibrium& f) {
          return strategy_distance(e, f) <= 1e-8;
        });
        if (!dup) out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::vector<DominanceFact> dominant_strategies(const BimatrixGame& game) {
  game.validate();
  std::vector<DominanceFact> out;
  auto scan = [&](int player, std::size_t own, std::size_t other, auto payoff) {
    for (std::size_t a = 0; a < own; ++a) {
      for (std::size_t b = 0; b < own; ++b) {
        if (a == b) continue;
        bool all_greater = true, all_geq = true, some_greater = false;
        for (std::size_t o = 0; o < other; ++o) {
          const double diff = payoff(a, o) - payoff(b, o);
          all_greater = all_greater && diff > kPayoffTol;
          all_geq = all_geq && diff >= -kPayoffTol;
          some_greater = some_greater || diff > kPayoffTol;
        }
        if (all_greater) {
          out.push_back({player, a, b, Strictness::Strict});
        } else if (all_geq && some_greater) {
          out.push_back({player, a, b, Strictness::Weak});
        }
      }
    }
  };
  scan(0, game.rows(), game.cols(),
       [&](std::size_t s, std::size_t o) { return game.row[s][o]; });
  scan(1, game.cols(), game.rows(),
       [&](std::size_t s, std::size_t o) { return game.column[o][s]; });
  return out;
}

std::string_view to_string(Behavior b) { return b == Behavior::HawkLike ? "Hawk-like" : "Dove-like"; }

std::pair<Behavior, Behavior> behavior_label(const State& s, double threshold) {
  auto label = [threshold](double v) {
    return v >= threshold ? Behavior::HawkLike : Behavior::DoveLike;
  };
  return {label(s.x), label(s.y)};
}

std::vector<CorrespondenceRow> correspondence_report(const std::vector<FixedPointReport>& reports,
                                                     const BimatrixGame& game, RowRole row_role,
                                                     double threshold) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2) {
    throw UsageError("correspondence needs a 2x2 Hawk/Dove game");
  }
  std::vector<CorrespondenceRow> out;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& fp = reports[k].point;
    if (!fp.admissible) continue;
    CorrespondenceRow row;
    row.fixed_point_index = k;
    row.location = fp.location;
    std::tie(row.x_behavior, row.y_behavior) = behavior_label(fp.location, threshold);
    auto index = [](Behavior b) -> std::size_t { return b == Behavior::HawkLike ? 0 : 1; };
    const Behavior row_b = row_role == RowRole::X ? row.x_behavior : row.y_behavior;
    const Behavior col_b = row_role == RowRole::X ? row.y_behavior : row.x_behavior;
    row.row_strategy = index(row_b);
    row.column_strategy = index(col_b);
    row.is_nash = deviation_gain(game, unit(2, row.row_strategy), unit(2, row.column_strategy)) <=
                  kPayoffTol;
    out.push_back(row);
  }
  return out;
}

}  // namespace duelmap
