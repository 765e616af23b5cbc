#include "duelmap/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "duelmap/errors.hpp"

namespace duelmap {

using nlohmann::json;

std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", round6(v));
  return buf;
}

std::string complex_text(const std::complex<double>& z) {
  char buf[96];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.6f", round6(z.real()));
  } else if (round6(z.real()) == 0.0) {
    std::snprintf(buf, sizeof buf, "%+.6fi", z.imag());
  } else {
    std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
  }
  return buf;
}

std::string strategy_text(const std::vector<double>& v, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    if (i < labels.size()) os << labels[i] << "=";
    os << format_sig9(v[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace

void write_orbit_csv(std::ostream& out, const Orbit& orbit) {
  out << "t,x,y\n";
  for (std::size_t t = 0; t < orbit.states.size(); ++t) {
    out << t << ',' << format_sig9(orbit.states[t].x) << ',' << format_sig9(orbit.states[t].y)
        << '\n';
  }
}

void write_sweep_samples_csv(std::ostream& out, const std::vector<SweepResult>& results) {
  out << "param,sample_index,x,y\n";
  for (const auto& r : results) {
    const std::string value = format_sig9(r.value);
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
      out << value << ',' << k << ',' << format_sig9(r.samples[k].x) << ','
          << format_sig9(r.samples[k].y) << '\n';
    }
  }
}

void write_sweep_summary_csv(std::ostream& out, const std::vector<SweepResult>& results) {
  out << "param,period,lyapunov_max,diverged\n";
  for (const auto& r : results) {
    out << format_sig9(r.value) << ',';
    if (r.period) out << *r.period;
    out << ',';
    if (r.lyapunov) out << format_sig9(*r.lyapunov);
    out << ',' << (r.diverged ? 1 : 0) << '\n';
  }
}

SettleSummary summarize_settle(const ModelParams& params,
                               const std::vector<FixedPointReport>& reports, const State& initial,
                               const SettleOptions& options) {
  SettleSummary summary;
  summary.epsilon = options.epsilon;
  summary.window = options.window;
  const MapCoefficients c = derive_coefficients(params);

  State end = initial;
  for (std::size_t t = 0; t < options.budget; ++t) {
    end = step(c, end);
    if (!(std::abs(end.x) <= kOverflowGuard && std::abs(end.y) <= kOverflowGuard)) {
      summary.diverged = true;
      return summary;
    }
  }
  for (const auto& r : reports) {
    if (!r.point.admissible || !r.verdict.attracting()) continue;
    if (!summary.target || max_norm_distance(r.point.location, end) <
                               max_norm_distance(*summary.target, end)) {
      summary.target = r.point.location;
    }
  }
  if (!summary.target) return summary;
  const SettleOutcome outcome = settle_time(c, initial, *summary.target, options);
  summary.time = outcome.time;
  summary.diverged = outcome.diverged;
  return summary;
}

json analysis_json(const std::vector<FixedPointReport>& reports) {
  json arr = json::array();
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    const auto& v = r.verdict;
    json eig = json::array();
    for (const auto& z : {v.eigenvalues.first, v.eigenvalues.second}) {
      eig.push_back({{"re", z.real()}, {"im", z.imag()}});
    }
    arr.push_back({
        {"label", "E" + std::to_string(k + 1)},
        {"location", {{"x", round6(r.point.location.x)}, {"y", round6(r.point.location.y)}}},
        {"residual", r.point.residual},
        {"admissible", r.point.admissible},
        {"jacobian", {{v.jacobian(0, 0), v.jacobian(0, 1)}, {v.jacobian(1, 0), v.jacobian(1, 1)}}},
        {"trace", v.trace},
        {"determinant", v.determinant},
        {"discriminant", v.discriminant},
        {"eigenvalues", eig},
        {"spectral_radius", v.spectral_radius()},
        {"trace_det_scheme", std::string(to_string(v.trace_det_scheme))},
        {"discrete_scheme", std::string(to_string(v.discrete_scheme))},
    });
  }
  return arr;
}

std::string analysis_text(const std::vector<FixedPointReport>& reports) {
  std::ostringstream os;
  if (!reports.empty() && !reports.front().scenario.empty()) {
    os << "scenario " << reports.front().scenario << ": " << reports.size()
       << " fixed point(s)\n";
  }
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    const auto& v = r.verdict;
    char residual[32];
    std::snprintf(residual, sizeof residual, "%.2e", r.point.residual);
    os << "E" << k + 1 << " = (" << fixed6(r.point.location.x) << ", "
       << fixed6(r.point.location.y) << ")  residual " << residual << "  "
       << (r.point.admissible ? "admissible" : "inadmissible (outside [0,1])") << '\n';
    os << "  jacobian [[0, " << fixed6(v.jacobian(0, 1)) << "], [" << fixed6(v.jacobian(1, 0))
       << ", 0]]\n";
    os << "  trace " << fixed6(v.trace) << "  det " << fixed6(v.determinant) << "  discriminant "
       << fixed6(v.discriminant) << '\n';
    os << "  eigenvalues " << complex_text(v.eigenvalues.first) << ", "
       << complex_text(v.eigenvalues.second) << "  (modulus " << fixed6(v.spectral_radius())
       << ")\n";
    os << "  trace-det scheme: " << to_string(v.trace_det_scheme)
       << "  discrete scheme: " << to_string(v.discrete_scheme) << '\n';
  }
  return os.str();
}

GameSummary summarize_game(const BimatrixGame& game) {
  return {game, mixed_nash_support_enum(game), dominant_strategies(game)};
}

json game_json(const GameSummary& s) {
  json eq = json::array();
  for (const auto& e : s.equilibria) {
    eq.push_back({{"kind", e.kind == EquilibriumKind::Pure ? "pure" : "mixed"},
                  {"row_strategy", e.row_strategy},
                  {"column_strategy", e.column_strategy},
                  {"payoffs", {e.payoffs.first, e.payoffs.second}}});
  }
  json dom = json::array();
  for (const auto& d : s.dominance) {
    const auto& labels = d.player == 0 ? s.game.row_labels : s.game.column_labels;
    auto name = [&](std::size_t i) { return i < labels.size() ? labels[i] : std::to_string(i); };
    dom.push_back({{"player", d.player == 0 ? "row" : "column"},
                   {"dominating", name(d.dominating)},
                   {"dominated", name(d.dominated)},
                   {"strictness", d.strictness == Strictness::Strict ? "strict" : "weak"}});
  }
  return {{"row_payoffs", s.game.row},
          {"column_payoffs", s.game.column},
          {"row_labels", s.game.row_labels},
          {"column_labels", s.game.column_labels},
          {"equilibria", eq},
          {"dominance", dom}};
}

std::string game_text(const GameSummary& s) {
  std::ostringstream os;
  const auto& g = s.game;
  auto label = [](const std::vector<std::string>& l, std::size_t i) {
    return i < l.size() ? l[i] : std::to_string(i);
  };
  os << "payoffs (row, column):\n";
  for (std::size_t i = 0; i < g.rows(); ++i) {
    os << "  " << label(g.row_labels, i) << ":";
    for (std::size_t j = 0; j < g.cols(); ++j) {
      os << "  vs " << label(g.column_labels, j) << " (" << format_sig9(g.row[i][j]) << ", "
         << format_sig9(g.column[i][j]) << ")";
    }
    os << '\n';
  }
  os << "equilibria:\n";
  for (const auto& e : s.equilibria) {
    os << "  " << (e.kind == EquilibriumKind::Pure ? "pure " : "mixed") << "  row "
       << strategy_text(e.row_strategy, g.row_labels) << "  column "
       << strategy_text(e.column_strategy, g.column_labels) << "  payoffs ("
       << format_sig9(e.payoffs.first) << ", " << format_sig9(e.payoffs.second) << ")\n";
  }
  os << "dominance:\n";
  if (s.dominance.empty()) os << "  none\n";
  for (const auto& d : s.dominance) {
    const auto& labels = d.player == 0 ? g.row_labels : g.column_labels;
    os << "  " << (d.player == 0 ? "row" : "column") << " player: " << label(labels, d.dominating)
       << (d.strictness == Strictness::Strict ? " strictly" : " weakly") << " dominates "
       << label(labels, d.dominated) << '\n';
  }
  return os.str();
}

json settle_json(const SettleSummary& s) {
  json j = {{"epsilon", s.epsilon}, {"window", s.window}, {"diverged", s.diverged}};
  j["target"] = s.target ? json{{"x", round6(s.target->x)}, {"y", round6(s.target->y)}} : json();
  j["settle_time"] = s.time ? json(*s.time) : json();
  return j;
}

namespace {

template <class Fn>
auto tagged(const char* component, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw TaggedError(component, e);
  }
}

}  // namespace

json report_json(const Scenario& scenario) {
  const auto reports =
      tagged("stability-analysis", [&] { return analyze(scenario.params, scenario.name); });
  const GameBlock block = scenario.game.value_or(GameBlock{});
  const BimatrixGame game = tagged("bimatrix-game", [&] { return block.build(); });

  json behavior = json::array();
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto [bx, by] = behavior_label(reports[k].point.location);
    behavior.push_back({{"label", "E" + std::to_string(k + 1)},
                        {"x", std::string(to_string(bx))},
                        {"y", std::string(to_string(by))}});
  }

  json corr = json::array();
  const auto rows =
      tagged("bimatrix-game", [&] { return correspondence_report(reports, game); });
  for (const auto& row : rows) {
    corr.push_back({{"fixed_point", "E" + std::to_string(row.fixed_point_index + 1)},
                    {"x_behavior", std::string(to_string(row.x_behavior))},
                    {"y_behavior", std::string(to_string(row.y_behavior))},
                    {"profile",
                     {{"row", game.row_labels[row.row_strategy]},
                      {"column", game.column_labels[row.column_strategy]}}},
                    {"nash_equilibrium", row.is_nash}});
  }

  const SettleSummary settle = tagged("stability-analysis", [&] {
    return summarize_settle(scenario.params, reports, scenario.simulate.initial);
  });

  return {{"scenario", scenario.name},
          {"params", json::parse(serialize_scenario(scenario))["params"]},
          {"fixed_points", analysis_json(reports)},
          {"behavior", behavior},
          {"game",
           {{"variant", std::string(to_string(block.variant))},
            {"benefit", block.benefit},
            {"cost", block.cost},
            {"row_player", "x"},
            {"column_player", "y"}}},
          {"correspondence", corr},
          {"settle", settle_json(settle)}};
}

}  // namespace duelmap
