#include "duelmap/cli.hpp"

#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "duelmap/attractor.hpp"
#include "duelmap/errors.hpp"
#include "duelmap/output.hpp"
#include "duelmap/scenario.hpp"
#include "duelmap/stability.hpp"

namespace duelmap {

namespace {

struct GlobalOptions {
  std::string scenario_path;
  std::string preset;
  bool strict = false;
  bool json = false;
};

struct SimulateOptions {
  std::optional<std::size_t> steps;
  std::optional<double> x0;
  std::optional<double> y0;
  std::string out_path;
  bool clamp = false;
};

struct SweepOptions {
  std::string param;
  double from = 0.0;
  double to = 1.0;
  std::size_t points = 101;
  std::size_t transient = 500;
  std::size_t samples = 200;
  bool lyapunov = false;
  std::string prefix;
};

struct GameOptions {
  std::optional<std::string> variant;
  std::optional<double> benefit;
  std::optional<double> cost;
};

std::string preset_list() {
  std::string names;
  for (const auto& s : presets()) names += (names.empty() ? "" : ", ") + s.name;
  return names;
}

std::optional<Scenario> resolve_scenario(const GlobalOptions& g, std::ostream& err) {
  std::optional<Scenario> s;
  if (!g.preset.empty()) {
    s = find_preset(g.preset);
    if (!s) throw UsageError("unknown preset \"" + g.preset + "\"; available: " + preset_list());
  } else if (!g.scenario_path.empty()) {
    s = load_scenario_file(g.scenario_path);
  } else {
    return std::nullopt;
  }
  if (g.strict) {
    require_valid(s->params, /*strict=*/true);
  } else {
    for (const auto& w : validate_params(s->params, false).warnings) err << "warning: " << w << '\n';
  }
  return s;
}

Scenario require_scenario(const GlobalOptions& g, std::ostream& err) {
  auto s = resolve_scenario(g, err);
  if (!s) throw UsageError("one of --scenario <path> or --preset <name> is required");
  return *s;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  return f;
}

int cmd_analyze(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const Scenario s = require_scenario(g, err);
  const auto reports = analyze(s.params, s.name);
  if (g.json) {
    nlohmann::json doc = {{"scenario", s.name}, {"fixed_points", analysis_json(reports)}};
    out << doc.dump(2) << '\n';
  } else {
    out << analysis_text(reports);
  }
  return 0;
}

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, std::ostream& out,
                 std::ostream& err) {
  const Scenario s = require_scenario(g, err);
  State initial = s.simulate.initial;
  if (o.x0) initial.x = *o.x0;
  if (o.y0) initial.y = *o.y0;
  const std::size_t steps = o.steps.value_or(s.simulate.steps);
  const bool clamp = s.simulate.clamp || o.clamp;
  const MapCoefficients c = derive_coefficients(s.params);

  std::ofstream file;
  if (!o.out_path.empty()) file = open_output(o.out_path);
  std::ostream& csv = o.out_path.empty() ? out : static_cast<std::ostream&>(file);
  std::ostream& info = o.out_path.empty() ? err : out;

  try {
    write_orbit_csv(csv, orbit(c, initial, steps, clamp));
  } catch (const DivergenceError& e) {
    write_orbit_csv(csv, orbit(c, initial, e.last_valid_index(), clamp));
    csv << "# diverged at t=" << e.last_valid_index() + 1 << '\n';
    info << "orbit diverged at t=" << e.last_valid_index() + 1 << '\n';
    return 3;
  }
  if (!csv) throw UsageError("failed writing " + o.out_path);

  const auto reports = analyze(s.params, s.name);
  const SettleSummary settle = summarize_settle(s.params, reports, initial);
  if (g.json) {
    info << settle_json(settle).dump() << '\n';
  } else if (!settle.target) {
    info << "settle time: no admissible attracting fixed point\n";
  } else if (!settle.time) {
    info << "settle time: not reached within budget\n";
  } else {
    info << "settle time: " << *settle.time << " steps (" << Orbit::kTimeUnit << ") to ("
         << format_sig9(settle.target->x) << ", " << format_sig9(settle.target->y)
         << "), epsilon " << format_sig9(settle.epsilon) << ", window " << settle.window << '\n';
  }
  return 0;
}

int cmd_sweep(const GlobalOptions& g, const SweepOptions& o, std::ostream& out,
              std::ostream& err) {
  auto id = param_from_name(o.param);
  if (!id) {
    std::string names;
    for (ParamId p : kAllParams) names += (names.empty() ? "" : ", ") + std::string(param_name(p));
    throw UsageError("unknown parameter \"" + o.param + "\"; valid names: " + names);
  }
  const Scenario s = require_scenario(g, err);
  SweepConfig cfg;
  cfg.parameter = *id;
  cfg.low = o.from;
  cfg.high = o.to;
  cfg.points = o.points;
  cfg.transient = o.transient;
  cfg.samples = o.samples;
  cfg.lyapunov = o.lyapunov;
  cfg.initial = s.simulate.initial;
  const auto results = sweep(s.params, cfg);

  const std::string samples_path = o.prefix + "_samples.csv";
  const std::string summary_path = o.prefix + "_summary.csv";
  {
    auto f = open_output(samples_path);
    write_sweep_samples_csv(f, results);
  }
  {
    auto f = open_output(summary_path);
    write_sweep_summary_csv(f, results);
  }
  std::size_t diverged = 0, aperiodic = 0;
  for (const auto& r : results) {
    if (r.diverged) {
      ++diverged;
    } else if (!r.period) {
      ++aperiodic;
    }
  }
  out << "wrote " << samples_path << " and " << summary_path << " (" << results.size()
      << " values, " << aperiodic << " aperiodic, " << diverged << " diverged)\n";
  return 0;
}

int cmd_game(const GlobalOptions& g, const GameOptions& o, std::ostream& out, std::ostream& err) {
  GameBlock block;
  if (auto s = resolve_scenario(g, err); s && s->game) block = *s->game;
  if (o.variant) {
    auto v = variant_from_name(*o.variant);
    if (!v) {
      throw UsageError("unknown variant \"" + *o.variant + "\"; use symmetric or first-injurer");
    }
    block.variant = *v;
  }
  if (o.benefit) block.benefit = *o.benefit;
  if (o.cost) block.cost = *o.cost;
  const GameSummary summary = summarize_game(block.build());
  if (g.json) {
    nlohmann::json doc = game_json(summary);
    doc["variant"] = std::string(to_string(block.variant));
    doc["benefit"] = block.benefit;
    doc["cost"] = block.cost;
    out << doc.dump(2) << '\n';
  } else {
    out << "hawk-dove (" << to_string(block.variant) << "), B=" << format_sig9(block.benefit)
        << ", C=" << format_sig9(block.cost) << '\n'
        << game_text(summary);
  }
  return 0;
}

int cmd_report(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const Scenario s = require_scenario(g, err);
  out << report_json(s).dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed points, stability, bifurcation sweeps and Hawk-Dove games for a "
               "two-player conflict map",
               "duelmap"};
  app.require_subcommand(1);

  GlobalOptions g;
  auto* scenario_opt =
      app.add_option("--scenario", g.scenario_path, "Scenario file (JSON)");
  auto* preset_opt = app.add_option("--preset", g.preset, "Built-in scenario: " + preset_list());
  scenario_opt->excludes(preset_opt);
  app.add_flag("--strict", g.strict, "Require every parameter in [0,1]");
  app.add_flag("--json", g.json, "JSON output");

  auto* analyze_cmd = app.add_subcommand("analyze", "Fixed points and their stability");

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Iterate the map and emit t,x,y CSV");
  simulate_cmd->add_option("--steps", sim.steps, "Number of steps");
  simulate_cmd->add_option("--x0", sim.x0, "Initial x");
  simulate_cmd->add_option("--y0", sim.y0, "Initial y");
  simulate_cmd->add_option("--out", sim.out_path, "CSV path (default: stdout)");
  simulate_cmd->add_flag("--clamp", sim.clamp, "Project states onto [0,1] after each step");

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Bifurcation sweep over one parameter");
  sweep_cmd->add_option("--param", sw.param, "Parameter name")->required();
  sweep_cmd->add_option("--from", sw.from, "Lower end of the range")->required();
  sweep_cmd->add_option("--to", sw.to, "Upper end of the range")->required();
  sweep_cmd->add_option("--points", sw.points, "Grid points, endpoints included")
      ->capture_default_str();
  sweep_cmd->add_option("--transient", sw.transient, "Discarded steps")->capture_default_str();
  sweep_cmd->add_option("--samples", sw.samples, "Retained samples")->capture_default_str();
  sweep_cmd->add_flag("--lyapunov", sw.lyapunov, "Compute largest Lyapunov exponent");
  sweep_cmd->add_option("--out", sw.prefix, "Output prefix")->required();

  GameOptions go;
  auto* game_cmd = app.add_subcommand("game", "Hawk-Dove equilibria and dominance");
  game_cmd->add_option("--variant", go.variant, "symmetric | first-injurer");
  game_cmd->add_option("--benefit", go.benefit, "Benefit B (default 2)");
  game_cmd->add_option("--cost", go.cost, "Cost C (default 1)");

  auto* report_cmd = app.add_subcommand("report", "Combined JSON report");

  for (auto* sub : {analyze_cmd, simulate_cmd, sweep_cmd, game_cmd, report_cmd}) sub->fallthrough();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("duelmap");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(g, out, err);
    if (*simulate_cmd) return cmd_simulate(g, sim, out, err);
    if (*sweep_cmd) return cmd_sweep(g, sw, out, err);
    if (*game_cmd) return cmd_game(g, go, out, err);
    if (*report_cmd) return cmd_report(g, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace duelmap
