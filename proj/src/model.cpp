#include "duelmap/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "duelmap/errors.hpp"

namespace duelmap {

namespace {

constexpr std::array<std::string_view, 9> kNames = {
    "P_x", "P_y", "TN_x", "TN_y", "G", "D_x", "D_y", "E_x", "E_y"};

bool finite(const State& s) { return std::isfinite(s.x) && std::isfinite(s.y); }

}  // namespace

std::string_view param_name(ParamId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<ParamId> param_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllParams[i];
  }
  return std::nullopt;
}

double get_param(const ModelParams& p, ParamId id) {
  switch (id) {
    case ParamId::P_x: return p.P_x;
    case ParamId::P_y: return p.P_y;
    case ParamId::TN_x: return p.TN_x;
    case ParamId::TN_y: return p.TN_y;
    case ParamId::G: return p.G;
    case ParamId::D_x: return p.D_x;
    case ParamId::D_y: return p.D_y;
    case ParamId::E_x: return p.E_x;
    case ParamId::E_y: return p.E_y;
  }
  return 0.0;
}

void set_param(ModelParams& p, ParamId id, double value) {
  switch (id) {
    case ParamId::P_x: p.P_x = value; break;
    case ParamId::P_y: p.P_y = value; break;
    case ParamId::TN_x: p.TN_x = value; break;
    case ParamId::TN_y: p.TN_y = value; break;
    case ParamId::G: p.G = value; break;
    case ParamId::D_x: p.D_x = value; break;
    case ParamId::D_y: p.D_y = value; break;
    case ParamId::E_x: p.E_x = value; break;
    case ParamId::E_y: p.E_y = value; break;
  }
}

double max_norm_distance(const State& a, const State& b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

MapCoefficients derive_coefficients(const ModelParams& params) {
  for (ParamId id : kAllParams) {
    if (!std::isfinite(get_param(params, id))) {
      throw ValidationError("parameter " + std::string(param_name(id)) + " is not finite",
                            {std::string(param_name(id))});
    }
  }
  MapCoefficients c;
  c.a_x = params.P_x + params.TN_x;
  c.c_x = 4.0 * params.G * (params.D_y + params.E_x);
  c.a_y = params.P_y + params.TN_y;
  c.c_y = 4.0 * (1.0 - params.G) * (params.D_x + params.E_y);
  return c;
}

State step(const MapCoefficients& coeffs, const State& s) {
  if (!finite(s)) throw ValidationError("state is not finite", {"x", "y"});
  return {coeffs.a_x - coeffs.c_x * s.y * (1.0 - s.y),
          coeffs.a_y - coeffs.c_y * s.x * (1.0 - s.x)};
}

Orbit orbit(const MapCoefficients& coeffs, const State& initial, std::size_t steps,
            bool clamp) {
  if (!finite(initial)) throw ValidationError("initial state is not finite", {"x", "y"});
  Orbit out;
  out.initial = initial;
  out.states.reserve(steps + 1);
  out.states.push_back(initial);
  State s = initial;
  for (std::size_t t = 1; t <= steps; ++t) {
    s = step(coeffs, s);
    if (!(std::abs(s.x) <= kOverflowGuard && std::abs(s.y) <= kOverflowGuard)) {
      throw DivergenceError("orbit diverged at t=" + std::to_string(t), t - 1);
    }
    if (clamp) {
      s.x = std::clamp(s.x, 0.0, 1.0);
      s.y = std::clamp(s.y, 0.0, 1.0);
    }
    out.states.push_back(s);
  }
  return out;
}

Matrix2 jacobian_at(const MapCoefficients& coeffs, const State& s) {
  Matrix2 j;
  j(0, 1) = coeffs.c_x * (2.0 * s.y - 1.0);
  j(1, 0) = coeffs.c_y * (2.0 * s.x - 1.0);
  return j;
}

ValidationOutcome validate_params(const ModelParams& params, bool strict) {
  ValidationOutcome out;
  for (ParamId id : kAllParams) {
    const double v = get_param(params, id);
    const std::string name(param_name(id));
    if (!std::isfinite(v)) {
      out.accepted = false;
      out.offending.push_back(name);
    } else if (v < 0.0 || v > 1.0) {
      if (strict) {
        out.accepted = false;
        out.offending.push_back(name);
      } else {
        out.warnings.push_back(name + " = " + std::to_string(v) + " lies outside [0,1]");
      }
    }
  }
  return out;
}

void require_valid(const ModelParams& params, bool strict) {
  auto outcome = validate_params(params, strict);
  if (outcome.accepted) return;
  std::string msg = "invalid parameters:";
  for (const auto& f : outcome.offending) msg += " " + f;
  msg += strict ? " (strict mode requires finite values in [0,1])" : " (must be finite)";
  throw ValidationError(msg, outcome.offending);
}

ModelParams swap_roles(const ModelParams& p) {
  ModelParams q;
  q.P_x = p.P_y;
  q.P_y = p.P_x;
  q.TN_x = p.TN_y;
  q.TN_y = p.TN_x;
  q.G = 1.0 - p.G;
  q.D_x = p.D_y;
  q.D_y = p.D_x;
  q.E_x = p.E_y;
  q.E_y = p.E_x;
  return q;
}

}  // namespace duelmap
