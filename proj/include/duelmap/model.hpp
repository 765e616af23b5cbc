#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace duelmap {

// The nine parameters of the conflict map. x is the weaker participant,
// y the stronger one; every field is a dimensionless fraction.
struct ModelParams {
  double P_x = 0.0;   // relative strength of x
  double P_y = 0.0;   // relative strength of y
  double TN_x = 0.0;  // technological naval capability of x
  double TN_y = 0.0;  // technological naval capability of y
  double G = 0.0;     // terrain ease; enters x's equation as G, y's as 1-G
  double D_x = 0.0;   // damage inflicted by x on y
  double D_y = 0.0;   // damage inflicted by y on x
  double E_x = 0.0;   // preparation expenses of x
  double E_y = 0.0;   // preparation expenses of y

  bool operator==(const ModelParams&) const = default;
};

enum class ParamId { P_x, P_y, TN_x, TN_y, G, D_x, D_y, E_x, E_y };

inline constexpr std::array<ParamId, 9> kAllParams = {
    ParamId::P_x, ParamId::P_y, ParamId::TN_x, ParamId::TN_y, ParamId::G,
    ParamId::D_x, ParamId::D_y, ParamId::E_x,  ParamId::E_y};

std::string_view param_name(ParamId id);
std::optional<ParamId> param_from_name(std::string_view name);
double get_param(const ModelParams& p, ParamId id);
void set_param(ModelParams& p, ParamId id, double value);

/// Grouped constants of the map:
///   x' = a_x - c_x * y(1-y)
///   y' = a_y - c_y * x(1-x)
struct MapCoefficients {
  double a_x = 0.0;
  double c_x = 0.0;
  double a_y = 0.0;
  double c_y = 0.0;

  bool operator==(const MapCoefficients&) const = default;
};

struct State {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const State&) const = default;
};

double max_norm_distance(const State& a, const State& b);

struct Matrix2 {
  std::array<std::array<double, 2>, 2> m{};

  double operator()(int r, int c) const { return m[r][c]; }
  double& operator()(int r, int c) { return m[r][c]; }
  double trace() const { return m[0][0] + m[1][1]; }
  double determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  static Matrix2 identity() { return Matrix2{{{{1.0, 0.0}, {0.0, 1.0}}}}; }
};

struct Orbit {
  static constexpr std::string_view kTimeUnit = "hours";

  State initial;
  std::vector<State> states;  // states[0] == initial

  std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
};

inline constexpr double kOverflowGuard = 1e12;

MapCoefficients derive_coefficients(const ModelParams& params);

State step(const MapCoefficients& coeffs, const State& s);

/// Iterates `steps` times from `initial`. With `clamp` each coordinate is
/// projected onto [0,1] after every step. Throws DivergenceError when a
/// coordinate exceeds kOverflowGuard in magnitude.
Orbit orbit(const MapCoefficients& coeffs, const State& initial, std::size_t steps,
            bool clamp = false);

Matrix2 jacobian_at(const MapCoefficients& coeffs, const State& s);

struct ValidationOutcome {
  bool accepted = true;
  std::vector<std::string> warnings;       // fields outside [0,1], exploration mode
  std::vector<std::string> offending;      // fields that caused rejection
};

/// Strict mode requires every field in [0,1]; exploration mode only warns.
/// Non-finite fields are rejected in either mode.
ValidationOutcome validate_params(const ModelParams& params, bool strict);

/// Throws ValidationError if validate_params rejects.
void require_valid(const ModelParams& params, bool strict);

/// Exchanges the roles of the two participants (G becomes 1-G).
ModelParams swap_roles(const ModelParams& p);
inline State swap_roles(const State& s) { return {s.y, s.x}; }

}  // namespace duelmap
