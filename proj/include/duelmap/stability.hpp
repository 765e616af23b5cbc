#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "duelmap/model.hpp"
#include "duelmap/polynomial.hpp"

namespace duelmap {

struct SearchBox {
  double x_low = -2.0;
  double x_high = 3.0;
  double y_low = -2.0;
  double y_high = 3.0;

  bool contains(const State& s) const {
    return s.x >= x_low && s.x <= x_high && s.y >= y_low && s.y <= y_high;
  }
};

struct FixedPoint {
  State location;
  double residual = 0.0;  // ||step(s) - s||_inf
  bool admissible = false;
};

inline constexpr double kResidualBar = 1e-10;
inline constexpr double kRootDedup = 1e-8;
inline constexpr double kCrossCheckTol = 1e-6;

/// Labels from trace/determinant/discriminant rules, as a continuous-time
/// phase portrait would be read.
enum class TraceDetLabel { Center, Saddle, Node, Spiral, Degenerate };

/// Labels from eigenvalue moduli relative to one, the criterion for maps.
enum class DiscreteLabel {
  StableNode,
  StableSpiral,
  UnstableNode,
  UnstableSpiral,
  Saddle,
  NonHyperbolic
};

std::string_view to_string(TraceDetLabel label);
std::string_view to_string(DiscreteLabel label);

using EigenPair = std::pair<std::complex<double>, std::complex<double>>;

struct StabilityVerdict {
  Matrix2 jacobian;
  double trace = 0.0;
  double determinant = 0.0;
  double discriminant = 0.0;
  EigenPair eigenvalues;
  TraceDetLabel trace_det_scheme = TraceDetLabel::Degenerate;
  DiscreteLabel discrete_scheme = DiscreteLabel::NonHyperbolic;

  double spectral_radius() const {
    return std::max(std::abs(eigenvalues.first), std::abs(eigenvalues.second));
  }
  bool attracting() const {
    return discrete_scheme == DiscreteLabel::StableNode ||
           discrete_scheme == DiscreteLabel::StableSpiral;
  }
};

struct FixedPointReport {
  FixedPoint point;
  StabilityVerdict verdict;
  std::string scenario;
};

/// Fixed-point polynomial in x obtained by eliminating y:
/// P(x) = a_x - c_x[(a_y - a_y^2) + c_y(2a_y - 1)u - c_y^2 u^2] - x,  u = x - x^2.
Polynomial quartic_coefficients(const MapCoefficients& coeffs);

/// Fixed points inside `box`, sorted by x. Computed from the quartic and
/// cross-checked against a 16x16 multistart 2D Newton search; disagreement
/// raises InternalConsistencyError.
std::vector<FixedPoint> fixed_points(const ModelParams& params, const SearchBox& box = {});

/// Multistart 2D Newton search on its own, used as the independent route.
std::vector<State> newton_fixed_points(const MapCoefficients& coeffs, const SearchBox& box = {},
                                       int grid = 16);

/// Roots of lambda^2 - tr*lambda + det, ordered by (real, imag) descending.
EigenPair eigenvalues_2x2(const Matrix2& m);

StabilityVerdict classify(const Matrix2& m, double tol = 1e-9);

struct SettleOptions {
  double epsilon = 1e-3;
  std::size_t window = 10;
  std::size_t budget = 10000;
};

struct SettleOutcome {
  std::optional<std::size_t> time;
  bool diverged = false;
};

/// Smallest t with ||s_k - target||_inf < epsilon for every k in [t, t+window].
SettleOutcome settle_time(const MapCoefficients& coeffs, const State& initial,
                          const State& target, const SettleOptions& options = {});

std::vector<FixedPointReport> analyze(const ModelParams& params, std::string_view scenario = {},
                                      const SearchBox& box = {});

}  // namespace duelmap
