#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "duelmap/model.hpp"

namespace duelmap {

struct SweepConfig {
  ParamId parameter = ParamId::G;
  double low = 0.0;
  double high = 1.0;
  std::size_t points = 2;
  std::size_t transient = 500;
  std::size_t samples = 200;
  State initial{0.5, 0.5};
  double divergence_threshold = 1e6;
  bool lyapunov = false;
  std::size_t lyapunov_iterations = 5000;
  double period_tolerance = 1e-6;
  std::size_t max_period = 64;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct SweepResult {
  double value = 0.0;
  std::vector<State> samples;
  std::optional<std::size_t> period;  // empty: aperiodic (or diverged)
  std::optional<double> lyapunov;
  bool diverged = false;

  bool chaotic() const { return !diverged && !period && lyapunov && *lyapunov > 0.01; }
};

/// One result per evenly spaced grid value, endpoints included, in grid
/// order. Grid values are evaluated independently and may run in parallel.
std::vector<SweepResult> sweep(const ModelParams& params, const SweepConfig& config);

/// Smallest p <= max_period with ||s[k+p] - s[k]||_inf < tol for every k.
/// Requires at least 2*max_period samples.
std::optional<std::size_t> detect_period(std::span<const State> samples, double tol = 1e-6,
                                         std::size_t max_period = 64);

/// Largest Lyapunov exponent (natural log per step) by tangent-vector
/// iteration with renormalization, averaged after `transient` steps.
/// Returns -infinity if the tangent vector collapses to zero.
double lyapunov_max(const MapCoefficients& coeffs, const State& initial,
                    std::size_t iterations = 5000, std::size_t transient = 500,
                    double divergence_threshold = kOverflowGuard);

struct CrossingOptions {
  State initial{0.5, 0.5};
  std::size_t transient = 2000;
  std::size_t samples = 200;
  double tolerance = 1e-6;
};

/// Parameter value in `bracket` where the attracting fixed point has x* = y*,
/// located by bisection on x*(v) - y*(v).
double crossing_point(const ModelParams& params, ParamId parameter,
                      std::pair<double, double> bracket, const CrossingOptions& options = {});

/// Attracting fixed point reached from `initial`, or nullopt if the long-run
/// attractor is not period 1.
std::optional<State> attracting_fixed_point(const ModelParams& params, const State& initial,
                                            std::size_t transient = 2000,
                                            std::size_t samples = 200);

}  // namespace duelmap
