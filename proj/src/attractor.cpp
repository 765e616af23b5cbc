#include "duelmap/attractor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "duelmap/errors.hpp"
#include "duelmap/stability.hpp"

namespace duelmap {

namespace {

bool escaped(const State& s, double threshold) {
  return !(std::abs(s.x) <= threshold && std::abs(s.y) <= threshold);
}

SweepResult evaluate(const ModelParams& base, const SweepConfig& cfg, double value) {
  SweepResult r;
  r.value = value;
  ModelParams p = base;
  set_param(p, cfg.parameter, value);
  require_valid(p, /*strict=*/false);
  const MapCoefficients c = derive_coefficients(p);

  State s = cfg.initial;
  for (std::size_t t = 0; t < cfg.transient; ++t) {
    s = step(c, s);
    if (escaped(s, cfg.divergence_threshold)) {
      r.diverged = true;
      return r;
    }
  }
  r.samples.reserve(cfg.samples);
  r.samples.push_back(s);
  while (r.samples.size() < cfg.samples) {
    s = step(c, s);
    if (escaped(s, cfg.divergence_threshold)) {
      r.diverged = true;
      r.samples.clear();
      return r;
    }
    r.samples.push_back(s);
  }

  const std::size_t p_max = std::min(cfg.max_period, cfg.samples / 2);
  if (p_max >= 1) r.period = detect_period(r.samples, cfg.period_tolerance, p_max);

  if (cfg.lyapunov) {
    try {
      const std::size_t iterations = std::max(cfg.lyapunov_iterations, cfg.transient + 1);
      r.lyapunov = lyapunov_max(c, cfg.initial, iterations, cfg.transient,
                                cfg.divergence_threshold);
    } catch (const DivergenceError&) {
      r.diverged = true;
      r.samples.clear();
      r.period.reset();
      r.lyapunov.reset();
    }
  }
  return r;
}

}  // namespace

void SweepConfig::validate() const {
  if (!(std::isfinite(low) && std::isfinite(high)) || !(low < high)) {
    throw UsageError("sweep range requires finite low < high");
  }
  if (points < 2) throw UsageError("sweep requires at least 2 points");
  if (transient < 1 || samples < 1) throw UsageError("transient and samples must be >= 1");
  if (!(std::isfinite(initial.x) && std::isfinite(initial.y))) {
    throw UsageError("sweep initial state must be finite");
  }
}

std::vector<SweepResult> sweep(const ModelParams& params, const SweepConfig& config) {
  config.validate();
  const std::size_t n = config.points;
  std::vector<SweepResult> results(n);
  auto value_at = [&](std::size_t i) {
    if (i + 1 == n) return config.high;
    return config.low + (config.high - config.low) * static_cast<double>(i) /
                            static_cast<double>(n - 1);
  };

  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(n, 64)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        results[i] = evaluate(params, config, value_at(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::optional<std::size_t> detect_period(std::span<const State> samples, double tol,
                                         std::size_t max_period) {
  if (max_period < 1 || samples.size() < 2 * max_period) {
    throw UsageError("detect_period needs at least " + std::to_string(2 * max_period) +
                     " samples, got " + std::to_string(samples.size()));
  }
  for (std::size_t p = 1; p <= max_period; ++p) {
    bool ok = true;
    for (std::size_t k = 0; k + p < samples.size() && ok; ++k) {
      ok = max_norm_distance(samples[k + p], samples[k]) < tol;
    }
    if (ok) return p;
  }
  return std::nullopt;
}

double lyapunov_max(const MapCoefficients& coeffs, const State& initial, std::size_t iterations,
                    std::size_t transient, double divergence_threshold) {
  if (iterations <= transient) throw UsageError("lyapunov_max requires iterations > transient");
  State s = initial;
  std::size_t t = 0;
  for (; t < transient; ++t) {
    s = step(coeffs, s);
    if (escaped(s, divergence_threshold)) {
      throw DivergenceError("orbit diverged at t=" + std::to_string(t + 1), t);
    }
  }
  // A generic start direction: the zero-diagonal Jacobian couples x only to
  // y, so an axis-aligned vector would probe a single interleaved subchain.
  double vx = 1.0 / std::sqrt(2.0);
  double vy = vx;
  double sum = 0.0;
  for (; t < iterations; ++t) {
    const Matrix2 j = jacobian_at(coeffs, s);
    const double nx = j(0, 1) * vy;
    const double ny = j(1, 0) * vx;
    const double norm = std::hypot(nx, ny);
    if (norm == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(norm);
    vx = nx / norm;
    vy = ny / norm;
    s = step(coeffs, s);
    if (escaped(s, divergence_threshold)) {
      throw DivergenceError("orbit diverged at t=" + std::to_string(t + 1), t);
    }
  }
  return sum / static_cast<double>(iterations - transient);
}

std::optional<State> attracting_fixed_point(const ModelParams& params, const State& initial,
                                            std::size_t transient, std::size_t samples) {
  const MapCoefficients c = derive_coefficients(params);
  std::vector<State> tail;
  tail.reserve(samples);
  State s = initial;
  for (std::size_t t = 0; t < transient + samples; ++t) {
    s = step(c, s);
    if (escaped(s, kOverflowGuard)) return std::nullopt;
    if (t >= transient) tail.push_back(s);
  }
  const auto period = detect_period(tail, 1e-6, std::min<std::size_t>(64, samples / 2));
  if (period != std::size_t{1}) return std::nullopt;

  // Snap onto the exact fixed point nearest the converged orbit.
  SearchBox box;
  box.x_low = std::min(box.x_low, s.x - 1.0);
  box.x_high = std::max(box.x_high, s.x + 1.0);
  box.y_low = std::min(box.y_low, s.y - 1.0);
  box.y_high = std::max(box.y_high, s.y + 1.0);
  std::optional<State> best;
  for (const auto& fp : fixed_points(params, box)) {
    if (!best || max_norm_distance(fp.location, s) < max_norm_distance(*best, s)) {
      best = fp.location;
    }
  }
  if (!best || max_norm_distance(*best, s) > 1e-4) return s;
  return best;
}

double crossing_point(const ModelParams& params, ParamId parameter,
                      std::pair<double, double> bracket, const CrossingOptions& options) {
  auto gap = [&](double v) {
    ModelParams p = params;
    set_param(p, parameter, v);
    require_valid(p, /*strict=*/false);
    const auto fp = attracting_fixed_point(p, options.initial, options.transient, options.samples);
    if (!fp) {
      throw Error("attractor at " + std::string(param_name(parameter)) + "=" + std::to_string(v) +
                  " is not period 1");
    }
    return fp->x - fp->y;
  };

  double lo = bracket.first;
  double hi = bracket.second;
  if (!(lo <= hi)) std::swap(lo, hi);
  double glo = gap(lo);
  const double ghi = gap(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo < 0.0) == (ghi < 0.0)) throw Error("no crossing in bracket");
  while (hi - lo >= options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gap(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace duelmap
