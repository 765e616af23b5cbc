#include <doctest.h>

#include <cmath>
#include <vector>

#include "duelmap/attractor.hpp"
#include "duelmap/errors.hpp"
#include "duelmap/stability.hpp"
#include "test_support.hpp"

using namespace duelmap;
using namespace duelmap::testing;

TEST_CASE("detect_period") {
  std::vector<State> constant(128, State{0.3, 0.7});
  CHECK(detect_period(constant) == std::size_t{1});

  std::vector<State> alternating;
  for (int k = 0; k < 128; ++k) alternating.push_back(k % 2 ? State{0.1, 0.2} : State{0.4, 0.2});
  CHECK(detect_period(alternating) == std::size_t{2});

  std::vector<State> drift;
  for (int k = 0; k < 128; ++k) drift.push_back({0.01 * k, 0.0});
  CHECK_FALSE(detect_period(drift).has_value());

  CHECK_THROWS_AS(detect_period(std::vector<State>(100, State{})), UsageError);

  const auto c = derive_coefficients(baseline());
  const auto tail = orbit(c, {0.5, 0.5}, 700).states;
  CHECK(detect_period(std::span(tail).subspan(500)) == std::size_t{1});
}

TEST_CASE("lyapunov_max equals the log spectral radius at attracting fixed points") {
  for (double g : {0.4, 0.64, 0.7}) {
    const auto p = with_g(g);
    const auto reports = analyze(p);
    double rho = 0.0;
    for (const auto& r : reports) {
      if (r.verdict.attracting()) rho = r.verdict.spectral_radius();
    }
    REQUIRE(rho > 0.0);
    const double lyap = lyapunov_max(derive_coefficients(p), {0.5, 0.5});
    CHECK(std::abs(lyap - std::log(rho)) < 0.02);
  }
  CHECK(std::abs(lyapunov_max(derive_coefficients(baseline()), {0.5, 0.5}) - (-1.330)) < 0.02);
  CHECK(std::abs(lyapunov_max(derive_coefficients(with_g(0.64)), {0.5, 0.5}) - (-0.578)) < 0.02);
}

TEST_CASE("lyapunov_max on a stable period-2 cycle is negative") {
  // Coefficients found by random search: the two interleaved subchains of
  // this map settle on different fixed points of the two-step map.
  const MapCoefficients c{0.058941988405759815, 0.3869117768787991, 0.6588904880357904,
                          -4.252985591091019};
  const State start{0.5351530539390383, 0.49222210917430154};
  const auto states = orbit(c, start, 1200).states;
  REQUIRE(detect_period(std::span(states).subspan(1000)) == std::size_t{2});
  CHECK(lyapunov_max(c, start) < 0.0);
}

TEST_CASE("lyapunov_max errors") {
  const MapCoefficients wild{0.0, -10.0, 0.0, -10.0};
  CHECK_THROWS_AS(lyapunov_max(wild, {3.0, 3.0}), DivergenceError);
  CHECK_THROWS_AS(lyapunov_max(derive_coefficients(baseline()), {0.5, 0.5}, 100, 100),
                  UsageError);
}

TEST_CASE("sweep over G: period 1 until the fixed points vanish") {
  // The two fixed points merge at G ~= 0.721935 (numpy root count of the
  // eliminated quartic); beyond it every orbit escapes.
  SweepConfig cfg;
  cfg.parameter = ParamId::G;
  cfg.low = 0.05;
  cfg.high = 0.95;
  cfg.points = 19;
  const auto results = sweep(baseline(), cfg);
  REQUIRE(results.size() == 19);
  CHECK(results.front().value == 0.05);
  CHECK(results.back().value == 0.95);
  for (const auto& r : results) {
    if (r.value < 0.72) {
      CHECK_FALSE(r.diverged);
      CHECK(r.period == std::size_t{1});
      CHECK(r.samples.size() == cfg.samples);
    } else {
      CHECK(r.diverged);
      CHECK(r.samples.empty());
    }
  }
  const auto& at04 = results[7];
  CHECK(at04.value == doctest::Approx(0.4));
  CHECK(max_norm_distance(at04.samples.front(), kBaselineE1) < 1e-9);

  CHECK(fixed_points(with_g(0.7219)).size() == 2);
  CHECK(fixed_points(with_g(0.7220)).empty());
}

TEST_CASE("sweep at a single G value with Lyapunov") {
  SweepConfig cfg;
  cfg.parameter = ParamId::G;
  cfg.low = 0.4;
  cfg.high = 0.4 + 1e-9;
  cfg.lyapunov = true;
  const auto results = sweep(baseline(), cfg);
  REQUIRE(results.size() == 2);
  for (const auto& r : results) {
    CHECK(r.period == std::size_t{1});
    REQUIRE(r.lyapunov);
    CHECK(std::abs(*r.lyapunov - std::log(0.264021)) < 0.02);
  }
  CHECK(max_norm_distance(results[0].samples.back(), results[1].samples.back()) < 1e-8);
}

TEST_CASE("sweep over TN_x reaches period doubling and chaos") {
  SweepConfig cfg;
  cfg.parameter = ParamId::TN_x;
  cfg.low = -1.0;
  cfg.high = 1.0;
  cfg.points = 2001;
  cfg.lyapunov = true;
  const auto results = sweep(baseline(), cfg);
  REQUIRE(results.size() == 2001);
  bool period4 = false, chaos = false, diverged = false;
  for (const auto& r : results) {
    period4 = period4 || r.period == std::size_t{4};
    chaos = chaos || r.chaotic();
    diverged = diverged || r.diverged;
    if (r.diverged) {
      CHECK_FALSE(r.period);
      CHECK_FALSE(r.lyapunov);
      CHECK(r.samples.empty());
    }
    if (r.period) {
      for (std::size_t k = 0; k + *r.period < r.samples.size(); ++k) {
        CHECK(max_norm_distance(r.samples[k + *r.period], r.samples[k]) < cfg.period_tolerance);
      }
      if (r.lyapunov) CHECK(*r.lyapunov < 0.01);
    }
  }
  CHECK(period4);
  CHECK(chaos);
  CHECK(diverged);
}

TEST_CASE("sweep is deterministic and independent of the thread count") {
  SweepConfig cfg;
  cfg.parameter = ParamId::TN_x;
  cfg.low = -0.25;
  cfg.high = 0.1;
  cfg.points = 101;
  cfg.lyapunov = true;
  cfg.threads = 1;
  const auto serial = sweep(baseline(), cfg);
  cfg.threads = 8;
  const auto parallel = sweep(baseline(), cfg);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].value == parallel[i].value);
    CHECK(serial[i].samples == parallel[i].samples);
    CHECK(serial[i].period == parallel[i].period);
    CHECK(serial[i].lyapunov == parallel[i].lyapunov);
  }
}

TEST_CASE("doubling the transient leaves period-1 and period-2 results unchanged") {
  SweepConfig cfg;
  cfg.parameter = ParamId::G;
  cfg.low = 0.05;
  cfg.high = 0.95;
  cfg.points = 37;
  const auto a = sweep(baseline(), cfg);
  cfg.transient = 1000;
  const auto b = sweep(baseline(), cfg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].period == std::size_t{1} || a[i].period == std::size_t{2}) {
      CHECK(b[i].period == a[i].period);
      CHECK(max_norm_distance(a[i].samples.front(), b[i].samples.front()) < 1e-6);
    }
  }
}

TEST_CASE("sweep config validation") {
  SweepConfig cfg;
  cfg.low = 0.5;
  cfg.high = 0.5;
  CHECK_THROWS_AS(sweep(baseline(), cfg), UsageError);
  cfg.high = 0.6;
  cfg.points = 1;
  CHECK_THROWS_AS(sweep(baseline(), cfg), UsageError);
  cfg.points = 3;
  cfg.samples = 0;
  CHECK_THROWS_AS(sweep(baseline(), cfg), UsageError);
}

TEST_CASE("crossing_point over G") {
  const double g = crossing_point(baseline(), ParamId::G, {0.5, 0.7});
  CHECK(std::abs(g - 0.6375) < 1e-4);

  // Closed form: at G = 0.6375 both coordinates equal 2/3.
  const auto fp = attracting_fixed_point(with_g(0.6375), {0.5, 0.5});
  REQUIRE(fp);
  CHECK(std::abs(fp->x - 2.0 / 3.0) < 1e-9);
  CHECK(std::abs(fp->y - 2.0 / 3.0) < 1e-9);

  CHECK_THROWS_WITH_AS(crossing_point(baseline(), ParamId::G, {0.05, 0.3}),
                       "no crossing in bracket", Error);
}

TEST_CASE("crossing_point returns an endpoint where the gap vanishes") {
  // With identical players and G = 0.5 the attractor is symmetric: x* = y*.
  ModelParams p = baseline();
  p.P_y = p.P_x;
  p.TN_y = p.TN_x;
  p.D_x = p.D_y;
  p.E_y = p.E_x;
  p.G = 0.5;
  const auto sym = attracting_fixed_point(p, {0.5, 0.5});
  REQUIRE(sym);
  REQUIRE(sym->x == sym->y);
  CHECK(crossing_point(p, ParamId::G, {0.5, 0.6}) == 0.5);
}
