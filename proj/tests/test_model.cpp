#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "duelmap/errors.hpp"
#include "duelmap/model.hpp"
#include "test_support.hpp"

using namespace duelmap;
using namespace duelmap::testing;

TEST_CASE("derive_coefficients groups the baseline parameters") {
  const auto c = derive_coefficients(baseline());
  CHECK(c.a_x == doctest::Approx(0.95).epsilon(1e-14));
  CHECK(c.c_x == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(c.a_y == doctest::Approx(1.15).epsilon(1e-14));
  CHECK(c.c_y == doctest::Approx(3.6).epsilon(1e-14));

  CHECK(derive_coefficients(with_g(0.0)).c_x == 0.0);

  const auto saronic = derive_coefficients(with_g(0.64));
  CHECK(saronic.c_x == doctest::Approx(1.28).epsilon(1e-14));
  CHECK(saronic.c_y == doctest::Approx(2.16).epsilon(1e-14));

  CHECK(derive_coefficients(baseline()) == derive_coefficients(baseline()));
}

TEST_CASE("derive_coefficients rejects non-finite input") {
  ModelParams p = baseline();
  p.E_y = std::nan("");
  CHECK_THROWS_AS(derive_coefficients(p), ValidationError);
}

TEST_CASE("step") {
  const auto c = derive_coefficients(baseline());
  const State s = step(c, {0.5, 0.5});
  CHECK(s.x == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(s.y == doctest::Approx(0.25).epsilon(1e-14));

  const MapCoefficients flat{0.3, 0.0, 0.9, 0.0};
  CHECK(step(flat, {-4.0, 17.0}) == State{0.3, 0.9});

  CHECK(max_norm_distance(step(c, kBaselineE1), kBaselineE1) < 1e-12);
  CHECK_THROWS_AS(step(c, {INFINITY, 0.0}), ValidationError);
}

TEST_CASE("orbit reproduces hand iteration and converges to E1") {
  const auto c = derive_coefficients(baseline());
  const Orbit o = orbit(c, {0.5, 0.5}, 24);
  REQUIRE(o.states.size() == 25);
  CHECK(o.states[0] == State{0.5, 0.5});
  CHECK(o.states[1].x == doctest::Approx(0.75));
  CHECK(o.states[1].y == doctest::Approx(0.25));
  CHECK(o.states[2].x == doctest::Approx(0.8));
  CHECK(o.states[2].y == doctest::Approx(0.475));
  CHECK(o.states[3].x == doctest::Approx(0.7505));
  CHECK(o.states[3].y == doctest::Approx(0.574));
  CHECK(max_norm_distance(o.states[24], kBaselineE1) < 1e-6);

  for (std::size_t t = 0; t + 1 < o.states.size(); ++t) {
    CHECK(step(c, o.states[t]) == o.states[t + 1]);
  }
}

TEST_CASE("orbit edge cases") {
  const auto c = derive_coefficients(baseline());
  const Orbit zero = orbit(c, {0.2, 0.9}, 0);
  REQUIRE(zero.states.size() == 1);
  CHECK(zero.states[0] == State{0.2, 0.9});

  SUBCASE("clamp projects onto the unit square") {
    const Orbit o = orbit(c, {0.5, 0.5}, 50, /*clamp=*/true);
    for (const auto& s : o.states) {
      CHECK(s.x >= 0.0);
      CHECK(s.x <= 1.0);
      CHECK(s.y >= 0.0);
      CHECK(s.y <= 1.0);
    }
  }

  SUBCASE("divergence carries the last valid index") {
    const MapCoefficients wild{0.0, -10.0, 0.0, -10.0};
    try {
      orbit(wild, {3.0, 3.0}, 100);
      FAIL("expected divergence");
    } catch (const DivergenceError& e) {
      const Orbit partial = orbit(wild, {3.0, 3.0}, e.last_valid_index());
      CHECK(std::abs(partial.states.back().x) <= kOverflowGuard);
      CHECK(std::abs(step(wild, partial.states.back()).x) > kOverflowGuard);
    }
  }
}

TEST_CASE("orbit replay is bit-identical") {
  const auto c = derive_coefficients(with_g(0.64));
  const Orbit a = orbit(c, {0.1, 0.7}, 500);
  const Orbit b = orbit(c, {0.1, 0.7}, 500);
  CHECK(a.states == b.states);
}

TEST_CASE("jacobian_at") {
  const auto c = derive_coefficients(baseline());
  const Matrix2 j = jacobian_at(c, {0.3, 0.5});
  CHECK(j(0, 0) == 0.0);
  CHECK(j(1, 1) == 0.0);
  CHECK(j(0, 1) == 0.0);

  const Matrix2 e1 = jacobian_at(c, kBaselineE1);
  CHECK(e1(1, 0) == doctest::Approx(1.803).epsilon(1e-3));
  CHECK(e1(0, 1) == doctest::Approx(-0.038654).epsilon(1e-4));

  const Matrix2 e2 = jacobian_at(c, kBaselineE2);
  CHECK(e2(1, 0) == doctest::Approx(3.314021).epsilon(1e-6));
  CHECK(e2(0, 1) == doctest::Approx(0.820304).epsilon(1e-6));
}

TEST_CASE("jacobian agrees with central finite differences at 100 random states") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = derive_coefficients(random_params(rng));
    const State s{u(rng), u(rng)};
    const Matrix2 j = jacobian_at(c, s);
    const State xp = step(c, {s.x + h, s.y}), xm = step(c, {s.x - h, s.y});
    const State yp = step(c, {s.x, s.y + h}), ym = step(c, {s.x, s.y - h});
    const double fd[2][2] = {{(xp.x - xm.x) / (2 * h), (yp.x - ym.x) / (2 * h)},
                             {(xp.y - xm.y) / (2 * h), (yp.y - ym.y) / (2 * h)}};
    for (int r = 0; r < 2; ++r) {
      for (int k = 0; k < 2; ++k) {
        const double scale = std::max(1.0, std::abs(j(r, k)));
        CHECK(std::abs(fd[r][k] - j(r, k)) / scale < 1e-6);
      }
    }
    CHECK(j.trace() == 0.0);
  }
}

TEST_CASE("role swap commutes with step") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const ModelParams p = random_params(rng);
    const State s{u(rng), u(rng)};
    const State lhs = swap_roles(step(derive_coefficients(p), s));
    const State rhs = step(derive_coefficients(swap_roles(p)), swap_roles(s));
    CHECK(max_norm_distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("validate_params") {
  auto ok = validate_params(baseline(), true);
  CHECK(ok.accepted);
  CHECK(ok.warnings.empty());

  ModelParams p = baseline();
  p.TN_x = -0.5;
  auto strict = validate_params(p, true);
  CHECK_FALSE(strict.accepted);
  REQUIRE(strict.offending.size() == 1);
  CHECK(strict.offending[0] == "TN_x");
  CHECK_THROWS_AS(require_valid(p, true), ValidationError);

  auto loose = validate_params(p, false);
  CHECK(loose.accepted);
  REQUIRE(loose.warnings.size() == 1);
  CHECK(loose.warnings[0].find("TN_x") != std::string::npos);

  p.G = std::numeric_limits<double>::infinity();
  CHECK_FALSE(validate_params(p, false).accepted);
}

TEST_CASE("parameter names round-trip") {
  for (ParamId id : kAllParams) CHECK(param_from_name(param_name(id)) == id);
  CHECK_FALSE(param_from_name("TNx").has_value());
}
