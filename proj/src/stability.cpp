#include "duelmap/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duelmap/errors.hpp"

namespace duelmap {

std::string_view to_string(TraceDetLabel label) {
  switch (label) {
    case TraceDetLabel::Center: return "center";
    case TraceDetLabel::Saddle: return "saddle";
    case TraceDetLabel::Node: return "node";
    case TraceDetLabel::Spiral: return "spiral";
    case TraceDetLabel::Degenerate: return "degenerate";
  }
  return "?";
}

std::string_view to_string(DiscreteLabel label) {
  switch (label) {
    case DiscreteLabel::StableNode: return "stable-node";
    case DiscreteLabel::StableSpiral: return "stable-spiral";
    case DiscreteLabel::UnstableNode: return "unstable-node";
    case DiscreteLabel::UnstableSpiral: return "unstable-spiral";
    case DiscreteLabel::Saddle: return "saddle";
    case DiscreteLabel::NonHyperbolic: return "non-hyperbolic";
  }
  return "?";
}

Polynomial quartic_coefficients(const MapCoefficients& c) {
  const double k = 2.0 * c.a_y - 1.0;
  const double cy2 = c.c_y * c.c_y;
  return Polynomial({
      c.a_x - c.c_x * (c.a_y - c.a_y * c.a_y),
      -c.c_x * c.c_y * k - 1.0,
      c.c_x * c.c_y * k + c.c_x * cy2,
      -2.0 * c.c_x * cy2,
      c.c_x * cy2,
  });
}

namespace {

double residual(const MapCoefficients& c, const State& s) {
  return max_norm_distance(step(c, s), s);
}

// One Newton step on F(s) = step(s) - s. Returns false if the Jacobian of F
// is singular.
bool newton_update(const MapCoefficients& c, State& s) {
  const State f = step(c, s);
  const double fx = f.x - s.x;
  const double fy = f.y - s.y;
  const Matrix2 j = jacobian_at(c, s);
  // dF = J - I, with J's diagonal identically zero.
  const double a = -1.0, b = j(0, 1), cc = j(1, 0), d = -1.0;
  const double det = a * d - b * cc;
  if (det == 0.0 || !std::isfinite(det)) return false;
  s.x -= (d * fx - b * fy) / det;
  s.y -= (-cc * fx + a * fy) / det;
  return std::isfinite(s.x) && std::isfinite(s.y);
}

State polish(const MapCoefficients& c, State s) {
  double r = residual(c, s);
  for (int i = 0; i < 8 && r > 0.0; ++i) {
    State next = s;
    if (!newton_update(c, next)) break;
    const double rn = residual(c, next);
    if (!(rn < r)) break;
    s = next;
    r = rn;
  }
  return s;
}

template <class T, class Key>
void dedup_sorted(std::vector<T>& v, Key key, double tol) {
  std::vector<T> out;
  for (const auto& e : v) {
    if (out.empty() || max_norm_distance(key(e), key(out.back())) > tol) out.push_back(e);
  }
  v = std::move(out);
}

bool sets_agree(const std::vector<State>& a, const std::vector<State>& b, double tol) {
  auto covered = [tol](const std::vector<State>& from, const std::vector<State>& to) {
    return std::all_of(from.begin(), from.end(), [&](const State& s) {
      return std::any_of(to.begin(), to.end(),
                         [&](const State& t) { return max_norm_distance(s, t) <= tol; });
    });
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace

std::vector<State> newton_fixed_points(const MapCoefficients& c, const SearchBox& box, int grid) {
  std::vector<State> found;
  for (int i = 0; i < grid; ++i) {
    for (int k = 0; k < grid; ++k) {
      State s{box.x_low + (box.x_high - box.x_low) * i / (grid - 1),
              box.y_low + (box.y_high - box.y_low) * k / (grid - 1)};
      bool ok = true;
      for (int it = 0; it < 200 && ok; ++it) {
        const State before = s;
        ok = newton_update(c, s) && std::abs(s.x) < 1e8 && std::abs(s.y) < 1e8;
        if (ok && max_norm_distance(before, s) < 1e-15) break;
      }
      if (!ok) continue;
      s = polish(c, s);
      if (residual(c, s) < kResidualBar && box.contains(s)) found.push_back(s);
    }
  }
  std::sort(found.begin(), found.end(),
            [](const State& a, const State& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<State> unique;
  for (const auto& s : found) {
    bool dup = std::any_of(unique.begin(), unique.end(), [&](const State& u) {
      return max_norm_distance(u, s) <= kCrossCheckTol;
    });
    if (!dup) unique.push_back(s);
  }
  return unique;
}

std::vector<FixedPoint> fixed_points(const ModelParams& params, const SearchBox& box) {
  const MapCoefficients c = derive_coefficients(params);
  const Polynomial p = quartic_coefficients(c);

  RootSearch search;
  search.low = box.x_low;
  search.high = box.x_high;
  search.dedup = kRootDedup;

  std::vector<FixedPoint> points;
  for (double x : real_roots(p, search)) {
    State s = polish(c, State{x, c.a_y - c.c_y * x * (1.0 - x)});
    if (!box.contains(s)) continue;
    FixedPoint fp;
    fp.location = s;
    fp.residual = residual(c, s);
    fp.admissible = s.x >= 0.0 && s.x <= 1.0 && s.y >= 0.0 && s.y <= 1.0;
    if (!(fp.residual < kResidualBar)) {
      std::ostringstream msg;
      msg << "fixed point near x=" << s.x << " has residual " << fp.residual;
      throw InternalConsistencyError(msg.str());
    }
    points.push_back(fp);
  }
  std::sort(points.begin(), points.end(),
            [](const FixedPoint& a, const FixedPoint& b) { return a.location.x < b.location.x; });
  dedup_sorted(points, [](const FixedPoint& f) { return f.location; }, kRootDedup);

  std::vector<State> from_quartic;
  for (const auto& fp : points) from_quartic.push_back(fp.location);
  const std::vector<State> from_newton = newton_fixed_points(c, box);
  if (!sets_agree(from_quartic, from_newton, kCrossCheckTol)) {
    std::ostringstream msg;
    msg << "fixed-point cross-check failed: quartic route found " << from_quartic.size()
        << " point(s), Newton route found " << from_newton.size();
    throw InternalConsistencyError(msg.str());
  }
  return points;
}

EigenPair eigenvalues_2x2(const Matrix2& m) {
  const double tr = m.trace();
  const double det = m.determinant();
  const double disc = tr * tr - 4.0 * det;
  const double half = 0.5 * tr;
  if (disc >= 0.0) {
    const double r = 0.5 * std::sqrt(disc);
    return {{half + r, 0.0}, {half - r, 0.0}};
  }
  const double im = 0.5 * std::sqrt(-disc);
  return {{half, im}, {half, -im}};
}

StabilityVerdict classify(const Matrix2& m, double tol) {
  StabilityVerdict v;
  v.jacobian = m;
  v.trace = m.trace();
  v.determinant = m.determinant();
  v.discriminant = v.trace * v.trace - 4.0 * v.determinant;
  v.eigenvalues = eigenvalues_2x2(m);

  if (std::abs(v.determinant) <= tol) {
    v.trace_det_scheme = TraceDetLabel::Degenerate;
  } else if (v.determinant < 0.0) {
    v.trace_det_scheme = TraceDetLabel::Saddle;
  } else if (v.discriminant < 0.0) {
    v.trace_det_scheme = std::abs(v.trace) <= tol ? TraceDetLabel::Center : TraceDetLabel::Spiral;
  } else {
    v.trace_det_scheme = TraceDetLabel::Node;
  }

  const double m1 = std::abs(v.eigenvalues.first);
  const double m2 = std::abs(v.eigenvalues.second);
  const bool complex = v.eigenvalues.first.imag() != 0.0;
  if (std::abs(m1 - 1.0) <= tol || std::abs(m2 - 1.0) <= tol) {
    v.discrete_scheme = DiscreteLabel::NonHyperbolic;
  } else if (m1 < 1.0 && m2 < 1.0) {
    v.discrete_scheme = complex ? DiscreteLabel::StableSpiral : DiscreteLabel::StableNode;
  } else if (m1 > 1.0 && m2 > 1.0) {
    v.discrete_scheme = complex ? DiscreteLabel::UnstableSpiral : DiscreteLabel::UnstableNode;
  } else {
    v.discrete_scheme = DiscreteLabel::Saddle;
  }
  return v;
}

SettleOutcome settle_time(const MapCoefficients& coeffs, const State& initial, const State& target,
                          const SettleOptions& options) {
  if (!(options.epsilon > 0.0) || options.window < 1) {
    throw UsageError("settle_time requires epsilon > 0 and window >= 1");
  }
  SettleOutcome out;
  State s = initial;
  std::size_t run_start = 0;
  std::size_t run_length = 0;
  const std::size_t horizon = options.budget + options.window;
  for (std::size_t t = 0; t <= horizon; ++t) {
    if (t > 0) {
      s = step(coeffs, s);
      if (!(std::abs(s.x) <= kOverflowGuard && std::abs(s.y) <= kOverflowGuard)) {
        out.diverged = true;
        return out;
      }
    }
    if (max_norm_distance(s, target) < options.epsilon) {
      if (run_length == 0) run_start = t;
      if (++run_length == options.window + 1) {
        out.time = run_start;
        return out;
      }
    } else {
      run_length = 0;
      if (t >= options.budget) break;
    }
  }
  return out;
}

std::vector<FixedPointReport> analyze(const ModelParams& params, std::string_view scenario,
                                      const SearchBox& box) {
  const MapCoefficients c = derive_coefficients(params);
  std::vector<FixedPointReport> reports;
  for (const auto& fp : fixed_points(params, box)) {
    FixedPointReport r;
    r.point = fp;
    r.verdict = classify(jacobian_at(c, fp.location));
    r.scenario = std::string(scenario);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace duelmap
