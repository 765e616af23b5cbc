#include "duelmap/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace duelmap {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

double Polynomial::scale_at(double x) const {
  double acc = 0.0;
  double power = 1.0;
  for (double a : coeffs_) {
    acc += std::abs(a) * power;
    power *= std::abs(x);
  }
  return acc;
}

namespace {

// Bisection on a bracket with f(lo), f(hi) of opposite sign, then a guarded
// Newton polish that may not leave the bracket or increase |P|.
double refine(const Polynomial& p, const Polynomial& dp, double lo, double hi) {
  double flo = p(lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double next = x - p(x) / d;
    if (!(next >= lo && next <= hi) || std::abs(p(next)) > std::abs(p(x))) break;
    x = next;
  }
  return x;
}

std::vector<double> roots_impl(const Polynomial& p, const RootSearch& search) {
  std::vector<double> roots;
  if (p.degree() <= 0) return roots;
  if (p.degree() == 1) {
    const auto c = p.coefficients();
    const double r = -c[0] / c[1];
    if (r >= search.low && r <= search.high) roots.push_back(r);
    return roots;
  }

  const Polynomial dp = p.derivative();
  // Between consecutive critical points P is monotone, so splitting the scan
  // there guarantees at most one simple root per piece.
  const std::vector<double> critical = roots_impl(dp, search);

  std::vector<double> breaks;
  const int n = std::max(search.subintervals, 1);
  breaks.reserve(static_cast<std::size_t>(n) + 1 + critical.size());
  for (int i = 0; i <= n; ++i) {
    breaks.push_back(search.low + (search.high - search.low) * static_cast<double>(i) / n);
  }
  breaks.insert(breaks.end(), critical.begin(), critical.end());
  std::sort(breaks.begin(), breaks.end());

  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double a = breaks[i];
    const double fa = p(a);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (i + 1 < breaks.size()) {
      const double b = breaks[i + 1];
      const double fb = p(b);
      if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) roots.push_back(refine(p, dp, a, b));
    }
  }

  // Even-multiplicity roots: P touches zero at a critical point without a
  // sign change.
  for (double c : critical) {
    if (std::abs(p(c)) <= 1e-12 * p.scale_at(c)) roots.push_back(c);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > search.dedup) unique.push_back(r);
  }
  return unique;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, const RootSearch& search) {
  return roots_impl(p, search);
}

}  // namespace duelmap
