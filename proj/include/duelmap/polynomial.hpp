#pragma once

#include <span>
#include <vector>

namespace duelmap {

/// Dense real polynomial, coefficients in ascending powers. Trailing zero
/// coefficients are trimmed so degree() is exact.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coefficients() const { return coeffs_; }
  double operator()(double x) const;
  Polynomial derivative() const;

  /// Sum of |a_k| |x|^k, the natural magnitude for judging |P(x)| against.
  double scale_at(double x) const;

 private:
  std::vector<double> coeffs_;
};

struct RootSearch {
  double low = -2.0;
  double high = 3.0;
  int subintervals = 4096;
  double dedup = 1e-8;
};

/// All real roots of `p` in [low, high], ascending. Simple roots come from a
/// sign-change scan refined by bisection; even-multiplicity roots are found
/// as critical points where |P| vanishes. Each root is Newton-polished.
std::vector<double> real_roots(const Polynomial& p, const RootSearch& search = {});

}  // namespace duelmap
