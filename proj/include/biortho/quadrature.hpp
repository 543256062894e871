#pragma once

#include <cstddef>
#include <vector>

namespace biortho {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(std::size_t order);

  /// Integral of f over [lo, hi].
  template <typename F>
  double integrate(F&& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

/// Shared 20-point rule.
const GaussLegendre& gauss_legendre_20();

}  // namespace biortho
