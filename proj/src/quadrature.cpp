#include "biortho/quadrature.hpp"

#include <cmath>

#include "biortho/special.hpp"

namespace biortho {

GaussLegendre::GaussLegendre(std::size_t order) : nodes(order), weights(order) {
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Newton on P_n starting from the Chebyshev-like estimate.
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(order) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (order == 1) p0 = 1.0;
      dp = static_cast<double>(order) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

const GaussLegendre& gauss_legendre_20() {
  static const GaussLegendre rule(20);
  return rule;
}

}  // namespace biortho
