#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biortho/measures.hpp"
#include "biortho/model.hpp"

namespace biortho {

/// Probability measure on [a, b] with a density h satisfying 1/C <= h <= C.
class NiceMeasure {
 public:
  /// a = 0 is allowed; g-statistics then need g finite at 0.
  static NiceMeasure uniform(double a, double b);
  /// The Dykema-Haagerup law restricted to [delta, e - delta], renormalised.
  static NiceMeasure dh_truncated(double delta);
  /// "uniform:A,B" or "dh-trunc:DELTA".
  static NiceMeasure parse(const std::string& spec);

  double a() const { return a_; }
  double b() const { return b_; }
  /// Smallest C >= 1 with 1/C <= h <= C on [a, b].
  double density_bound() const { return c_; }
  double density(double x) const { return density_(x); }
  /// quantile(0) = a, quantile(1) = b.
  double quantile(double p) const;
  const std::string& name() const { return name_; }

 private:
  NiceMeasure() = default;
  double a_ = 0.0;
  double b_ = 1.0;
  double c_ = 1.0;
  std::function<double(double)> density_;
  std::function<double(double)> quantile_;
  std::string name_;
};

/// a_0..a_n are the k/n quantiles; c_k and d_k (k = 1..n) cut [a_{k-1}, a_k]
/// into thirds. c and d are stored 0-based: c[k-1] = c_k.
struct QuantileGrid {
  std::vector<double> a;
  std::vector<double> c;
  std::vector<double> d;
  std::size_t n() const { return c.size(); }
};

QuantileGrid build_quantile_grid(const NiceMeasure& sigma, int n);

struct SpacingCheck {
  bool ok = false;
  /// max over gaps of gap / (C/n) and (1/(C n)) / gap. At most 1 when the
  /// bounds hold; exactly 1 when some gap sits on a bound.
  double worst_ratio = 0.0;
};

/// Checks 1/(C n) <= a_{k+1} - a_k <= C/n for every gap. A relative slack of
/// 1e-12 absorbs rounding in the quantile evaluation.
SpacingCheck check_spacing_bounds(const QuantileGrid& grid, double c);

struct RatioStatistics {
  double a_max = 0.0;
  double a_max_g = 0.0;
  double fraction = 0.0;
  double fraction_g = 0.0;
};

/// Over pairs 1 <= i < j <= n: ratio (a_j - a_{i-1}) / (d_j - c_i), its
/// maximum, and (2/n^2) times the number of pairs with ratio <= 1 + eps; the
/// g-versions apply g to every endpoint first.
RatioStatistics ratio_statistics(const QuantileGrid& grid, const GFunction& g, double eps);

struct EnergyGap {
  double gap = 0.0;
  double gap_g = 0.0;
  double riemann = 0.0;    // (1/n^2) sum_{i<j} -log(d_j - c_i)
  double riemann_g = 0.0;  // same with g(d_j) - g(c_i)
};

/// gap = e_half - riemann, gap_g = e_half_g - riemann_g, where e_half and
/// e_half_g are E(sigma)/2 and E(g_* sigma)/2.
EnergyGap energy_gap(const QuantileGrid& grid, const GFunction& g, double e_half, double e_half_g);

/// BL distance between (1/n) sum delta_{z_i} and an m-point quantile
/// discretisation of sigma (points at (k - 1/2)/m). z defaults to the
/// midpoints (c_i + d_i)/2 and must otherwise satisfy c_i <= z_i <= d_i.
double configuration_bl_check(const QuantileGrid& grid, const NiceMeasure& sigma, int m = 10000,
                              std::optional<std::vector<double>> z = std::nullopt);

/// E(sigma) and E(g_* sigma) by tensor Gauss-Legendre quadrature in quantile
/// coordinates, refined until successive values agree to 1e-6:
/// E = 3/2 - int int log[(Q(u) - Q(v)) / (u - v)] du dv.
struct QuadratureEnergy {
  double energy = 0.0;
  double energy_g = 0.0;
  int panels = 0;
};
QuadratureEnergy quadrature_energy(const NiceMeasure& sigma, const GFunction& g);

/// max/min of g' over [a, b], sampled on 1001 points.
double derivative_spread(const GFunction& g, double a, double b);

}  // namespace biortho
