#pragma once

#include <optional>
#include <span>
#include <vector>

#include "biortho/measures.hpp"
#include "biortho/model.hpp"

namespace biortho {

/// I(mu) = E(mu)/2 + E(g_* mu)/2 + int V dmu on a grid measure.
double rate_I(const GridMeasure& m, const GasConfig& cfg);

/// I(mu_n) with off-diagonal energies, for an empirical measure.
double rate_I_empirical(const EmpiricalMeasure& m, const GasConfig& cfg);

/// Quadratic form of rate_I in the weights on fixed nodes:
/// F(w) = w.(K + K_g) w / 2 + V.w.
class DiscreteRate {
 public:
  DiscreteRate(std::vector<double> nodes, const GasConfig& cfg);

  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> widths() const { return widths_; }
  double value(std::span<const double> w) const;
  /// Gradient (K + K_g) w + V.
  std::vector<double> gradient(std::span<const double> w) const;
  /// value and gradient from one matrix-vector product.
  double value_and_gradient(std::span<const double> w, std::vector<double>& grad) const;
  /// (K + K_g) d, the change of gradient along a direction d.
  void apply_kernel(std::span<const double> d, std::vector<double>& out) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> widths_;
  std::vector<double> kernel_;  // row-major, K + K_g
  std::vector<double> potential_;
};

/// Support threshold for weights on an n-node grid.
inline double support_threshold(std::size_t n) { return 1e-6 / static_cast<double>(n); }

/// max(c - min_i d_i, max_{w_i > threshold} |d_i - c|) with d the gradient
/// and c = sum w_i d_i.
double kkt_residual(std::span<const double> w, std::span<const double> grad);
double kkt_residual(const GridMeasure& m, const GasConfig& cfg);

struct SolverOptions {
  double tol = 1e-6;
  int max_iter = 200000;
  std::optional<std::vector<double>> initial_weights;  // uniform if absent
};

struct SolverReport {
  GridMeasure minimizer;
  double objective = 0.0;
  double kkt_residual = 0.0;
  double b_eq = 0.0;
  double kappa = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Entropic mirror descent on the simplex with backtracking. The objective
/// never increases between iterations. On failure to reach tol within
/// max_iter, the report carries the last iterate with converged = false.
SolverReport minimize_I(const GasConfig& cfg, std::vector<double> grid, const SolverOptions& options = {});

/// Roughly n/4 geometric nodes on [lo, split] followed by uniform nodes on
/// [split, hi], with split = hi / 40.
std::vector<double> default_grid(int n, double lo, double hi);

/// Upper end for default_grid: starts where V reaches twice a crude objective
/// scale, and doubles while a coarse solve puts b_eq beyond 70% of it.
double choose_domain_hi(const GasConfig& cfg, double lo = 1e-4);

/// Weights proportional to u^(alpha-1) (1-u)^(beta-1) at u = rank/(n+1).
std::vector<double> beta_shape_weights(std::size_t n, double alpha, double beta);

/// Largest node carrying weight above support_threshold.
double support_endpoint(const GridMeasure& m);

/// Rate function of the largest particle,
/// J(x) = -1/2 int [log|x-y| + log|g(x)-g(y)|] dmu_eq(y) + V(x) - kappa
/// for x >= b_eq, +inf below. Each node of mu_eq is smeared uniformly over
/// its cell, so the potential is finite everywhere; kappa makes J(b_eq) = 0.
class LargestParticleRate {
 public:
  LargestParticleRate(const GridMeasure& mu_eq, const GasConfig& cfg);
  double operator()(double x) const;
  /// The formula without the +inf branch, i.e. valid for any x > 0.
  double unconstrained(double x) const;
  double b_eq() const { return b_eq_; }
  double kappa() const { return kappa_; }

 private:
  double log_potential(double x) const;

  GridMeasure mu_;
  GridMeasure mu_g_;
  GasConfig cfg_;
  double b_eq_;
  double kappa_;
};

double rate_J_largest(double x, const GridMeasure& mu_eq, const GasConfig& cfg);

}  // namespace biortho
