#include "biortho/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "biortho/error.hpp"

namespace biortho {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogFloor = -1e6;

void check_grid(std::span<const double> nodes) {
  if (nodes.size() < 2) throw DomainError("equilibrium grid needs at least two nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0.0) || !std::isfinite(nodes[i])) throw DomainError("equilibrium grid nodes must be positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw DomainError("equilibrium grid must be strictly increasing");
  }
}

std::vector<double> normalized_exp(std::span<const double> log_w) {
  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w(log_w.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += (w[i] = std::exp(log_w[i] - top));
  for (double& v : w) v /= total;
  return w;
}

// e^d (d - 1) + 1, the KL contribution of a log-weight change d.
double kl_term(double d) {
  if (std::abs(d) < 1e-3) return d * d * (0.5 + d * (1.0 / 3.0 + d * 0.125));
  return d * std::exp(d) - std::expm1(d);
}

// Average of log|x - y| over y uniform on a cell of width h centred at c.
double cell_log_average(double x, double c, double h) {
  const double d = x - c;
  if (std::abs(d) > 30.0 * h) {
    const double r = h / d;
    const double r2 = r * r;
    return std::log(std::abs(d)) - r2 / 24.0 - r2 * r2 / 320.0;
  }
  auto psi = [](double t) { return t == 0.0 ? 0.0 : t * std::log(std::abs(t)) - t; };
  return (psi(d + 0.5 * h) - psi(d - 0.5 * h)) / h;
}

}  // namespace

double rate_I(const GridMeasure& m, const GasConfig& cfg) {
  double potential = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) potential += m.weight(i) * cfg.v(m.point(i));
  return 0.5 * log_energy_grid(m) + 0.5 * log_energy_grid(pushforward(m, cfg.g)) + potential;
}

double rate_I_empirical(const EmpiricalMeasure& m, const GasConfig& cfg) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("rate_I_empirical: empty measure");
  const auto x = m.points();
  double pairs = 0.0;
  double potential = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) throw DomainError("rate_I_empirical: support must be positive");
    potential += cfg.v(x[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[j] == x[i]) throw DomainError("rate_I_empirical: coincident support points");
      const double lg = cfg.g.log_abs_diff(x[i], x[j]);
      if (!std::isfinite(lg)) throw DomainError("rate_I_empirical: coincident g-images");
      pairs -= std::log(x[j] - x[i]) + lg;
    }
  }
  const double nn = static_cast<double>(n);
  return pairs / (nn * nn) + potential / nn;
}

DiscreteRate::DiscreteRate(std::vector<double> nodes, const GasConfig& cfg) : nodes_(std::move(nodes)) {
  check_grid(nodes_);
  widths_ = GridMeasure::cell_widths(nodes_);
  std::vector<double> g_nodes(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) g_nodes[i] = cfg.g(nodes_[i]);
  for (std::size_t i = 1; i < g_nodes.size(); ++i) {
    if (!(g_nodes[i] > g_nodes[i - 1])) throw DomainError("DiscreteRate: g does not separate the grid nodes");
  }
  kernel_ = grid_energy_kernel(nodes_, widths_);
  const auto kg = grid_energy_kernel(g_nodes, GridMeasure::cell_widths(g_nodes));
  for (std::size_t k = 0; k < kernel_.size(); ++k) kernel_[k] += kg[k];
  potential_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) potential_[i] = cfg.v(nodes_[i]);
}

double DiscreteRate::value_and_gradient(std::span<const double> w, std::vector<double>& grad) const {
  const auto n = static_cast<Eigen::Index>(nodes_.size());
  if (w.size() != nodes_.size()) throw DomainError("DiscreteRate: weight vector has the wrong length");
  Eigen::Map<const Eigen::MatrixXd> k(kernel_.data(), n, n);
  Eigen::Map<const Eigen::VectorXd> wv(w.data(), n);
  Eigen::Map<const Eigen::VectorXd> v(potential_.data(), n);
  grad.resize(nodes_.size());
  Eigen::Map<Eigen::VectorXd> gv(grad.data(), n);
  gv.noalias() = k * wv;
  const double value = 0.5 * wv.dot(gv) + v.dot(wv);
  gv += v;
  return value;
}

void DiscreteRate::apply_kernel(std::span<const double> d, std::vector<double>& out) const {
  const auto n = static_cast<Eigen::Index>(nodes_.size());
  Eigen::Map<const Eigen::MatrixXd> k(kernel_.data(), n, n);
  out.resize(nodes_.size());
  Eigen::Map<Eigen::VectorXd>(out.data(), n).noalias() = k * Eigen::Map<const Eigen::VectorXd>(d.data(), n);
}

double DiscreteRate::value(std::span<const double> w) const {
  std::vector<double> grad;
  return value_and_gradient(w, grad);
}

std::vector<double> DiscreteRate::gradient(std::span<const double> w) const {
  std::vector<double> grad;
  value_and_gradient(w, grad);
  return grad;
}

double kkt_residual(std::span<const double> w, std::span<const double> grad) {
  const double threshold = support_threshold(w.size());
  double c = 0.0;
  double lowest = kInf;
  for (std::size_t i = 0; i < w.size(); ++i) {
    c += w[i] * grad[i];
    lowest = std::min(lowest, grad[i]);
  }
  double residual = std::max(c - lowest, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > threshold) residual = std::max(residual, std::abs(grad[i] - c));
  }
  return residual;
}

double kkt_residual(const GridMeasure& m, const GasConfig& cfg) {
  const DiscreteRate rate(std::vector<double>(m.nodes().begin(), m.nodes().end()), cfg);
  return kkt_residual(m.weights(), rate.gradient(m.weights()));
}

double support_endpoint(const GridMeasure& m) {
  const double threshold = support_threshold(m.size());
  for (std::size_t i = m.size(); i-- > 0;) {
    if (m.weight(i) > threshold) return m.point(i);
  }
  throw DomainError("support_endpoint: no weight above the support threshold");
}

SolverReport minimize_I(const GasConfig& cfg, std::vector<double> grid, const SolverOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("minimize_I: tol must be positive");
  if (options.max_iter < 1) throw DomainError("minimize_I: max_iter must be positive");
  const DiscreteRate rate(std::move(grid), cfg);
  const std::size_t n = rate.size();

  std::vector<double> log_w(n, 0.0);
  if (options.initial_weights) {
    const auto& init = *options.initial_weights;
    if (init.size() != n) throw DomainError("minimize_I: initial weights have the wrong length");
    const double top = *std::max_element(init.begin(), init.end());
    if (!(top > 0.0)) throw DomainError("minimize_I: initial weights must have positive mass");
    for (std::size_t i = 0; i < n; ++i) {
      if (init[i] < 0.0) throw DomainError("minimize_I: initial weights must be nonnegative");
      // Zero weights would stay zero under multiplicative updates.
      log_w[i] = std::log(std::max(init[i], 1e-12 * top));
    }
  }
  std::vector<double> w = normalized_exp(log_w);
  for (std::size_t i = 0; i < n; ++i) log_w[i] = std::max(std::log(w[i]), kLogFloor);

  // F is quadratic, so F(w + d) - F(w) = grad.d + d.Kd/2 exactly. The update
  // w_i -> w_i e^{delta_i}, its increment and its KL divergence are all formed
  // from delta_i directly, which keeps the line search meaningful far below
  // the rounding level of F itself.
  std::vector<double> grad;
  double value = rate.value_and_gradient(w, grad);
  double residual = kkt_residual(w, grad);
  double eta = 1.0;
  int iter = 0;
  std::vector<double> delta(n);
  std::vector<double> step(n);
  std::vector<double> k_step;
  while (residual > options.tol && iter < options.max_iter) {
    ++iter;
    eta *= 1.5;
    double mean_grad = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean_grad += w[i] * grad[i];
    bool moved = false;
    for (int attempt = 0; attempt < 200 && !moved; ++attempt) {
      double shift = 0.0;
      for (std::size_t i = 0; i < n; ++i) shift += w[i] * std::expm1(-eta * (grad[i] - mean_grad));
      const double log_norm = std::log1p(shift);
      double linear = 0.0;
      double divergence = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        delta[i] = -eta * (grad[i] - mean_grad) - log_norm;
        step[i] = w[i] * std::expm1(delta[i]);
        linear += (grad[i] - mean_grad) * step[i];
        divergence += w[i] * kl_term(delta[i]);
      }
      rate.apply_kernel(step, k_step);
      double curvature = 0.0;
      for (std::size_t i = 0; i < n; ++i) curvature += step[i] * k_step[i];
      curvature *= 0.5;
      // In exact arithmetic this test implies linear + curvature <= 0.
      if (curvature <= divergence / eta) {
        value += linear + curvature;
        for (std::size_t i = 0; i < n; ++i) {
          log_w[i] = std::max(log_w[i] + delta[i], kLogFloor);
          w[i] += step[i];
          grad[i] += k_step[i];
        }
        moved = true;
      } else {
        eta *= 0.5;
      }
    }
    if (!moved) break;
    if (iter % 256 == 0) value = rate.value_and_gradient(w, grad);  // shed accumulated drift
    residual = kkt_residual(w, grad);
  }
  value = rate.value_and_gradient(w, grad);
  residual = kkt_residual(w, grad);

  double total = 0.0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;

  SolverReport report;
  report.minimizer = GridMeasure(std::vector<double>(rate.nodes().begin(), rate.nodes().end()), w);
  report.objective = value;
  report.kkt_residual = residual;
  report.iterations = iter;
  report.converged = residual <= options.tol;
  const LargestParticleRate j(report.minimizer, cfg);
  report.b_eq = j.b_eq();
  report.kappa = j.kappa();
  return report;
}

std::vector<double> default_grid(int n, double lo, double hi) {
  if (n < 8) throw DomainError("default_grid: need at least 8 nodes");
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("default_grid: need 0 < lo < hi");
  const double split = hi / 40.0;
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  int n_uniform = n;
  if (lo < split) {
    const int n_geo = n / 4;
    n_uniform = n - n_geo;
    const double ratio = std::log(split / lo);
    for (int k = 0; k < n_geo; ++k) nodes.push_back(lo * std::exp(ratio * k / n_geo));
  }
  const double start = lo < split ? split : lo;
  for (int k = 0; k < n_uniform; ++k) nodes.push_back(start + (hi - start) * k / (n_uniform - 1));
  return nodes;
}

double choose_domain_hi(const GasConfig& cfg, double lo) {
  double hi = 1.0;
  while (cfg.v(hi) < 2.0 && hi < 1e12) hi *= 2.0;
  for (int round = 0; round < 40; ++round) {
    SolverOptions coarse;
    coarse.tol = 1e-3;
    coarse.max_iter = 20000;
    const SolverReport r = minimize_I(cfg, default_grid(80, lo, hi), coarse);
    if (r.b_eq <= 0.7 * hi && cfg.v(hi) >= 2.0 * std::abs(r.objective)) return hi;
    hi *= 2.0;
  }
  throw NumericalError("choose_domain_hi: no bounded domain found for the equilibrium support");
}

std::vector<double> beta_shape_weights(std::size_t n, double alpha, double beta) {
  if (n == 0 || !(alpha > 0.0) || !(beta > 0.0)) throw DomainError("beta_shape_weights: invalid arguments");
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = (static_cast<double>(k) + 1.0) / (static_cast<double>(n) + 1.0);
    w[k] = std::pow(u, alpha - 1.0) * std::pow(1.0 - u, beta - 1.0);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

LargestParticleRate::LargestParticleRate(const GridMeasure& mu_eq, const GasConfig& cfg)
    : mu_(mu_eq), mu_g_(pushforward(mu_eq, cfg.g)), cfg_(cfg), b_eq_(support_endpoint(mu_eq)) {
  kappa_ = -0.5 * log_potential(b_eq_) + cfg_.v(b_eq_);
}

double LargestParticleRate::log_potential(double x) const {
  const double gx = cfg_.g(x);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    const double w = mu_.weight(i);
    if (w == 0.0) continue;
    total += w * (cell_log_average(x, mu_.point(i), mu_.widths()[i]) +
                  cell_log_average(gx, mu_g_.point(i), mu_g_.widths()[i]));
  }
  return total;
}

double LargestParticleRate::unconstrained(double x) const {
  if (!(x > 0.0)) throw DomainError("rate_J_largest: x must be positive");
  return -0.5 * log_potential(x) + cfg_.v(x) - kappa_;
}

double LargestParticleRate::operator()(double x) const {
  if (x < b_eq_) return kInf;
  if (x == b_eq_) return 0.0;
  return unconstrained(x);
}

double rate_J_largest(double x, const GridMeasure& mu_eq, const GasConfig& cfg) {
  return LargestParticleRate(mu_eq, cfg)(x);
}

}  // namespace biortho
