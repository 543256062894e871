#pragma once

#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "biortho/model.hpp"

namespace biortho {

/// Uniform probability measure on finitely many points, stored ascending.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  /// Sorts the points. Throws DomainError on non-finite entries.
  explicit EmpiricalMeasure(std::vector<double> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t) const { return 1.0 / static_cast<double>(points_.size()); }
  std::span<const double> points() const { return points_; }
  double mean() const;
  double moment(int k) const;

 private:
  std::vector<double> points_;
};

/// Union of several empirical measures with equal weight per point; for
/// inputs of equal size this is their average.
EmpiricalMeasure merge(std::span<const EmpiricalMeasure> parts);

/// Probability weights on fixed, strictly increasing nodes. Each node owns a
/// cell of width h_i: half the distance to each neighbour, mirrored at the two
/// ends.
class GridMeasure {
 public:
  GridMeasure() = default;
  /// Requires at least two nodes. Weights must be nonnegative and sum to 1
  /// within 1e-12.
  GridMeasure(std::vector<double> nodes, std::vector<double> weights);
  /// Explicit cell widths; allows a single node.
  GridMeasure(std::vector<double> nodes, std::vector<double> weights, std::vector<double> widths);

  std::size_t size() const { return nodes_.size(); }
  double point(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> widths() const { return widths_; }

  static std::vector<double> cell_widths(std::span<const double> nodes);

 private:
  void validate() const;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> widths_;
};

template <typename M>
concept FiniteMeasure = requires(const M& m, std::size_t i) {
  { m.size() } -> std::convertible_to<std::size_t>;
  { m.point(i) } -> std::convertible_to<double>;
  { m.weight(i) } -> std::convertible_to<double>;
};

struct Atom {
  double x;
  double w;
};

template <FiniteMeasure M>
std::vector<Atom> atoms_of(const M& m) {
  std::vector<Atom> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = {m.point(i), m.weight(i)};
  return out;
}

/// Push-forward through g; requires positive support. Grid cell widths are
/// recomputed from the mapped nodes.
EmpiricalMeasure pushforward(const EmpiricalMeasure& m, const GFunction& g);
GridMeasure pushforward(const GridMeasure& m, const GFunction& g);

double w1_distance(std::span<const Atom> a, std::span<const Atom> b);
/// Dudley bounded-Lipschitz distance: sup of the difference of integrals over
/// f with |f| <= 1 and Lipschitz constant 1.
double bl_distance(std::span<const Atom> a, std::span<const Atom> b);

template <FiniteMeasure A, FiniteMeasure B>
double w1_distance(const A& a, const B& b) {
  const auto aa = atoms_of(a);
  const auto bb = atoms_of(b);
  return w1_distance(std::span<const Atom>(aa), std::span<const Atom>(bb));
}

template <FiniteMeasure A, FiniteMeasure B>
double bl_distance(const A& a, const B& b) {
  const auto aa = atoms_of(a);
  const auto bb = atoms_of(b);
  return bl_distance(std::span<const Atom>(aa), std::span<const Atom>(bb));
}

/// (1/n^2) sum_{i != j} -log|x_i - x_j|. Throws DomainError on coincident
/// points.
double log_energy_offdiag(const EmpiricalMeasure& m);

/// sum_{i != j} w_i w_j (-log|x_i - x_j|) + sum_i w_i^2 (-log h_i + 3/2).
/// The diagonal term is the exact self-energy of a uniform density on a cell
/// of width h_i.
double log_energy_grid(const GridMeasure& m);

/// Kernel matrix of log_energy_grid, row-major n x n.
std::vector<double> grid_energy_kernel(std::span<const double> nodes, std::span<const double> widths);

/// -1/2 log|x-y| - 1/2 log|g(x)-g(y)| + (V(x)+V(y))/2. Returns +inf when
/// x == y or g(x) == g(y).
double pair_kernel_f(double x, double y, const GasConfig& cfg);
/// -1/2 log(1+t) - 1/2 log(1+|g(t)|) + V(t)/2, so that
/// pair_kernel_f(x, y) >= pair_kernel_lower_term(x) + pair_kernel_lower_term(y).
double pair_kernel_lower_term(double t, const GasConfig& cfg);

/// CSV with header "x,w".
void write_measure_csv(std::ostream& os, std::span<const Atom> atoms);
std::vector<Atom> read_measure_csv(std::istream& is);

}  // namespace biortho
