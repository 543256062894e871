#include "biortho/measures.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "biortho/error.hpp"

namespace biortho {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> points) : points_(std::move(points)) {
  for (double x : points_) {
    if (!std::isfinite(x)) throw DomainError("EmpiricalMeasure: non-finite support point");
  }
  std::sort(points_.begin(), points_.end());
}

double EmpiricalMeasure::mean() const { return moment(1); }

double EmpiricalMeasure::moment(int k) const {
  if (points_.empty()) throw DomainError("moment of an empty measure");
  double s = 0.0;
  for (double x : points_) s += std::pow(x, k);
  return s / static_cast<double>(points_.size());
}

EmpiricalMeasure merge(std::span<const EmpiricalMeasure> parts) {
  std::vector<double> all;
  for (const auto& p : parts) all.insert(all.end(), p.points().begin(), p.points().end());
  return EmpiricalMeasure(std::move(all));
}

std::vector<double> GridMeasure::cell_widths(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  if (n < 2) throw DomainError("cell_widths: need at least two nodes");
  std::vector<double> h(n);
  h[0] = nodes[1] - nodes[0];
  h[n - 1] = nodes[n - 1] - nodes[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) h[i] = 0.5 * (nodes[i + 1] - nodes[i - 1]);
  return h;
}

GridMeasure::GridMeasure(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() < 2) throw DomainError("GridMeasure: need at least two nodes (or explicit widths)");
  widths_ = cell_widths(nodes_);
  validate();
}

GridMeasure::GridMeasure(std::vector<double> nodes, std::vector<double> weights, std::vector<double> widths)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), widths_(std::move(widths)) {
  validate();
}

void GridMeasure::validate() const {
  if (nodes_.empty()) throw DomainError("GridMeasure: no nodes");
  if (weights_.size() != nodes_.size() || widths_.size() != nodes_.size()) {
    throw DomainError("GridMeasure: nodes, weights and widths differ in length");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw DomainError("GridMeasure: non-finite node");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) throw DomainError("GridMeasure: nodes must be strictly increasing");
    if (!(weights_[i] >= 0.0)) throw DomainError("GridMeasure: negative weight");
    if (!(widths_[i] > 0.0)) throw DomainError("GridMeasure: cell widths must be positive");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("GridMeasure: weights must sum to 1");
}

EmpiricalMeasure pushforward(const EmpiricalMeasure& m, const GFunction& g) {
  std::vector<double> mapped(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m.point(i) > 0.0)) throw DomainError("pushforward: support must be positive");
    mapped[i] = g(m.point(i));
  }
  return EmpiricalMeasure(std::move(mapped));
}

GridMeasure pushforward(const GridMeasure& m, const GFunction& g) {
  std::vector<double> mapped(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m.point(i) > 0.0)) throw DomainError("pushforward: support must be positive");
    mapped[i] = g(m.point(i));
  }
  std::vector<double> weights(m.weights().begin(), m.weights().end());
  if (m.size() == 1) {
    std::vector<double> widths{m.widths()[0] * g.derivative(m.point(0))};
    return GridMeasure(std::move(mapped), std::move(weights), std::move(widths));
  }
  return GridMeasure(std::move(mapped), std::move(weights));
}

namespace {

// Signed masses a - b on the merged, de-duplicated support.
std::vector<Atom> signed_difference(std::span<const Atom> a, std::span<const Atom> b) {
  std::vector<Atom> all;
  all.reserve(a.size() + b.size());
  for (const Atom& t : a) all.push_back(t);
  for (const Atom& t : b) all.push_back({t.x, -t.w});
  std::sort(all.begin(), all.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  std::vector<Atom> merged;
  for (const Atom& t : all) {
    if (!merged.empty() && merged.back().x == t.x) {
      merged.back().w += t.w;
    } else {
      merged.push_back(t);
    }
  }
  return merged;
}

// Concave piecewise-linear function on [-1, 1]: value at -1 and a list of
// (slope, length) pieces with decreasing slopes whose lengths sum to 2.
struct ConcavePiecewise {
  struct Piece {
    double slope;
    double length;
  };
  double left_value = 0.0;
  std::vector<Piece> pieces;

  void add_linear(double c) {
    left_value -= c;
    for (Piece& p : pieces) p.slope += c;
  }

  // f -> max_{|g - f| <= r} F(g): rising pieces move left by r, falling
  // pieces move right by r, a flat piece of width up to 2r appears at the top.
  void window_max(double r) {
    std::vector<Piece> rising;
    std::vector<Piece> falling;
    for (const Piece& p : pieces) (p.slope > 0.0 ? rising : falling).push_back(p);

    double cut = r;
    std::size_t first = 0;
    for (; first < rising.size() && cut > 0.0; ++first) {
      const double take = std::min(cut, rising[first].length);
      left_value += rising[first].slope * take;
      cut -= take;
      if (take < rising[first].length) {
        rising[first].length -= take;
        break;
      }
    }
    const double rising_cut = r - cut;

    cut = r;
    std::size_t last = falling.size();
    while (last > 0 && cut > 0.0) {
      Piece& p = falling[last - 1];
      const double take = std::min(cut, p.length);
      cut -= take;
      if (take < p.length) {
        p.length -= take;
        break;
      }
      --last;
    }
    const double falling_cut = r - cut;

    std::vector<Piece> next;
    next.reserve(pieces.size() + 1);
    for (std::size_t i = first; i < rising.size(); ++i) next.push_back(rising[i]);
    const double flat = rising_cut + falling_cut;
    if (flat > 0.0) next.push_back({0.0, flat});
    for (std::size_t i = 0; i < last; ++i) {
      if (!next.empty() && next.back().slope == falling[i].slope) {
        next.back().length += falling[i].length;
      } else {
        next.push_back(falling[i]);
      }
    }
    pieces = std::move(next);
  }

  double maximum() const {
    double v = left_value;
    for (const Piece& p : pieces) {
      if (p.slope > 0.0) v += p.slope * p.length;
    }
    return v;
  }
};

}  // namespace

double w1_distance(std::span<const Atom> a, std::span<const Atom> b) {
  const auto d = signed_difference(a, b);
  double cum = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    cum += d[k].w;
    total += std::abs(cum) * (d[k + 1].x - d[k].x);
  }
  return total;
}

double bl_distance(std::span<const Atom> a, std::span<const Atom> b) {
  const auto d = signed_difference(a, b);
  if (d.empty()) return 0.0;
  // Maximise sum f_k d_k subject to |f_k| <= 1, |f_{k+1} - f_k| <= x_{k+1} - x_k
  // by dynamic programming over the concave value function of f_k.
  ConcavePiecewise value;
  value.left_value = 0.0;
  value.pieces = {{0.0, 2.0}};
  value.add_linear(d[0].w);
  for (std::size_t k = 1; k < d.size(); ++k) {
    value.window_max(d[k].x - d[k - 1].x);
    value.add_linear(d[k].w);
  }
  return std::max(value.maximum(), 0.0);
}

double log_energy_offdiag(const EmpiricalMeasure& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("log_energy_offdiag: empty measure");
  const auto x = m.points();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = x[j] - x[i];
      if (!(gap > 0.0)) throw DomainError("log_energy_offdiag: coincident support points");
      sum -= std::log(gap);
    }
  }
  const double nn = static_cast<double>(n);
  return 2.0 * sum / (nn * nn);
}

std::vector<double> grid_energy_kernel(std::span<const double> nodes, std::span<const double> widths) {
  const std::size_t n = nodes.size();
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i * n + i] = -std::log(widths[i]) + 1.5;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = -std::log(std::abs(nodes[j] - nodes[i]));
      k[i * n + j] = v;
      k[j * n + i] = v;
    }
  }
  return k;
}

double log_energy_grid(const GridMeasure& m) {
  const auto x = m.nodes();
  const auto w = m.weights();
  const auto h = m.widths();
  const std::size_t n = m.size();
  double off = 0.0;
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    diag += w[i] * w[i] * (-std::log(h[i]) + 1.5);
    for (std::size_t j = i + 1; j < n; ++j) off -= w[i] * w[j] * std::log(x[j] - x[i]);
  }
  return 2.0 * off + diag;
}

double pair_kernel_f(double x, double y, const GasConfig& cfg) {
  if (x == y) return std::numeric_limits<double>::infinity();
  const double lg = cfg.g.log_abs_diff(x, y);
  if (lg == -std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::infinity();
  return -0.5 * std::log(std::abs(x - y)) - 0.5 * lg + 0.5 * (cfg.v(x) + cfg.v(y));
}

double pair_kernel_lower_term(double t, const GasConfig& cfg) {
  return -0.5 * std::log1p(std::abs(t)) - 0.5 * std::log1p(std::abs(cfg.g(t))) + 0.5 * cfg.v(t);
}

void write_measure_csv(std::ostream& os, std::span<const Atom> atoms) {
  const auto old = os.precision(17);
  os << "x,w\n";
  for (const Atom& a : atoms) os << a.x << ',' << a.w << '\n';
  os.precision(old);
}

std::vector<Atom> read_measure_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,w", 0) != 0) throw DomainError("measure CSV: missing 'x,w' header");
  std::vector<Atom> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("measure CSV: malformed row '" + line + "'");
    try {
      out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw DomainError("measure CSV: malformed row '" + line + "'");
    }
  }
  return out;
}

}  // namespace biortho
