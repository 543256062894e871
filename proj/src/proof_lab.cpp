#include "biortho/proof_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "biortho/dh_law.hpp"
#include "biortho/error.hpp"
#include "biortho/quadrature.hpp"
#include "biortho/special.hpp"

namespace biortho {
namespace {

constexpr double kSpacingSlack = 1e-12;
constexpr double kEnergyTolerance = 1e-6;
constexpr int kMaxPanels = 256;

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw DomainError("cannot parse number '" + s + "'");
  return v;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

NiceMeasure NiceMeasure::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) throw DomainError("uniform nice measure needs 0 <= a < b");
  NiceMeasure m;
  m.a_ = a;
  m.b_ = b;
  const double h = 1.0 / (b - a);
  m.c_ = std::max(h, 1.0 / h);
  m.density_ = [a, b, h](double x) { return x >= a && x <= b ? h : 0.0; };
  m.quantile_ = [a, b](double p) { return p >= 1.0 ? b : a + (b - a) * p; };
  m.name_ = "uniform:" + format_number(a) + "," + format_number(b);
  return m;
}

NiceMeasure NiceMeasure::dh_truncated(double delta) {
  if (!(delta > 0.0) || !(delta < 0.5 * kE)) throw DomainError("dh-trunc needs 0 < delta < e/2");
  const DHLaw& law = dh_law();
  const double a = delta;
  const double b = kE - delta;
  const double lower = law.cdf(a);
  const double mass = law.cdf(b) - lower;
  NiceMeasure m;
  m.a_ = a;
  m.b_ = b;
  m.density_ = [a, b, mass](double x) { return x >= a && x <= b ? DHLaw::density(x) / mass : 0.0; };
  m.quantile_ = [&law, a, b, lower, mass](double p) {
    if (p <= 0.0) return a;
    if (p >= 1.0) return b;
    return std::clamp(law.quantile(lower + p * mass), a, b);
  };
  double h_max = 0.0;
  double h_min = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 2000;
  for (int k = 0; k <= kSamples; ++k) {
    const double h = m.density_(a + (b - a) * k / kSamples);
    h_max = std::max(h_max, h);
    h_min = std::min(h_min, h);
  }
  m.c_ = std::max({1.0, h_max, 1.0 / h_min});
  m.name_ = "dh-trunc:" + format_number(delta);
  return m;
}

NiceMeasure NiceMeasure::parse(const std::string& spec) {
  if (spec.starts_with("uniform:")) {
    const std::string rest = spec.substr(8);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw DomainError("uniform needs 'uniform:A,B'");
    return uniform(parse_number(rest.substr(0, comma)), parse_number(rest.substr(comma + 1)));
  }
  if (spec.starts_with("dh-trunc:")) return dh_truncated(parse_number(spec.substr(9)));
  throw DomainError("unknown distribution '" + spec + "' (expected uniform:A,B|dh-trunc:DELTA)");
}

double NiceMeasure::quantile(double p) const {
  if (!(p >= 0.0) || !(p <= 1.0)) throw DomainError("NiceMeasure::quantile: p must lie in [0, 1]");
  return quantile_(p);
}

QuantileGrid build_quantile_grid(const NiceMeasure& sigma, int n) {
  if (n < 2) throw DomainError("build_quantile_grid: n must be at least 2");
  QuantileGrid grid;
  grid.a.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) grid.a[static_cast<std::size_t>(k)] = sigma.quantile(static_cast<double>(k) / n);
  grid.c.resize(static_cast<std::size_t>(n));
  grid.d.resize(static_cast<std::size_t>(n));
  for (std::size_t k = 1; k <= grid.c.size(); ++k) {
    const double lo = grid.a[k - 1];
    const double hi = grid.a[k];
    if (!(hi > lo)) throw NumericalError("build_quantile_grid: quantiles are not strictly increasing");
    grid.c[k - 1] = lo + (hi - lo) / 3.0;
    grid.d[k - 1] = hi - (hi - lo) / 3.0;
  }
  return grid;
}

SpacingCheck check_spacing_bounds(const QuantileGrid& grid, double c) {
  SpacingCheck out;
  const double n = static_cast<double>(grid.n());
  if (!(c > 0.0)) return out;
  const double upper = c / n;
  const double lower = 1.0 / (c * n);
  for (std::size_t k = 1; k < grid.a.size(); ++k) {
    const double gap = grid.a[k] - grid.a[k - 1];
    out.worst_ratio = std::max({out.worst_ratio, gap / upper, lower / gap});
  }
  out.ok = out.worst_ratio <= 1.0 + kSpacingSlack;
  return out;
}

RatioStatistics ratio_statistics(const QuantileGrid& grid, const GFunction& g, double eps) {
  if (!(eps > 0.0)) throw DomainError("ratio_statistics: eps must be positive");
  const std::size_t n = grid.n();
  std::vector<double> ga(grid.a.size());
  std::vector<double> gc(n);
  std::vector<double> gd(n);
  for (std::size_t k = 0; k < ga.size(); ++k) ga[k] = g(grid.a[k]);
  for (std::size_t k = 0; k < n; ++k) {
    gc[k] = g(grid.c[k]);
    gd[k] = g(grid.d[k]);
  }
  RatioStatistics s;
  std::size_t count = 0;
  std::size_t count_g = 0;
  // 1-based pair (i, j) maps to a[i-1], a[j], c[i-1], d[j-1].
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double r = (grid.a[j] - grid.a[i - 1]) / (grid.d[j - 1] - grid.c[i - 1]);
      const double rg = (ga[j] - ga[i - 1]) / (gd[j - 1] - gc[i - 1]);
      s.a_max = std::max(s.a_max, r);
      s.a_max_g = std::max(s.a_max_g, rg);
      if (r <= 1.0 + eps) ++count;
      if (rg <= 1.0 + eps) ++count_g;
    }
  }
  const double nn = static_cast<double>(n);
  s.fraction = 2.0 * static_cast<double>(count) / (nn * nn);
  s.fraction_g = 2.0 * static_cast<double>(count_g) / (nn * nn);
  return s;
}

EnergyGap energy_gap(const QuantileGrid& grid, const GFunction& g, double e_half, double e_half_g) {
  const std::size_t n = grid.n();
  double sum = 0.0;
  double sum_g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum -= std::log(grid.d[j] - grid.c[i]);
      sum_g -= g.log_abs_diff(grid.d[j], grid.c[i]);
    }
  }
  const double nn = static_cast<double>(n);
  EnergyGap out;
  out.riemann = sum / (nn * nn);
  out.riemann_g = sum_g / (nn * nn);
  out.gap = e_half - out.riemann;
  out.gap_g = e_half_g - out.riemann_g;
  return out;
}

double configuration_bl_check(const QuantileGrid& grid, const NiceMeasure& sigma, int m,
                              std::optional<std::vector<double>> z) {
  if (m < 1) throw DomainError("configuration_bl_check: m must be positive");
  const std::size_t n = grid.n();
  std::vector<double> points;
  if (z) {
    if (z->size() != n) throw DomainError("configuration_bl_check: z must have one entry per cell");
    for (std::size_t i = 0; i < n; ++i) {
      if ((*z)[i] < grid.c[i] || (*z)[i] > grid.d[i]) {
        throw DomainError("configuration_bl_check: z_i must lie in [c_i, d_i]");
      }
    }
    points = std::move(*z);
  } else {
    points.resize(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = 0.5 * (grid.c[i] + grid.d[i]);
  }
  std::vector<double> reference(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) reference[static_cast<std::size_t>(k)] = sigma.quantile((k + 0.5) / m);
  return bl_distance(EmpiricalMeasure(std::move(points)), EmpiricalMeasure(std::move(reference)));
}

namespace {

// 3/2 - int int log(D(u, v)) on panels x panels composite Gauss-Legendre,
// where log D is supplied at node pairs.
template <typename LogDiv>
double tensor_energy(const std::vector<double>& u, const std::vector<double>& w, LogDiv&& log_div) {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) row += w[j] * log_div(i, j);
    sum += w[i] * row;
  }
  return 1.5 - sum;
}

}  // namespace

QuadratureEnergy quadrature_energy(const NiceMeasure& sigma, const GFunction& g) {
  const GaussLegendre& rule = gauss_legendre_20();
  QuadratureEnergy previous;
  bool have_previous = false;
  for (int panels = 1; panels <= kMaxPanels; panels *= 2) {
    std::vector<double> u;
    std::vector<double> w;
    for (int p = 0; p < panels; ++p) {
      const double lo = static_cast<double>(p) / panels;
      const double half = 0.5 / panels;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        u.push_back(lo + half * (1.0 + rule.nodes[k]));
        w.push_back(half * rule.weights[k]);
      }
    }
    std::vector<double> q(u.size());
    std::vector<double> log_dq(u.size());   // log Q'(u)
    std::vector<double> log_dgq(u.size());  // log (g o Q)'(u)
    for (std::size_t i = 0; i < u.size(); ++i) {
      q[i] = sigma.quantile(u[i]);
      log_dq[i] = -std::log(sigma.density(q[i]));
      log_dgq[i] = log_dq[i] + std::log(g.derivative(q[i]));
    }
    QuadratureEnergy current;
    current.panels = panels;
    current.energy = tensor_energy(u, w, [&](std::size_t i, std::size_t j) {
      if (i == j) return log_dq[i];
      return std::log(std::abs(q[i] - q[j])) - std::log(std::abs(u[i] - u[j]));
    });
    current.energy_g = tensor_energy(u, w, [&](std::size_t i, std::size_t j) {
      if (i == j) return log_dgq[i];
      return g.log_abs_diff(q[i], q[j]) - std::log(std::abs(u[i] - u[j]));
    });
    if (have_previous && std::abs(current.energy - previous.energy) <= kEnergyTolerance &&
        std::abs(current.energy_g - previous.energy_g) <= kEnergyTolerance) {
      return current;
    }
    previous = current;
    have_previous = true;
  }
  throw NumericalError("quadrature_energy: no convergence within the panel limit");
}

double derivative_spread(const GFunction& g, double a, double b) {
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 1000; ++k) {
    const double d = g.derivative(a + (b - a) * k / 1000.0);
    hi = std::max(hi, d);
    lo = std::min(lo, d);
  }
  return hi / lo;
}

}  // namespace biortho
