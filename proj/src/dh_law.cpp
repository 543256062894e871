#include "biortho/dh_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biortho/error.hpp"
#include "biortho/quadrature.hpp"

namespace biortho {
namespace {

constexpr double kSplitX = 0.1;
// u = 1 / log(1/x) at x = 0.1.
const double kSplitU = 1.0 / std::log(1.0 / kSplitX);
// Geometric grading of the near-zero region: edges kSplitU * 2^-k.
constexpr int kGradedLevels = 48;
constexpr double kMassTolerance = 1e-10;
constexpr double kIntegralTolerance = 1e-9;
constexpr int kMaxRefinements = 8;

}  // namespace

double DHLaw::density(double x) {
  if (!(x > 0.0) || !(x < kE)) return 0.0;
  const double z = -1.0 / x;
  if (std::isfinite(z)) return std::exp(lambert_w0_cut_above(z)).imag() / kPi;
  // e^w = -1/(x w) when w e^w = -1/x.
  const Complex w = lambert_w0_cut_above_log(-std::log(x));
  return w.imag() / (kPi * std::norm(w) * x);
}

double DHLaw::weight_in_variable(Region r, double v) {
  if (r == Region::kNearZero) {
    // x f(x) / u^2 with x = exp(-1/u); x f(x) = Im(w) / (pi |w|^2).
    const Complex w = lambert_w0_cut_above_log(1.0 / v);
    return w.imag() / (kPi * std::norm(w) * v * v);
  }
  return 2.0 * v * density(kE - v * v);
}

double DHLaw::x_of(Region r, double v) {
  return r == Region::kNearZero ? std::exp(-1.0 / v) : kE - v * v;
}

double DHLaw::v_of(Region r, double x) {
  return r == Region::kNearZero ? -1.0 / std::log(x) : std::sqrt(std::max(kE - x, 0.0));
}

DHLaw::Panel DHLaw::make_panel(Region r, double v_lo, double v_hi) {
  Panel p{r, v_lo, v_hi, 0.0, 0.0};
  if (r == Region::kNearZero) {
    p.x_lo = x_of(r, v_lo);
    p.x_hi = x_of(r, v_hi);
  } else {
    p.x_lo = x_of(r, v_hi);
    p.x_hi = x_of(r, v_lo);
  }
  p.mass = gauss_legendre_20().integrate([r](double v) { return weight_in_variable(r, v); }, v_lo, v_hi);
  return p;
}

std::vector<DHLaw::Panel> DHLaw::split(const std::vector<Panel>& panels) {
  std::vector<Panel> out;
  out.reserve(2 * panels.size());
  for (const Panel& p : panels) {
    const double mid = 0.5 * (p.v_lo + p.v_hi);
    if (p.region == Region::kNearZero) {
      out.push_back(make_panel(p.region, p.v_lo, mid));
      out.push_back(make_panel(p.region, mid, p.v_hi));
    } else {
      out.push_back(make_panel(p.region, mid, p.v_hi));
      out.push_back(make_panel(p.region, p.v_lo, mid));
    }
  }
  return out;
}

DHLaw::DHLaw(int mesh) {
  if (mesh < 1) throw DomainError("DHLaw: mesh must be positive");
  std::vector<Panel> panels;
  double edge = kSplitU * std::ldexp(1.0, -kGradedLevels);
  panels.push_back(make_panel(Region::kNearZero, 0.0, edge));
  for (int k = kGradedLevels; k > 0; --k) {
    const double next = kSplitU * std::ldexp(1.0, -(k - 1));
    panels.push_back(make_panel(Region::kNearZero, edge, next));
    edge = next;
  }
  const double s_max = std::sqrt(kE - kSplitX);
  for (int i = mesh; i > 0; --i) {
    panels.push_back(make_panel(Region::kBulk, s_max * (i - 1) / mesh, s_max * i / mesh));
  }

  auto total_of = [](const std::vector<Panel>& ps) {
    double t = 0.0;
    for (const Panel& p : ps) t += p.mass;
    return t;
  };
  double total = total_of(panels);
  bool stable = false;
  for (int level = 0; level < kMaxRefinements && !stable; ++level) {
    std::vector<Panel> finer = split(panels);
    const double finer_total = total_of(finer);
    stable = std::abs(finer_total - total) <= kMassTolerance;
    panels = std::move(finer);
    total = finer_total;
  }
  if (!stable) throw NumericalError("DHLaw: mass quadrature did not stabilise");

  double cum = 0.0;
  for (Panel& p : panels) {
    p.cum_before = cum;
    cum += p.mass;
  }
  panels_ = std::move(panels);
  total_ = cum;
}

double DHLaw::partial_mass(const Panel& p, double v) const {
  auto w = [r = p.region](double t) { return weight_in_variable(r, t); };
  if (p.region == Region::kNearZero) return gauss_legendre_20().integrate(w, p.v_lo, v);
  return gauss_legendre_20().integrate(w, v, p.v_hi);
}

double DHLaw::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (x >= kE) return std::min(total_, 1.0);
  auto it = std::lower_bound(panels_.begin(), panels_.end(), x,
                             [](const Panel& p, double value) { return p.x_hi < value; });
  if (it == panels_.end()) return std::min(total_, 1.0);
  const double value = it->cum_before + partial_mass(*it, v_of(it->region, x));
  return std::clamp(value, 0.0, 1.0);
}

double DHLaw::quantile(double p) const {
  if (!(p > 0.0) || !(p < 1.0)) throw DomainError("dh_quantile: p must lie in (0, 1)");
  const double target = std::min(p, total_);
  auto it = std::lower_bound(panels_.begin(), panels_.end(), target,
                             [](const Panel& q, double t) { return q.cum_before + q.mass < t; });
  if (it == panels_.end()) it = std::prev(panels_.end());
  const Panel& panel = *it;
  const double residual_mass = target - panel.cum_before;

  // Safeguarded Newton in the substitution variable. G is increasing in v on
  // near-zero panels and decreasing on bulk panels.
  const double sign = panel.region == Region::kNearZero ? 1.0 : -1.0;
  auto g = [&](double v) { return sign * (partial_mass(panel, v) - residual_mass); };
  double lo = panel.v_lo;
  double hi = panel.v_hi;
  double v = 0.5 * (lo + hi);
  for (int it_count = 0; it_count < 200; ++it_count) {
    const double gv = g(v);
    if (gv == 0.0) break;
    if (gv > 0.0) {
      hi = v;
    } else {
      lo = v;
    }
    const double slope = weight_in_variable(panel.region, v);
    double next = slope > 0.0 ? v - gv / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - v);
    v = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v) || hi - lo <= 0.0) break;
  }
  return x_of(panel.region, v);
}

double DHLaw::moment_exact(int k) {
  if (k < 0) throw DomainError("dh_moment_exact: k must be nonnegative");
  if (k == 0) return 1.0;
  const double kk = static_cast<double>(k);
  if (k <= 20) return std::pow(kk, kk) / std::tgamma(kk + 2.0);
  return std::exp(kk * std::log(kk) - std::lgamma(kk + 2.0));
}

double DHLaw::integrate_on(const std::vector<Panel>& panels, const std::function<double(double)>& phi) const {
  double sum = 0.0;
  for (const Panel& p : panels) {
    const Region r = p.region;
    sum += gauss_legendre_20().integrate(
        [&](double v) { return phi(x_of(r, v)) * weight_in_variable(r, v); }, p.v_lo, p.v_hi);
  }
  return sum;
}

double DHLaw::integrate(const std::function<double(double)>& phi) const {
  std::vector<Panel> panels = panels_;
  double value = integrate_on(panels, phi);
  for (int level = 0; level < 5; ++level) {
    panels = split(panels);
    const double finer = integrate_on(panels, phi);
    if (std::abs(finer - value) <= kIntegralTolerance * std::max(1.0, std::abs(finer))) return finer;
    value = finer;
  }
  throw NumericalError("DHLaw::integrate: quadrature did not stabilise");
}

double DHLaw::moment_numeric(int k) const {
  if (k < 0 || k > 12) throw DomainError("dh_moment_numeric: k must lie in [0, 12]");
  return integrate([k](double x) { return std::pow(x, k); });
}

Complex DHLaw::stieltjes(Complex z) {
  if (!(z.imag() > 0.0)) throw DomainError("dh_stieltjes: need Im z > 0");
  return -1.0 + std::exp(lambert_w0_complex(-1.0 / z));
}

Complex DHLaw::r_transform(Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) throw DomainError("dh_r_transform: z = 0 (the limit value is 1/2)");
  if (!(r < 1.0)) throw DomainError("dh_r_transform: need |z| < 1");
  if (r < 1e-3) {
    // Free cumulants kappa_{k+1}.
    return 0.5 + z * (5.0 / 12.0 + z * (3.0 / 8.0 + z * (251.0 / 720.0 + z * (95.0 / 288.0 + z * (19087.0 / 60480.0)))));
  }
  const Complex l = std::log(1.0 - z);
  return -1.0 / ((1.0 - z) * l) - 1.0 / z;
}

const DHLaw& dh_law() {
  static const DHLaw law;
  return law;
}

std::vector<double> dh_quantile_points(int m) {
  if (m < 1) throw DomainError("dh_quantile_points: m must be positive");
  const DHLaw& law = dh_law();
  std::vector<double> pts(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) pts[static_cast<std::size_t>(k)] = law.quantile((k + 0.5) / m);
  return pts;
}

}  // namespace biortho
