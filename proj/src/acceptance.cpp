#include "biortho/acceptance.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>

#include "biortho/dh_law.hpp"
#include "biortho/ensemble.hpp"
#include "biortho/equilibrium.hpp"
#include "biortho/gas_sampler.hpp"
#include "biortho/measures.hpp"
#include "biortho/proof_lab.hpp"
#include "biortho/random.hpp"
#include "biortho/special.hpp"

namespace biortho {
namespace {

constexpr std::uint64_t kSeed = 20240917;
constexpr int kDhQuantiles = 4000;

struct Spec {
  int id;
  const char* title;
  double limit_seconds;
  // Returns the detail text and sets `passed`.
  std::function<std::string(bool& passed)> body;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

GasConfig dh_config() {
  GasConfig cfg;
  cfg.g = GFunction::log();
  cfg.v = Potential::linear(1.0);
  return cfg;
}

EmpiricalMeasure dh_reference() { return EmpiricalMeasure(dh_quantile_points(kDhQuantiles)); }

std::string ac1(bool& passed) {
  double worst = 0.0;
  for (int k = 0; k <= 6; ++k) {
    const double exact = dh_moment_exact(k);
    worst = std::max(worst, std::abs(dh_moment_numeric(k) - exact) / exact);
  }
  passed = worst <= 1e-6;
  return fmt::format("max relative error over k=0..6 = {:.2e} (<= 1e-6)", worst);
}

std::string ac2(bool& passed) {
  RandomStream rng(kSeed, 2);
  double worst = 0.0;
  bool strip = true;
  auto residual = [&](Complex w, Complex z) {
    worst = std::max(worst, std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z)));
  };
  for (int i = 0; i < 3334; ++i) {
    // Real domain [-1/e, 1e6], denser near the branch point.
    const double x = i % 2 ? -kInvE + std::pow(10.0, -15.0 + 15.0 * rng.uniform()) * kInvE
                           : std::pow(10.0, -6.0 + 12.0 * rng.uniform());
    residual(lambert_w0_real(x), x);
  }
  for (int i = 0; i < 3333; ++i) {
    const double r = std::pow(10.0, -4.0 + 10.0 * rng.uniform());
    const double phi = kPi * rng.uniform();
    const Complex z = std::polar(r, phi);
    residual(lambert_w0_complex(z), z);
  }
  for (int i = 0; i < 3333; ++i) {
    const double x = -kInvE - std::pow(10.0, -12.0 + 18.0 * rng.uniform());
    const Complex w = lambert_w0_cut_above(x);
    strip = strip && w.imag() > 0.0 && w.imag() < kPi;
    residual(w, x);
  }
  const double delta = 1e-14;
  const double jump = std::max({std::abs(lambert_w0_real(-kInvE + delta) + 1.0),
                                std::abs(lambert_w0_cut_above(-kInvE - delta) + 1.0)});
  passed = worst <= 1e-12 && strip && jump <= 1e-6;
  return fmt::format("max residual {:.2e} (<= 1e-12), cut values in strip: {}, branch-point jump {:.2e} (<= 1e-6)",
                     worst, strip ? "yes" : "no", jump);
}

std::string ac3(bool& passed) {
  const int n = 256;
  const auto spectra = sample_spectra({n, 0.0, 1.0, kSeed}, 50);
  std::vector<double> m1;
  std::vector<double> m2;
  for (const auto& s : spectra) {
    m1.push_back(s.moment(1));
    m2.push_back(s.moment(2));
  }
  const double target = (n + 1.0) / (2.0 * n);
  const double z = std::abs(mean(m1) - target) / standard_error(m1);
  const double rel2 = std::abs(mean(m2) - 2.0 / 3.0) / (2.0 / 3.0);
  passed = z <= 3.0 && rel2 <= 0.05;
  return fmt::format("mean m1 = {:.5f} vs {:.5f} ({:.2f} SE, <= 3), mean m2 = {:.4f} ({:.2f}% from 2/3, <= 5%)",
                     mean(m1), target, z, mean(m2), 100.0 * rel2);
}

std::string ac4(bool& passed) {
  const auto spectra = sample_spectra({512, 0.0, 1.0, kSeed}, 20);
  std::vector<double> top;
  for (const auto& s : spectra) top.push_back(largest_particle(s));
  const double med = median(top);
  passed = med >= kE - 0.25 && med <= kE + 0.15;
  return fmt::format("median x* = {:.4f}, interval [{:.4f}, {:.4f}]", med, kE - 0.25, kE + 0.15);
}

std::string ac5(bool& passed) {
  const auto report = minimize_I(dh_config(), default_grid(400, 1e-4, 4.0));
  const double w1 = w1_distance(report.minimizer, dh_reference());
  passed = report.converged && w1 <= 0.02 && report.kkt_residual <= 1e-4 && std::abs(report.b_eq - kE) <= 0.05;
  return fmt::format("W1 = {:.4f} (<= 0.02), KKT = {:.2e} (<= 1e-4), b_eq = {:.4f} (|b_eq - e| = {:.4f}, <= 0.05), "
                     "{} iterations",
                     w1, report.kkt_residual, report.b_eq, std::abs(report.b_eq - kE), report.iterations);
}

std::string ac6(bool& passed) {
  GasConfig cfg;
  cfg.g = GFunction::identity();
  cfg.v = Potential::linear(1.0);
  const auto report = minimize_I(cfg, default_grid(400, 1e-4, choose_domain_hi(cfg)));
  const auto big = sample_spectra({512, 1.0, 1.0, kSeed}, 8);
  const double w1_matrix = w1_distance(report.minimizer, merge(big));

  cfg.n = 32;
  const auto chains = mcmc_sample_chains(cfg, 5000, 2000, kSeed, 20);
  std::vector<EmpiricalMeasure> gas;
  for (const auto& c : chains) gas.push_back(c.sample);
  const auto small = sample_spectra({32, 1.0, 1.0, kSeed + 1}, 50);
  const double w1_gas = w1_distance(merge(gas), merge(small));
  passed = report.converged && w1_matrix <= 0.05 && w1_gas <= 0.05;
  return fmt::format("W1(minimizer, n=512 spectra) = {:.4f} (<= 0.05), W1(MCMC n=32, spectra n=32) = {:.4f} (<= 0.05)",
                     w1_matrix, w1_gas);
}

std::string ac7(bool& passed) {
  const auto sigma = NiceMeasure::uniform(1.0, 2.0);
  const auto id = GFunction::identity();
  bool spacing = true;
  double worst_spacing = 0.0;
  std::vector<double> fractions;
  for (int n : {100, 300, 1000}) {
    const auto grid = build_quantile_grid(sigma, n);
    const auto check = check_spacing_bounds(grid, 1.0);
    spacing = spacing && check.ok;
    worst_spacing = std::max(worst_spacing, check.worst_ratio);
    fractions.push_back(ratio_statistics(grid, id, 0.1).fraction);
  }
  const auto grid = build_quantile_grid(sigma, 1000);
  const auto stats = ratio_statistics(grid, id, 0.1);
  const double riemann = energy_gap(grid, id, 0.75, 0.75).riemann;
  const double bl100 = configuration_bl_check(build_quantile_grid(sigma, 100), sigma);
  const double bl1000 = configuration_bl_check(grid, sigma);
  const bool monotone = fractions[0] <= fractions[1] && fractions[1] <= fractions[2];
  passed = spacing && std::abs(stats.a_max - 1.5) <= 1e-9 && stats.fraction >= 0.95 && monotone &&
           std::abs(riemann - 0.75) <= 0.05 && bl100 <= 1.0 / 100 + 2e-4 && bl1000 <= 1.0 / 1000 + 2e-4;
  return fmt::format("spacing ok: {} (worst ratio {:.12f}), A_max = {:.12f}, fraction(1000, 0.1) = {:.4f}, "
                     "fractions {:.4f}/{:.4f}/{:.4f}, Riemann sum = {:.4f}, BL(100) = {:.5f} (<= {:.5f}), "
                     "BL(1000) = {:.6f} (<= {:.6f})",
                     spacing ? "yes" : "no", worst_spacing, stats.a_max, stats.fraction, fractions[0], fractions[1],
                     fractions[2], riemann, bl100, 1.0 / 100 + 2e-4, bl1000, 1.0 / 1000 + 2e-4);
}

std::string ac8(bool& passed) {
  RandomStream rng(kSeed, 8);
  auto log_uniform = [&](double lo, double hi) { return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform()); };

  // Pair-kernel lower bound.
  std::vector<GasConfig> configs(3);
  configs[0] = dh_config();
  configs[1].g = GFunction::power(2.0);
  configs[1].v = Potential::linear(1.0);
  configs[2].g = GFunction::asinh2();
  configs[2].v = Potential::polynomial({0.0, 1.0, 0.5});
  double worst_bound = std::numeric_limits<double>::infinity();
  for (const auto& cfg : configs) {
    for (int i = 0; i < 100000 / 3 + 1; ++i) {
      const double x = log_uniform(1e-6, 1e3);
      const double y = log_uniform(1e-6, 1e3);
      if (x == y) continue;
      const double margin = pair_kernel_f(x, y, cfg) - pair_kernel_lower_term(x, cfg) - pair_kernel_lower_term(y, cfg);
      worst_bound = std::min(worst_bound, margin);
    }
  }

  // Convexity along segments between random grid measures.
  const auto cfg = dh_config();
  const auto nodes = default_grid(120, 1e-4, 4.0);
  auto random_weights = [&] {
    std::vector<double> w(nodes.size());
    double total = 0.0;
    for (double& x : w) total += (x = rng.gamma(0.5));
    for (double& x : w) x /= total;
    return w;
  };
  double worst_convexity = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < 100; ++s) {
    const auto wa = random_weights();
    const auto wb = random_weights();
    std::vector<double> mid(nodes.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (wa[i] + wb[i]);
    double total = 0.0;
    for (double x : mid) total += x;
    for (double& x : mid) x /= total;
    const double ia = rate_I(GridMeasure(nodes, wa), cfg);
    const double ib = rate_I(GridMeasure(nodes, wb), cfg);
    const double im = rate_I(GridMeasure(nodes, mid), cfg);
    worst_convexity = std::max(worst_convexity, im - 0.5 * (ia + ib));
  }

  // Analytic gradient against central differences.
  const DiscreteRate rate(nodes, cfg);
  double worst_gradient = 0.0;
  for (int s = 0; s < 10; ++s) {
    auto w = random_weights();
    const auto grad = rate.gradient(w);
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double h = 1e-5;
      const double keep = w[i];
      w[i] = keep + h;
      const double up = rate.value(w);
      w[i] = keep - h;
      const double down = rate.value(w);
      w[i] = keep;
      err = std::max(err, std::abs((up - down) / (2.0 * h) - grad[i]));
      scale = std::max(scale, std::abs(grad[i]));
    }
    worst_gradient = std::max(worst_gradient, err / scale);
  }

  // Uniqueness from two initialisations.
  const auto grid = default_grid(400, 1e-4, 4.0);
  SolverOptions from_beta;
  from_beta.initial_weights = beta_shape_weights(grid.size(), 2.0, 5.0);
  const auto a = minimize_I(cfg, grid);
  const auto b = minimize_I(cfg, grid, from_beta);
  const double w1 = w1_distance(a.minimizer, b.minimizer);

  passed = worst_bound >= 0.0 && worst_convexity <= 1e-10 && worst_gradient <= 1e-6 && a.converged &&
           b.converged && w1 <= 1e-3;
  return fmt::format("min f - phi - phi = {:.3e} (>= 0), max convexity defect = {:.2e} (<= 1e-10), "
                     "gradient relative error = {:.2e} (<= 1e-6), two-start W1 = {:.2e} (<= 1e-3)",
                     worst_bound, worst_convexity, worst_gradient, w1);
}

std::string ac9(bool& passed) {
  const auto cfg = dh_config();
  std::vector<double> medians;
  std::string per_n;
  for (int n : {64, 128, 256, 512}) {
    const auto spectra = sample_spectra({n, 0.0, 1.0, kSeed}, 20);
    std::vector<double> rates;
    for (const auto& s : spectra) rates.push_back(rate_I_empirical(s, cfg));
    medians.push_back(median(rates));
    per_n += fmt::format("{}{}: {:.4f}", per_n.empty() ? "" : ", ", n, medians.back());
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < medians.size(); ++k) decreasing = decreasing && medians[k] < medians[k - 1];
  // About 13% of the DH mass lies below 1e-4, so the optimum on the standard
  // [1e-4, 4] grid sits well above inf I. The reference grid reaches down to
  // 1e-32; both values are reported.
  const auto optimum = minimize_I(cfg, default_grid(400, 1e-32, 4.0));
  const auto standard = minimize_I(cfg, default_grid(400, 1e-4, 4.0));
  const double distance = std::abs(medians.back() - optimum.objective);
  passed = decreasing && optimum.converged && distance <= 0.1;
  return fmt::format("median rate by n = {{{}}}, decreasing: {}, solver optimum {:.4f} on [1e-32, 4] "
                     "({:.4f} on [1e-4, 4]), |median(512) - optimum| = {:.4f} (<= 0.1)",
                     per_n, decreasing ? "yes" : "no", optimum.objective, standard.objective, distance);
}

std::string ac10(bool& passed) {
  const auto cfg = dh_config();
  const auto report = minimize_I(cfg, default_grid(400, 1e-4, 4.0));
  const LargestParticleRate j(report.minimizer, cfg);
  const double b = j.b_eq();
  const bool zero = j(b) == 0.0;
  bool infinite = true;
  for (double f : {0.5, 0.9, 0.999, 1.0 - 1e-12}) infinite = infinite && std::isinf(j(f * b)) && j(f * b) > 0.0;
  bool increasing = true;
  double prev = j(b);
  double min_step = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 20; ++k) {
    const double value = j(b + 2.0 * b * k / 19.0);
    increasing = increasing && value > prev;
    min_step = std::min(min_step, value - prev);
    prev = value;
  }
  passed = zero && infinite && increasing;
  return fmt::format("b_eq = {:.4f}, J(b_eq) = {}, +inf below b_eq: {}, strictly increasing on 20 points: {} "
                     "(smallest increment {:.3e}, J(3 b_eq) = {:.4f})",
                     b, j(b), infinite ? "yes" : "no", increasing ? "yes" : "no", min_step, prev);
}

const std::vector<Spec>& specs() {
  static const std::vector<Spec> all = {
      {1, "moment identity", 5.0, ac1},
      {2, "Lambert W", 5.0, ac2},
      {3, "matrix model mean spectrum", 180.0, ac3},
      {4, "largest particle", 600.0, ac4},
      {5, "variational characterization", 300.0, ac5},
      {6, "cross-method consistency", 600.0, ac6},
      {7, "proof-lab estimates", 60.0, ac7},
      {8, "rate-function properties", 120.0, ac8},
      {9, "empirical rate consistency", 600.0, ac9},
      {10, "J rate function", 60.0, ac10},
  };
  return all;
}

}  // namespace

std::vector<int> acceptance_ids() {
  std::vector<int> ids;
  for (const auto& s : specs()) ids.push_back(s.id);
  return ids;
}

CriterionResult run_criterion(int id) {
  const auto& all = specs();
  const auto it = std::find_if(all.begin(), all.end(), [id](const Spec& s) { return s.id == id; });
  if (it == all.end()) throw std::out_of_range(fmt::format("no acceptance criterion {}", id));
  CriterionResult r;
  r.id = id;
  r.title = it->title;
  r.limit_seconds = it->limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  bool checks = false;
  try {
    r.detail = it->body(checks);
  } catch (const std::exception& e) {
    checks = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = checks && r.seconds <= r.limit_seconds;
  if (checks && !r.passed) r.detail += ", runtime limit exceeded";
  return r;
}

std::string format_result(const CriterionResult& r) {
  return fmt::format("AC{} {} {}: {} [{:.1f} s / {:.0f} s]", r.id, r.passed ? "PASS" : "FAIL", r.title, r.detail,
                     r.seconds, r.limit_seconds);
}

int run_acceptance(const std::vector<int>& ids, std::ostream& os) {
  int failures = 0;
  for (int id : ids) {
    const auto r = run_criterion(id);
    if (!r.passed) ++failures;
    os << format_result(r) << std::endl;
  }
  os << fmt::format("{}/{} criteria passed", ids.size() - static_cast<std::size_t>(failures), ids.size()) << std::endl;
  return failures;
}

}  // namespace biortho
