#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "biortho/dh_law.hpp"
#include "biortho/equilibrium.hpp"
#include "biortho/error.hpp"
#include "biortho/random.hpp"
#include "biortho/special.hpp"

using namespace biortho;

namespace {

GasConfig gas(GFunction g, Potential v = Potential::linear(1.0)) {
  GasConfig cfg;
  cfg.g = g;
  cfg.v = v;
  return cfg;
}

std::vector<double> random_weights(RandomStream& rng, std::size_t n) {
  std::vector<double> w(n);
  for (auto& v : w) v = rng.uniform() + 1e-3;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  return w;
}

// Marchenko-Pastur(1) quantile: with x = 4 sin^2 t the cdf is (2t + sin 2t) / pi.
double mp_quantile(double p) {
  double lo = 0.0;
  double hi = kPi / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double t = 0.5 * (lo + hi);
    ((2.0 * t + std::sin(2.0 * t)) / kPi < p ? lo : hi) = t;
  }
  const double s = std::sin(0.5 * (lo + hi));
  return 4.0 * s * s;
}

const SolverReport& dh_solution() {
  static const SolverReport r = minimize_I(gas(GFunction::log()), default_grid(400, 1e-4, 4.0));
  return r;
}

}  // namespace

TEST_CASE("rate_I: hand values and identities") {
  const GridMeasure single({1.0}, {1.0}, {0.2});
  CHECK(rate_I(single, gas(GFunction::identity())) == doctest::Approx(-std::log(0.2) + 1.5 + 1.0).epsilon(1e-14));

  RandomStream rng(1, 0);
  const std::vector<double> nodes = default_grid(40, 1e-3, 3.0);
  const GridMeasure m(nodes, random_weights(rng, nodes.size()));
  double vw = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) vw += m.weight(i) * m.point(i);
  CHECK(rate_I(m, gas(GFunction::identity())) == doctest::Approx(log_energy_grid(m) + vw).epsilon(1e-13));
  const double base = rate_I(m, gas(GFunction::log()));
  CHECK(rate_I(m, gas(GFunction::log(), Potential::polynomial({2.5, 1.0}))) == doctest::Approx(base + 2.5).epsilon(1e-13));
}

TEST_CASE("rate_I_empirical") {
  CHECK(rate_I_empirical(EmpiricalMeasure({1.0, 2.0}), gas(GFunction::identity())) == doctest::Approx(1.5));
  const GasConfig cfg = gas(GFunction::asinh2());
  CHECK(rate_I_empirical(EmpiricalMeasure({0.3, 2.0, 1.1}), cfg) ==
        rate_I_empirical(EmpiricalMeasure({2.0, 1.1, 0.3}), cfg));
  CHECK_THROWS_AS(rate_I_empirical(EmpiricalMeasure({1.0, 1.0}), cfg), DomainError);
}

TEST_CASE("discrete objective: gradient and convexity") {
  RandomStream rng(2, 0);
  const std::vector<double> nodes = default_grid(60, 1e-4, 4.0);
  for (const auto& g : {GFunction::log(), GFunction::power(2.0), GFunction::identity()}) {
    const GasConfig cfg = gas(g);
    const DiscreteRate f(nodes, cfg);
    for (int t = 0; t < 10; ++t) {
      const auto w = random_weights(rng, nodes.size());
      CHECK(f.value(w) == doctest::Approx(rate_I(GridMeasure(nodes, w), cfg)).epsilon(1e-12));
      const auto grad = f.gradient(w);
      for (std::size_t i = 0; i < nodes.size(); i += 7) {
        auto wp = w;
        auto wm = w;
        wp[i] += 1e-5;
        wm[i] -= 1e-5;
        const double fd = (f.value(wp) - f.value(wm)) / 2e-5;
        CHECK(std::abs(fd - grad[i]) <= 1e-6 * std::max(1.0, std::abs(grad[i])));
      }
      const auto u = random_weights(rng, nodes.size());
      std::vector<double> mid(nodes.size());
      for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (w[i] + u[i]);
      CHECK(f.value(mid) <= 0.5 * (f.value(w) + f.value(u)) + 1e-10);
    }
  }
}

TEST_CASE("KKT residual") {
  const std::vector<double> nodes = default_grid(100, 1e-4, 4.0);
  const GasConfig cfg = gas(GFunction::log());
  const GridMeasure uniform(nodes, std::vector<double>(nodes.size(), 1.0 / nodes.size()));
  CHECK(kkt_residual(uniform, cfg) > 0.1);
  SolverOptions opt;
  opt.tol = 1e-6;
  const SolverReport r = minimize_I(cfg, nodes, opt);
  REQUIRE(r.converged);
  CHECK(r.kkt_residual <= 1e-6);
  CHECK(kkt_residual(r.minimizer, cfg) == doctest::Approx(r.kkt_residual));
  CHECK(r.b_eq == support_endpoint(r.minimizer));

  // Moving 1% of the mass from the heaviest node to another raises the objective.
  std::vector<double> w(r.minimizer.weights().begin(), r.minimizer.weights().end());
  const auto heavy = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
  for (std::size_t target : {std::size_t{0}, nodes.size() / 2, nodes.size() - 1}) {
    if (target == heavy) continue;
    auto moved = w;
    moved[heavy] -= 0.01;
    moved[target] += 0.01;
    CHECK(rate_I(GridMeasure(nodes, moved), cfg) > r.objective);
  }
}

TEST_CASE("objective never increases along the iteration") {
  const std::vector<double> nodes = default_grid(80, 1e-4, 4.0);
  const GasConfig cfg = gas(GFunction::power(2.0));
  double prev = std::numeric_limits<double>::infinity();
  for (int iters : {1, 2, 5, 10, 40, 200}) {
    SolverOptions opt;
    opt.max_iter = iters;
    opt.tol = 1e-14;
    const SolverReport r = minimize_I(cfg, nodes, opt);
    CHECK(r.objective <= prev);
    CHECK(r.iterations <= iters);
    prev = r.objective;
  }
}

TEST_CASE("non-convergence is reported with the last iterate") {
  SolverOptions opt;
  opt.max_iter = 3;
  opt.tol = 1e-12;
  const SolverReport r = minimize_I(gas(GFunction::log()), default_grid(50, 1e-4, 4.0), opt);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.kkt_residual > 1e-12);
  CHECK_THROWS_AS(minimize_I(gas(GFunction::log()), {1.0, 0.5, 2.0}), DomainError);
}

TEST_CASE("g = identity, V = x gives Marchenko-Pastur on [0, 4]") {
  const SolverReport r = minimize_I(gas(GFunction::identity()), default_grid(400, 1e-4, 5.0));
  REQUIRE(r.converged);
  std::vector<double> q(4000);
  for (int k = 0; k < 4000; ++k) q[static_cast<std::size_t>(k)] = mp_quantile((k + 0.5) / 4000.0);
  CHECK(w1_distance(r.minimizer, EmpiricalMeasure(q)) <= 0.02);
  CHECK(std::abs(r.b_eq - 4.0) <= 0.1);
}

TEST_CASE("two initialisations reach the same minimiser") {
  const std::vector<double> nodes = default_grid(120, 1e-4, 4.0);
  const GasConfig cfg = gas(GFunction::log());
  const SolverReport a = minimize_I(cfg, nodes);
  SolverOptions opt;
  opt.initial_weights = beta_shape_weights(nodes.size(), 2.0, 5.0);
  const SolverReport b = minimize_I(cfg, nodes, opt);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(w1_distance(a.minimizer, b.minimizer) <= 1e-3);
}

TEST_CASE("doubling the grid barely moves the minimiser") {
  const GasConfig cfg = gas(GFunction::identity());
  const SolverReport coarse = minimize_I(cfg, default_grid(200, 1e-4, 5.0));
  const SolverReport fine = minimize_I(cfg, default_grid(400, 1e-4, 5.0));
  CHECK(w1_distance(coarse.minimizer, fine.minimizer) <= 0.01);
}

TEST_CASE("DH equilibrium") {
  const SolverReport& r = dh_solution();
  REQUIRE(r.converged);
  CHECK(w1_distance(r.minimizer, EmpiricalMeasure(dh_quantile_points(4000))) <= 0.02);
}

TEST_CASE("largest-particle rate") {
  const SolverReport& r = dh_solution();
  const GasConfig cfg = gas(GFunction::log());
  const LargestParticleRate j(r.minimizer, cfg);
  CHECK(j.b_eq() == r.b_eq);
  CHECK(j(j.b_eq()) == 0.0);
  CHECK(std::isinf(j(0.9 * j.b_eq())));
  CHECK(std::isinf(rate_J_largest(0.5 * j.b_eq(), r.minimizer, cfg)));
  // The discrete support ends slightly beyond e, so J(e) itself is +inf.
  CHECK(std::abs(j.unconstrained(kE)) <= 0.02);
  double prev = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double x = j.b_eq() + (3.0 * kE - j.b_eq()) * k / 20.0;
    const double v = j(x);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("default grid and beta weights") {
  const auto g = default_grid(400, 1e-4, 4.0);
  REQUIRE(g.size() == 400);
  CHECK(g.front() == 1e-4);
  CHECK(g.back() == doctest::Approx(4.0));
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);
  const auto w = beta_shape_weights(50, 2.0, 5.0);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(default_grid(4, 1.0, 2.0), DomainError);
}
