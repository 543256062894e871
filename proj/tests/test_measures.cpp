#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biortho/error.hpp"
#include "biortho/measures.hpp"
#include "biortho/model.hpp"
#include "biortho/random.hpp"

using namespace biortho;

namespace {

std::vector<Atom> random_atoms(RandomStream& rng, int n) {
  std::vector<Atom> out(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& a : out) {
    a.x = 4.0 * rng.uniform() - 1.0;
    a.w = rng.uniform();
    total += a.w;
  }
  for (auto& a : out) a.w /= total;
  return out;
}

}  // namespace

TEST_CASE("g functions: values, derivatives, parsing") {
  CHECK(GFunction::power(2.0)(3.0) == 9.0);
  CHECK(GFunction::log()(std::exp(1.0)) == doctest::Approx(1.0));
  const double a = std::asinh(std::sqrt(2.0));
  CHECK(GFunction::asinh2()(2.0) == doctest::Approx(a * a));
  CHECK(GFunction::parse("power:1.5").theta() == 1.5);
  CHECK(GFunction::parse("id").kind() == GFunction::Kind::kIdentity);
  CHECK(GFunction::parse("asinh2").name() == "asinh2");
  CHECK(GFunction::for_theta(0.0).kind() == GFunction::Kind::kLog);
  CHECK_THROWS_AS(GFunction::parse("cube"), DomainError);
  CHECK_THROWS_AS(GFunction::power(-1.0), DomainError);
  for (const auto& g : {GFunction::power(0.5), GFunction::power(3.0), GFunction::log(), GFunction::asinh2(),
                        GFunction::exp(), GFunction::identity()}) {
    for (double x : {1e-6, 0.01, 0.5, 1.0, 3.0, 20.0}) {
      CHECK(g.derivative(x) > 0.0);
      const double h = 1e-4 * x;
      CHECK(g.derivative(x) == doctest::Approx((g(x + h) - g(x - h)) / (2.0 * h)).epsilon(1e-6));
      CHECK(g.log_abs_diff(x, 1.001 * x) == doctest::Approx(std::log(std::abs(g(1.001 * x) - g(x)))).epsilon(1e-7));
    }
  }
}

TEST_CASE("potentials") {
  CHECK(Potential::linear(2.0)(3.0) == 6.0);
  CHECK(Potential::parse("poly:1,0,2")(2.0) == 9.0);
  CHECK(Potential::parse("poly:1,0,2").name() == "poly:1,0,2");
  CHECK(Potential::parse("linear:1").name() == "linear:1");
  CHECK_THROWS_AS(Potential::parse("poly:1,-1"), DomainError);
  CHECK_THROWS_AS(Potential::linear(0.0), DomainError);
}

TEST_CASE("growth check") {
  GasConfig cfg;
  cfg.g = GFunction::log();
  cfg.v = Potential::linear(1.0);
  CHECK(check_growth(cfg).passed);
  cfg.g = GFunction::exp();
  const auto fail = check_growth(cfg);
  CHECK_FALSE(fail.passed);
  CHECK(fail.worst_ratio == doctest::Approx(0.5));
  CHECK_FALSE(fail.message.empty());
  cfg.v = Potential::polynomial({0.0, 0.0, 1.0});
  CHECK(check_growth(cfg).passed);
}

TEST_CASE("pushforward") {
  const EmpiricalMeasure m({1.0, 2.0, 3.0});
  const auto p = pushforward(m, GFunction::power(2.0));
  CHECK(p.point(0) == 1.0);
  CHECK(p.point(1) == 4.0);
  CHECK(p.point(2) == 9.0);
  const auto l = pushforward(EmpiricalMeasure({1.0, std::exp(1.0)}), GFunction::log());
  CHECK(l.point(0) == 0.0);
  CHECK(l.point(1) == doctest::Approx(1.0));
  const auto same = pushforward(m, GFunction::identity());
  CHECK(std::equal(same.points().begin(), same.points().end(), m.points().begin()));

  const GridMeasure grid({1.0, 2.0, 4.0}, {0.2, 0.3, 0.5});
  const auto pg = pushforward(grid, GFunction::log());
  double total = 0.0;
  for (double w : pg.weights()) total += w;
  CHECK(total == 1.0);
  CHECK(pg.weight(1) == 0.3);
  CHECK_THROWS_AS(pushforward(EmpiricalMeasure({-1.0, 1.0}), GFunction::log()), DomainError);
}

TEST_CASE("W1 distance") {
  const std::vector<Atom> a{{0.0, 1.0}};
  const std::vector<Atom> b{{1.0, 1.0}};
  const std::vector<Atom> half{{0.0, 0.5}, {1.0, 0.5}};
  const std::vector<Atom> mid{{0.5, 1.0}};
  CHECK(w1_distance(a, a) == 0.0);
  CHECK(w1_distance(a, b) == doctest::Approx(1.0));
  CHECK(w1_distance(half, mid) == doctest::Approx(0.5));
}

TEST_CASE("bounded-Lipschitz distance") {
  const std::vector<Atom> a{{0.0, 1.0}};
  const std::vector<Atom> five{{5.0, 1.0}};
  const std::vector<Atom> near{{0.3, 1.0}};
  CHECK(bl_distance(a, a) == 0.0);
  CHECK(bl_distance(a, five) == doctest::Approx(2.0));
  CHECK(bl_distance(a, near) == doctest::Approx(0.3));
}

TEST_CASE("metric axioms and BL <= min(W1, 2) on random triples") {
  RandomStream rng(3, 0);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_atoms(rng, 1 + t % 7);
    const auto b = random_atoms(rng, 1 + (t / 7) % 5);
    const auto c = random_atoms(rng, 3);
    CHECK(w1_distance(a, b) == w1_distance(b, a));
    CHECK(bl_distance(a, b) == doctest::Approx(bl_distance(b, a)).epsilon(1e-12));
    CHECK(w1_distance(a, c) <= w1_distance(a, b) + w1_distance(b, c) + 1e-10);
    CHECK(bl_distance(a, c) <= bl_distance(a, b) + bl_distance(b, c) + 1e-10);
    CHECK(bl_distance(a, b) <= w1_distance(a, b) + 1e-12);
    CHECK(bl_distance(a, b) <= 2.0 + 1e-12);
  }
}

TEST_CASE("off-diagonal log energy") {
  CHECK(log_energy_offdiag(EmpiricalMeasure({0.0, 1.0})) == 0.0);
  CHECK(log_energy_offdiag(EmpiricalMeasure({0.0, 2.0})) == doctest::Approx(-std::log(2.0) / 2.0));
  CHECK_THROWS_AS(log_energy_offdiag(EmpiricalMeasure({1.0, 1.0})), DomainError);
  double prev_gap = 1.0;
  for (int n : {100, 1000}) {
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = (i + 0.5) / n;
    const double gap = std::abs(log_energy_offdiag(EmpiricalMeasure(pts)) - 1.5);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.02);
}

TEST_CASE("grid log energy") {
  const double h = 0.25;
  const GridMeasure single({1.0}, {1.0}, {h});
  CHECK(log_energy_grid(single) == doctest::Approx(-std::log(h) + 1.5));

  const int n = 1000;
  std::vector<double> nodes(n);
  for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = (i + 0.5) / n;
  const GridMeasure uniform(nodes, std::vector<double>(n, 1.0 / n));
  CHECK(std::abs(log_energy_grid(uniform) - 1.5) <= 0.01);

  std::vector<double> shifted = nodes;
  for (double& x : shifted) x += 3.0;
  CHECK(log_energy_grid(GridMeasure(shifted, std::vector<double>(n, 1.0 / n))) ==
        doctest::Approx(log_energy_grid(uniform)).epsilon(1e-12));
}

TEST_CASE("splitting a point mass onto neighbours lowers the grid energy") {
  RandomStream rng(5, 0);
  for (int t = 0; t < 100; ++t) {
    const int n = 20;
    std::vector<double> nodes(n);
    double x = rng.uniform();
    for (auto& v : nodes) v = (x += 0.05 + rng.uniform());
    std::vector<double> w(n, 0.0);
    std::vector<double> others(n);
    double total = 0.0;
    for (auto& v : others) total += (v = rng.uniform());
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * (n - 2));
    const double mass = 0.5;
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = (1.0 - mass) * others[static_cast<std::size_t>(i)] / total;
    std::vector<double> lumped = w;
    lumped[k] += mass;
    std::vector<double> split = w;
    split[k - 1] += mass / 2;
    split[k + 1] += mass / 2;
    CHECK(log_energy_grid(GridMeasure(nodes, split)) < log_energy_grid(GridMeasure(nodes, lumped)));
  }
}

TEST_CASE("grid measure validation") {
  CHECK_THROWS_AS(GridMeasure({1.0, 1.0}, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(GridMeasure({1.0, 2.0}, {0.6, 0.6}), DomainError);
  CHECK_THROWS_AS(GridMeasure({1.0, 2.0}, {1.5, -0.5}), DomainError);
  const auto h = GridMeasure::cell_widths(std::vector<double>{0.0, 1.0, 3.0});
  CHECK(h[0] == 1.0);
  CHECK(h[1] == 1.5);
  CHECK(h[2] == 2.0);
}

TEST_CASE("pair kernel") {
  GasConfig cfg;
  CHECK(pair_kernel_f(1.0, 2.0, cfg) == doctest::Approx(1.5));
  CHECK(pair_kernel_f(1.3, 0.2, cfg) == pair_kernel_f(0.2, 1.3, cfg));
  CHECK(std::isinf(pair_kernel_f(1.0, 1.0, cfg)));
  RandomStream rng(9, 0);
  cfg.g = GFunction::log();
  for (int i = 0; i < 10000; ++i) {
    const double x = std::exp(20.0 * rng.uniform() - 12.0);
    const double y = std::exp(20.0 * rng.uniform() - 12.0);
    CHECK(pair_kernel_f(x, y, cfg) >= pair_kernel_lower_term(x, cfg) + pair_kernel_lower_term(y, cfg));
  }
}

TEST_CASE("measure CSV round trip") {
  const std::vector<Atom> atoms{{0.1, 0.25}, {1.0 / 3.0, 0.75}};
  std::stringstream ss;
  write_measure_csv(ss, atoms);
  CHECK(ss.str().rfind("x,w\n", 0) == 0);
  const auto back = read_measure_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[1].x == atoms[1].x);
  CHECK(back[1].w == atoms[1].w);
  std::stringstream bad("a,b\n1,2\n");
  CHECK_THROWS_AS(read_measure_csv(bad), DomainError);
}
