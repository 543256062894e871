#include "doctest.h"

#include <cmath>

#include "biortho/dh_law.hpp"
#include "biortho/error.hpp"
#include "biortho/quadrature.hpp"

using namespace biortho;

TEST_CASE("density values and support") {
  CHECK(dh_density(kE) == 0.0);
  CHECK(dh_density(3.0) == 0.0);
  CHECK(dh_density(0.0) == 0.0);
  CHECK(dh_density(-1.0) == 0.0);
  CHECK(dh_density(1.0) == doctest::Approx(0.2253).epsilon(1e-3 / 0.2253));
  for (int k = 1; k < 1000; ++k) CHECK(dh_density(kE * k / 1000.0) > 0.0);
  // Deep in the near-zero region the log form takes over.
  CHECK(dh_density(1e-300) > 0.0);
  CHECK(std::isfinite(dh_density(1e-300)));
}

TEST_CASE("cdf: endpoints, monotonicity and mesh self-convergence") {
  CHECK(dh_cdf(0.0) == 0.0);
  CHECK(dh_cdf(kE) == doctest::Approx(1.0).epsilon(1e-8));
  const double c1 = dh_cdf(1.0);
  CHECK(c1 > 0.0);
  CHECK(c1 < 1.0);
  const DHLaw coarse(8);
  const DHLaw fine(32);
  CHECK(std::abs(coarse.cdf(1.0) - fine.cdf(1.0)) <= 1e-8);
  double prev = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double c = dh_cdf(kE * k / 200.0);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("quantile inverts the cdf") {
  double prev = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double p = k / 100.0;
    const double q = dh_quantile(p);
    CHECK(q > prev);
    CHECK(dh_cdf(q) == doctest::Approx(p).epsilon(1e-8));
    prev = q;
  }
  CHECK(dh_cdf(dh_quantile(1e-6)) == doctest::Approx(1e-6).epsilon(1e-6));
  CHECK_THROWS_AS(dh_quantile(0.0), DomainError);
  CHECK_THROWS_AS(dh_quantile(1.0), DomainError);
}

TEST_CASE("exact and numeric moments") {
  CHECK(dh_moment_exact(0) == 1.0);
  CHECK(dh_moment_exact(1) == 0.5);
  CHECK(dh_moment_exact(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(dh_moment_exact(3) == doctest::Approx(1.125).epsilon(1e-15));
  CHECK(dh_moment_exact(4) == doctest::Approx(32.0 / 15.0).epsilon(1e-15));
  const double expected[] = {1.0, 0.5, 2.0 / 3.0, 1.125, 32.0 / 15.0, 3125.0 / 720.0, 46656.0 / 5040.0};
  for (int k = 0; k <= 6; ++k) {
    CHECK(std::abs(dh_moment_numeric(k) - expected[k]) <= 1e-6 * std::max(1.0, expected[k]));
  }
  CHECK(dh_moment_numeric(6) == doctest::Approx(9.2571).epsilon(1e-4 / 9.2571));
  CHECK_THROWS_AS(dh_moment_numeric(13), DomainError);
}

TEST_CASE("Stieltjes transform") {
  const Complex big{0.0, 1e6};
  CHECK(std::abs(dh_stieltjes(big) + 1.0 / big) <= 1e-5);
  // Direct quadrature of int dmu(x) / (x - i).
  const Complex z{0.0, 1.0};
  const double re = dh_law().integrate([&](double x) { return (1.0 / (x - z)).real(); });
  const double im = dh_law().integrate([&](double x) { return (1.0 / (x - z)).imag(); });
  CHECK(std::abs(dh_stieltjes(z) - Complex(re, im)) <= 1e-6);
  // Boundary values recover the density.
  CHECK(dh_stieltjes({1.0, 1e-6}).imag() / kPi == doctest::Approx(dh_density(1.0)).epsilon(1e-3));
  for (int k = 0; k < 50; ++k) {
    const double x = 0.1 + (kE - 0.2) * k / 49.0;
    CHECK(std::abs(dh_stieltjes({x, 1e-6}).imag() / kPi - dh_density(x)) <= 1e-3);
  }
  CHECK_THROWS_AS(dh_stieltjes({1.0, 0.0}), DomainError);
}

TEST_CASE("R-transform") {
  CHECK(dh_r_transform(0.5).real() == doctest::Approx(2.0 / std::log(2.0) - 2.0).epsilon(1e-12));
  CHECK(std::abs(dh_r_transform(0.5).imag()) == 0.0);
  // The series branch and the closed form join smoothly.
  CHECK(std::abs(dh_r_transform(1e-8) - 0.5) <= 1e-7);
  CHECK(std::abs(dh_r_transform(0.999e-3) - dh_r_transform(1.001e-3)) <= 1e-5);
  for (double x : {0.01, 0.2, 0.9}) CHECK(dh_r_transform(x).imag() == 0.0);
  CHECK_THROWS_AS(dh_r_transform(0.0), DomainError);
  CHECK_THROWS_AS(dh_r_transform(1.0), DomainError);
}

TEST_CASE("quantile points") {
  const auto pts = dh_quantile_points(400);
  REQUIRE(pts.size() == 400);
  for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k] > pts[k - 1]);
  CHECK(pts.back() < kE);
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const auto& gl = gauss_legendre_20();
  CHECK(gl.integrate([](double x) { return std::pow(x, 39); }, 0.0, 1.0) == doctest::Approx(1.0 / 40.0).epsilon(1e-14));
}
