#pragma once

#include <functional>
#include <vector>

#include "biortho/special.hpp"

namespace biortho {

/// Dykema-Haagerup law on [0, e].
///
/// The density is the boundary value (1/pi) Im S(x + i0) of the Stieltjes
/// transform S(z) = -1 + exp(W0(-1/z)). Integrals against it use a composite
/// Gauss-Legendre mesh in two substitutions: x = exp(-1/u) on (0, 0.1], which
/// turns the 1/(x log^2 x) growth at the origin into a bounded integrand, and
/// x = e - s^2 on [0.1, e], which removes the square-root edge at e.
class DHLaw {
 public:
  /// `mesh` is the initial number of panels on [0.1, e]. The mesh is doubled
  /// until the total mass is stable to 1e-10.
  explicit DHLaw(int mesh = 8);

  static double density(double x);
  double cdf(double x) const;
  /// Inverse of cdf on (0, 1). Throws DomainError outside.
  double quantile(double p) const;

  /// k^k / (k+1)!, with 0^0 = 1.
  static double moment_exact(int k);
  /// Quadrature moment, k in [0, 12].
  double moment_numeric(int k) const;

  /// Integral of phi against the law; the mesh is doubled until two
  /// successive results agree to 1e-9 relative.
  double integrate(const std::function<double(double)>& phi) const;

  /// -1 + exp(W0(-1/z)) for Im z > 0.
  static Complex stieltjes(Complex z);
  /// -1/((1-z) log(1-z)) - 1/z for 0 < |z| < 1.
  static Complex r_transform(Complex z);

  double total_mass() const { return total_; }
  int panel_count() const { return static_cast<int>(panels_.size()); }

 private:
  enum class Region { kNearZero, kBulk };
  struct Panel {
    Region region;
    double v_lo;  // substitution variable bounds
    double v_hi;
    double x_lo;  // x bounds, x_lo < x_hi
    double x_hi;
    double mass = 0.0;
    double cum_before = 0.0;
  };

  static double weight_in_variable(Region r, double v);
  static double x_of(Region r, double v);
  static double v_of(Region r, double x);
  static Panel make_panel(Region r, double v_lo, double v_hi);
  static std::vector<Panel> split(const std::vector<Panel>& panels);
  double integrate_on(const std::vector<Panel>& panels, const std::function<double(double)>& phi) const;
  double partial_mass(const Panel& p, double v) const;

  std::vector<Panel> panels_;
  double total_ = 0.0;
};

/// Process-wide instance with the default mesh, built on first use.
const DHLaw& dh_law();

inline double dh_density(double x) { return DHLaw::density(x); }
inline double dh_cdf(double x) { return dh_law().cdf(x); }
inline double dh_quantile(double p) { return dh_law().quantile(p); }
inline double dh_moment_exact(int k) { return DHLaw::moment_exact(k); }
inline double dh_moment_numeric(int k) { return dh_law().moment_numeric(k); }
inline Complex dh_stieltjes(Complex z) { return DHLaw::stieltjes(z); }
inline Complex dh_r_transform(Complex z) { return DHLaw::r_transform(z); }

/// Points dh_quantile((k - 1/2) / m), k = 1..m.
std::vector<double> dh_quantile_points(int m);

}  // namespace biortho
