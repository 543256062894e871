#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace biortho {

/// Second interaction map g of the gas. Strictly increasing on (0, inf).
class GFunction {
 public:
  enum class Kind { kPower, kLog, kAsinh2, kExp, kIdentity };

  static GFunction power(double theta);
  static GFunction log() { return GFunction(Kind::kLog, 0.0); }
  /// asinh(sqrt(x))^2.
  static GFunction asinh2() { return GFunction(Kind::kAsinh2, 0.0); }
  static GFunction exp() { return GFunction(Kind::kExp, 0.0); }
  static GFunction identity() { return GFunction(Kind::kIdentity, 0.0); }
  /// x^theta for theta > 0, log for theta == 0.
  static GFunction for_theta(double theta);
  /// "power:2", "log", "asinh2", "exp", "id" (or "identity").
  static GFunction parse(std::string_view spec);

  Kind kind() const { return kind_; }
  double theta() const { return theta_; }
  std::string name() const;

  double operator()(double x) const;
  double derivative(double x) const;
  /// log|g(x)|, finite for large x even where g overflows.
  double log_abs(double x) const;
  /// log|g(x) - g(y)| computed without cancellation for x close to y.
  double log_abs_diff(double x, double y) const;

 private:
  GFunction(Kind kind, double theta) : kind_(kind), theta_(theta) {}
  Kind kind_;
  double theta_;
};

/// Confining potential V.
class Potential {
 public:
  static Potential linear(double slope);
  /// c0 + c1 x + c2 x^2 + ...; the leading coefficient must be positive.
  static Potential polynomial(std::vector<double> coefficients);
  /// "linear:1", "poly:c0,c1,...".
  static Potential parse(std::string_view spec);

  double operator()(double x) const;
  std::string name() const;
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  explicit Potential(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}
  std::vector<double> coeffs_;
};

/// Two-interaction gas on (0, inf)^n with density proportional to
/// exp(-n sum V(x_i)) prod x_j^(b-1) prod_{i<j} |x_i - x_j| |g(x_i) - g(x_j)|.
struct GasConfig {
  int n = 1;
  GFunction g = GFunction::identity();
  Potential v = Potential::linear(1.0);
  double b = 1.0;
};

struct GrowthReport {
  bool passed = true;
  double worst_ratio = 0.0;  // smallest ratio seen over the probe points
  double worst_x = 0.0;
  std::string message;
};

/// Probes V(x) / ((b+1) log x) > 1 and V(x) / ((b+1) log|g(x)|) > 1 at
/// x in {1e2, 1e4, 1e6, 1e8}. Probes where the logarithm is nonpositive
/// are treated as satisfied.
GrowthReport check_growth(const GasConfig& cfg);

}  // namespace biortho
