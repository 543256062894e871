#include "biortho/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "biortho/error.hpp"

namespace biortho {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double parse_double(std::string_view s) {
  std::string text(s);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse number '" + text + "'");
  }
  if (used != text.size()) throw DomainError("cannot parse number '" + text + "'");
  return value;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    out.push_back(parse_double(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

GFunction GFunction::power(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("power g requires theta > 0");
  return GFunction(Kind::kPower, theta);
}

GFunction GFunction::for_theta(double theta) {
  if (theta < 0.0) throw DomainError("theta must be nonnegative");
  return theta == 0.0 ? log() : power(theta);
}

GFunction GFunction::parse(std::string_view spec) {
  if (spec == "log") return log();
  if (spec == "asinh2") return asinh2();
  if (spec == "exp") return exp();
  if (spec == "id" || spec == "identity") return identity();
  if (spec.starts_with("power:")) return power(parse_double(spec.substr(6)));
  throw DomainError("unknown g '" + std::string(spec) + "' (expected power:T|log|asinh2|exp|id)");
}

std::string GFunction::name() const {
  switch (kind_) {
    case Kind::kPower:
      return "power:" + format_number(theta_);
    case Kind::kLog:
      return "log";
    case Kind::kAsinh2:
      return "asinh2";
    case Kind::kExp:
      return "exp";
    case Kind::kIdentity:
      return "id";
  }
  return "?";
}

double GFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::kPower:
      return std::pow(x, theta_);
    case Kind::kLog:
      return std::log(x);
    case Kind::kAsinh2: {
      const double a = std::asinh(std::sqrt(x));
      return a * a;
    }
    case Kind::kExp:
      return std::exp(x);
    case Kind::kIdentity:
      return x;
  }
  return x;
}

double GFunction::derivative(double x) const {
  switch (kind_) {
    case Kind::kPower:
      return theta_ * std::pow(x, theta_ - 1.0);
    case Kind::kLog:
      return 1.0 / x;
    case Kind::kAsinh2: {
      const double r = std::sqrt(x);
      return std::asinh(r) / (r * std::sqrt(1.0 + x));
    }
    case Kind::kExp:
      return std::exp(x);
    case Kind::kIdentity:
      return 1.0;
  }
  return 1.0;
}

double GFunction::log_abs(double x) const {
  switch (kind_) {
    case Kind::kPower:
      return theta_ * std::log(x);
    case Kind::kLog:
      return std::log(std::abs(std::log(x)));
    case Kind::kAsinh2:
      return 2.0 * std::log(std::asinh(std::sqrt(x)));
    case Kind::kExp:
      return x;
    case Kind::kIdentity:
      return std::log(std::abs(x));
  }
  return 0.0;
}

double GFunction::log_abs_diff(double x, double y) const {
  if (x == y) return kNegInf;
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  switch (kind_) {
    case Kind::kPower: {
      if (lo == 0.0) return theta_ * std::log(hi);
      const double ratio_log = std::log1p((hi - lo) / lo);
      return theta_ * std::log(lo) + std::log(std::expm1(theta_ * ratio_log));
    }
    case Kind::kLog:
      return std::log(std::log1p((hi - lo) / lo));
    case Kind::kAsinh2: {
      const double a = std::asinh(std::sqrt(hi));
      const double c = std::asinh(std::sqrt(lo));
      const double t = (hi - lo) / (std::sqrt(hi) * std::sqrt(1.0 + lo) + std::sqrt(lo) * std::sqrt(1.0 + hi));
      return std::log(std::asinh(t)) + std::log(a + c);
    }
    case Kind::kExp:
      return hi + std::log(-std::expm1(lo - hi));
    case Kind::kIdentity:
      return std::log(hi - lo);
  }
  return 0.0;
}

Potential Potential::linear(double slope) {
  if (!(slope > 0.0) || !std::isfinite(slope)) throw DomainError("linear V requires a positive slope");
  return Potential({0.0, slope});
}

Potential Potential::polynomial(std::vector<double> coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  if (coefficients.size() < 2 || !(coefficients.back() > 0.0)) {
    throw DomainError("polynomial V requires degree >= 1 and a positive leading coefficient");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw DomainError("polynomial V coefficients must be finite");
  }
  return Potential(std::move(coefficients));
}

Potential Potential::parse(std::string_view spec) {
  if (spec.starts_with("linear:")) return linear(parse_double(spec.substr(7)));
  if (spec.starts_with("poly:")) return polynomial(parse_list(spec.substr(5)));
  throw DomainError("unknown V '" + std::string(spec) + "' (expected linear:A|poly:c0,c1,...)");
}

double Potential::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string Potential::name() const {
  if (coeffs_.size() == 2 && coeffs_[0] == 0.0) return "linear:" + format_number(coeffs_[1]);
  std::string s = "poly:";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ',';
    s += format_number(coeffs_[i]);
  }
  return s;
}

GrowthReport check_growth(const GasConfig& cfg) {
  GrowthReport report;
  report.worst_ratio = std::numeric_limits<double>::infinity();
  const double beta = cfg.b + 1.0;
  for (double x : {1e2, 1e4, 1e6, 1e8}) {
    const double v = cfg.v(x);
    for (double log_term : {std::log(x), cfg.g.log_abs(x)}) {
      if (!(log_term > 0.0)) continue;
      const double ratio = v / (beta * log_term);
      if (ratio < report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_x = x;
      }
    }
  }
  report.passed = report.worst_ratio > 1.0;
  if (!report.passed) {
    std::ostringstream os;
    os << "growth condition fails: V(x)/((b+1) log) = " << report.worst_ratio << " at x = " << report.worst_x;
    report.message = os.str();
  }
  return report;
}

}  // namespace biortho
