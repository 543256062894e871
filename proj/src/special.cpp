#include "biortho/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "biortho/error.hpp"

namespace biortho {
namespace {

constexpr int kMaxIterations = 100;
constexpr double kStepTolerance = 1e-15;
constexpr double kRoundoff = std::numeric_limits<double>::epsilon();
constexpr double kBranchSlack = 1e-15;

// Expansion of W0 around the branch point in p = sqrt(2(e z + 1)).
template <typename T>
T branch_series(T p) {
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 +
                        p * (-43.0 / 540.0 +
                             p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

template <typename T>
T halley_step(T w, T z, T* residual) {
  const T ew = std::exp(w);
  const T f = w * ew - z;
  *residual = f;
  const T wp1 = w + 1.0;
  return f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
}

[[noreturn]] void fail(const char* where, double re, double im) {
  throw NumericalError(std::string(where) + ": Halley iteration did not converge at z = (" +
                       std::to_string(re) + ", " + std::to_string(im) + ")");
}

// Halley iteration on w e^w = z. When keep_upper is set, iterates are kept in
// the strip 0 <= Im w <= pi by halving any step that leaves it.
Complex halley_complex(Complex w, Complex z, bool keep_upper) {
  for (int it = 0; it < kMaxIterations; ++it) {
    Complex f;
    Complex step = halley_step(w, z, &f);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    if (std::abs(f) <= 2.0 * kRoundoff * std::abs(z)) return w;
    Complex next = w - step;
    bool clipped = false;
    if (keep_upper) {
      for (int h = 0; h < 60 && (next.imag() < 0.0 || next.imag() > kPi); ++h) {
        step *= 0.5;
        next = w - step;
        clipped = true;
      }
    }
    w = next;
    if (!clipped && std::abs(step) <= kStepTolerance * (1.0 + std::abs(w))) return w;
  }
  fail("lambert_w0", z.real(), z.imag());
}

Complex initial_guess(Complex z) {
  const Complex q = kE * z + 1.0;
  if (std::abs(q) < 0.5) return branch_series(std::sqrt(2.0 * q));
  // Just above the cut: the branch series with the upper square root.
  if (z.real() < 0.0 && std::abs(q) < 2.0) return branch_series(std::sqrt(2.0 * q));
  if (std::abs(z) < 0.4) return z * (1.0 + z * (-1.0 + z * (1.5 - z * (8.0 / 3.0))));
  if (std::abs(z) > 3.0) {
    const Complex l1 = std::log(z);
    const Complex l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  return std::log(1.0 + z);
}

}  // namespace

double lambert_w0_real(double x) {
  if (!std::isfinite(x)) {
    if (x == std::numeric_limits<double>::infinity()) return x;
    throw DomainError("lambert_w0_real: argument is not finite");
  }
  if (x < -kInvE - kBranchSlack) {
    throw DomainError("lambert_w0_real: argument below -1/e");
  }
  const double q = std::max(kE * x + 1.0, 0.0);
  if (q == 0.0) return -1.0;
  if (x == 0.0) return 0.0;
  const double p = std::sqrt(2.0 * q);
  if (p < 1e-3) return branch_series(p);

  double w;
  if (q < 0.5) {
    w = branch_series(p);
  } else if (std::abs(x) < 0.4) {
    w = x * (1.0 + x * (-1.0 + x * (1.5 - x * (8.0 / 3.0))));
  } else if (x > 3.0) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  } else {
    w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  }

  for (int it = 0; it < kMaxIterations; ++it) {
    double f;
    const double step = halley_step(w, x, &f);
    if (std::abs(f) <= 2.0 * kRoundoff * std::abs(x)) return w;
    w -= step;
    if (std::abs(step) <= kStepTolerance * (1.0 + std::abs(w))) return w;
  }
  fail("lambert_w0_real", x, 0.0);
}

Complex lambert_w0_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("lambert_w0_complex: argument is not finite");
  }
  if (z.imag() == 0.0) {
    if (z.real() >= -kInvE - kBranchSlack) return {lambert_w0_real(z.real()), 0.0};
    return lambert_w0_cut_above(z.real());
  }
  // W0(conj z) = conj W0(z) off the cut.
  if (z.imag() < 0.0) return std::conj(lambert_w0_complex(std::conj(z)));

  const Complex q = kE * z + 1.0;
  if (std::abs(q) < 5e-7) return branch_series(std::sqrt(2.0 * q));
  return halley_complex(initial_guess(z), z, /*keep_upper=*/true);
}

Complex lambert_w0_cut_above(double x) {
  if (!std::isfinite(x)) throw DomainError("lambert_w0_cut_above: argument is not finite");
  if (x >= -kInvE) throw DomainError("lambert_w0_cut_above: argument must be below -1/e");
  const double q = kE * x + 1.0;  // negative
  // sqrt(2q) on the upper side of the cut is +i sqrt(2|q|).
  const Complex p{0.0, std::sqrt(-2.0 * q)};
  if (std::abs(p) < 1e-3) return branch_series(p);

  Complex w;
  if (-q < 0.5) {
    w = branch_series(p);
  } else {
    const Complex l1{std::log(-x), kPi};
    const Complex l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley_complex(w, Complex{x, 0.0}, /*keep_upper=*/true);
}

Complex lambert_w0_cut_above_log(double log_abs_x) {
  if (!std::isfinite(log_abs_x) || log_abs_x <= -1.0) {
    throw DomainError("lambert_w0_cut_above_log: need log|x| > -1");
  }
  if (log_abs_x < 40.0) return lambert_w0_cut_above(-std::exp(log_abs_x));

  const Complex target{log_abs_x, kPi};
  const Complex l2 = std::log(target);
  Complex w = target - l2 + l2 / target;
  for (int it = 0; it < kMaxIterations; ++it) {
    const Complex f = w + std::log(w) - target;
    const Complex step = f / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= kStepTolerance * (1.0 + std::abs(w))) return w;
  }
  fail("lambert_w0_cut_above_log", log_abs_x, kPi);
}

}  // namespace biortho
