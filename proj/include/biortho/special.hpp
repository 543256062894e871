#pragma once

#include <complex>

namespace biortho {

using Complex = std::complex<double>;

inline constexpr double kE = 2.718281828459045235360287;
inline constexpr double kInvE = 0.367879441171442321595524;
inline constexpr double kPi = 3.141592653589793238462643;

/// Principal branch W0 on [-1/e, inf). Arguments within 1e-15 below -1/e
/// are treated as the branch point. Throws DomainError below that.
double lambert_w0_real(double x);

/// Principal branch W0 on the complex plane. Points exactly on the open cut
/// (-inf, -1/e) take the boundary value from the upper half-plane, i.e. the
/// same result as lambert_w0_cut_above. Throws NumericalError if Halley's
/// iteration does not converge.
Complex lambert_w0_complex(Complex z);

/// lim_{eps->0+} W0(x + i eps) for x < -1/e: the root of w e^w = x with
/// Im w in (0, pi).
Complex lambert_w0_cut_above(double x);

/// Same root as lambert_w0_cut_above(-exp(log_abs_x)), computed from the log
/// of |x| so that arguments beyond the double range are representable. Solves
/// w + log w = log_abs_x + i pi. Requires log_abs_x > -1.
Complex lambert_w0_cut_above_log(double log_abs_x);

}  // namespace biortho
