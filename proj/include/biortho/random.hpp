#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace biortho {

/// Deterministic random stream keyed by (seed, stream index). Distinct stream
/// indices give independent sequences, so Monte Carlo trials can run on any
/// number of workers without coordination. All variates are generated here
/// rather than through <random> distributions, whose output is not specified
/// by the standard and differs between library implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal, Marsaglia polar method.
  double normal();
  /// Gamma(shape, scale 1), Marsaglia-Tsang squeeze; shapes below 1 use the
  /// boost Gamma(shape + 1) * U^(1/shape).
  double gamma(double shape);
  /// Complex Gaussian with independent parts of variance 1/2 (E|Z|^2 = 1).
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace biortho
