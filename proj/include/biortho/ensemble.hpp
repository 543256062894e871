#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "biortho/measures.hpp"

namespace biortho {

using ComplexMatrix = Eigen::MatrixXcd;

/// Lower-triangular matrix model: off-diagonal entries standard complex
/// Gaussians, diagonal entry j with |T_jj|^2 ~ Gamma(c_j) and uniform phase,
/// where c_j = theta (j - 1) + b.
struct EnsembleParams {
  int n = 1;
  double theta = 0.0;
  double b = 1.0;
  std::uint64_t seed = 0;

  double c(int j) const { return theta * (j - 1) + b; }  // j is 1-based
  void validate() const;
};

enum class SpectrumMethod {
  /// Singular values of T down to 4 n eps s_max, reciprocal top singular
  /// values of T^{-1} (pivoted QR, then Jacobi SVD of the resolved rows) for
  /// the small end, log-linear interpolation across any band neither
  /// resolves. The small eigenvalues, which reach exp(-O(n)), stay positive
  /// and distinct. If T^{-1} is not finite the unresolved tail descends
  /// geometrically.
  kGraded,
  /// Hermitian eigen-solve of T T*; absolute error of order eps |S|.
  kHermitianProduct,
};

/// Sample T for Monte Carlo trial `trial`; deterministic in (seed, trial).
ComplexMatrix sample_triangular(const EnsembleParams& params, std::uint64_t trial = 0);

/// Ascending eigenvalues of a Hermitian matrix. Rejects input whose
/// anti-Hermitian part exceeds 1e-12 of its Frobenius norm.
std::vector<double> eigenvalues_psd(const ComplexMatrix& m);

/// Singular values of a lower-triangular matrix, descending (kGraded scheme).
std::vector<double> triangular_singular_values(const ComplexMatrix& t);

/// Eigenvalues of T T* / n as an empirical measure.
EmpiricalMeasure sample_spectrum(const EnsembleParams& params, std::uint64_t trial = 0,
                                 SpectrumMethod method = SpectrumMethod::kGraded);

/// Spectra for trials 0..trials-1, computed in parallel.
std::vector<EmpiricalMeasure> sample_spectra(const EnsembleParams& params, int trials,
                                             SpectrumMethod method = SpectrumMethod::kGraded);

double largest_particle(const EmpiricalMeasure& m);

}  // namespace biortho
