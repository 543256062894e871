#include "biortho/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "biortho/error.hpp"
#include "biortho/parallel.hpp"
#include "biortho/random.hpp"
#include "biortho/special.hpp"

namespace biortho {

void EnsembleParams::validate() const {
  if (n < 1) throw DomainError("ensemble: n must be positive");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("ensemble: theta must be >= 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("ensemble: b must be > 0");
}

ComplexMatrix sample_triangular(const EnsembleParams& params, std::uint64_t trial) {
  params.validate();
  RandomStream rng(params.seed, trial);
  const int n = params.n;
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) t(i, j) = rng.complex_normal();
    const double modulus = std::sqrt(rng.gamma(params.c(i + 1)));
    const double phase = 2.0 * kPi * rng.uniform();
    t(i, i) = std::polar(modulus, phase);
  }
  return t;
}

std::vector<double> eigenvalues_psd(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("eigenvalues_psd: matrix must be square");
  const double norm = m.norm();
  if ((m - m.adjoint()).norm() > 1e-12 * norm) throw DomainError("eigenvalues_psd: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues_psd: eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> triangular_singular_values(const ComplexMatrix& t) {
  const Eigen::Index n = t.rows();
  if (n == 0 || t.cols() != n) throw DomainError("triangular_singular_values: matrix must be square");
  Eigen::BDCSVD<ComplexMatrix> direct(t);
  if (direct.info() != Eigen::Success) throw NumericalError("triangular_singular_values: SVD did not converge");
  const Eigen::VectorXd& su = direct.singularValues();
  std::vector<double> out(su.data(), su.data() + n);
  if (!(su[0] > 0.0)) throw NumericalError("triangular_singular_values: zero matrix");

  // Values below tol * s_max carry no relative accuracy from the direct SVD.
  const double tol = 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  Eigen::Index n_direct = 0;
  while (n_direct < n && su[n_direct] >= tol * su[0]) ++n_direct;
  if (n_direct == n) return out;

  // The small end is the large end of T^-1, read off a rank-revealing QR of
  // the (rescaled) inverse followed by a Jacobi SVD of its leading rows.
  std::vector<double> small;
  ComplexMatrix inv = t.triangularView<Eigen::Lower>().solve(ComplexMatrix::Identity(n, n));
  if (inv.allFinite()) {
    const double scale = 1.0 / inv.cwiseAbs().maxCoeff();
    inv *= scale;
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(inv);
    const auto& r = qr.matrixQR();
    const double r0 = std::abs(r(0, 0));
    Eigen::Index rows = 1;
    while (rows < n && std::abs(r(rows, rows)) >= tol * r0) ++rows;
    rows = std::min<Eigen::Index>(rows + 1, n);
    const ComplexMatrix lead = r.topRows(rows).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<ComplexMatrix> top(lead);
    const Eigen::VectorXd& si = top.singularValues();
    for (Eigen::Index k = 0; k < si.size() && si[k] >= tol * si[0] && si[k] > 0.0; ++k) {
      small.push_back(scale / si[k]);
    }
  }
  const Eigen::Index n_small = std::min<Eigen::Index>(static_cast<Eigen::Index>(small.size()), n - n_direct);
  for (Eigen::Index k = 0; k < n_small; ++k) out[static_cast<std::size_t>(n - 1 - k)] = small[k];

  // Unresolved band: log-linear interpolation between the resolved ends, or
  // a descent by tol per index when the inverse is unusable.
  const Eigen::Index gap_end = n - n_small;
  const double hi = std::log(out[static_cast<std::size_t>(n_direct - 1)]);
  const double lo = n_small > 0 ? std::log(out[static_cast<std::size_t>(gap_end)]) : 0.0;
  for (Eigen::Index k = n_direct; k < gap_end; ++k) {
    const double step = static_cast<double>(k - n_direct + 1);
    out[static_cast<std::size_t>(k)] =
        n_small > 0 ? std::exp(hi + (lo - hi) * step / static_cast<double>(gap_end - n_direct + 1))
                    : std::exp(hi + step * std::log(tol));
  }
  return out;
}

EmpiricalMeasure sample_spectrum(const EnsembleParams& params, std::uint64_t trial, SpectrumMethod method) {
  const ComplexMatrix t = sample_triangular(params, trial);
  const double n = static_cast<double>(params.n);
  std::vector<double> lambda;
  if (method == SpectrumMethod::kHermitianProduct) {
    lambda = eigenvalues_psd(t * t.adjoint());
    for (double& l : lambda) l /= n;
  } else {
    lambda = triangular_singular_values(t);
    for (double& s : lambda) s = s * s / n;
  }
  return EmpiricalMeasure(std::move(lambda));
}

std::vector<EmpiricalMeasure> sample_spectra(const EnsembleParams& params, int trials, SpectrumMethod method) {
  if (trials < 0) throw DomainError("sample_spectra: trials must be nonnegative");
  std::vector<EmpiricalMeasure> out(static_cast<std::size_t>(trials));
  parallel_for(out.size(), [&](std::size_t k) { out[k] = sample_spectrum(params, k, method); });
  return out;
}

double largest_particle(const EmpiricalMeasure& m) {
  if (m.empty()) throw DomainError("largest_particle: empty measure");
  return m.points().back();
}

}  // namespace biortho
