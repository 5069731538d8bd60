#pragma once

// Symplectic form and Williamson diagonalization of positive-definite
// covariance matrices. Phase-space ordering is (q_1..q_N, p_1..p_N).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/format.hpp"
#include "uncertainty_lab/linalg.hpp"
#include "uncertainty_lab/moments.hpp"

namespace uncertainty_lab {

/// J = [[0, -I], [I, 0]] over N modes; the single-mode case is [[0, -1], [1, 0]].
struct SymplecticForm {
  std::size_t n_modes = 0;
  RMatrix matrix;

  explicit SymplecticForm(std::size_t modes) : n_modes(modes) {
    if (modes == 0) throw InvalidArgument("SymplecticForm: need at least one mode");
    const auto n = static_cast<Eigen::Index>(modes);
    matrix = RMatrix::Zero(2 * n, 2 * n);
    matrix.topRightCorner(n, n) = -RMatrix::Identity(n, n);
    matrix.bottomLeftCorner(n, n) = RMatrix::Identity(n, n);
  }
};

struct WilliamsonResult {
  RMatrix lambda;           // symplectic: Lambda J Lambda^T = J
  std::vector<double> nus;  // symplectic eigenvalues, descending
};

/// Finds symplectic Lambda with Lambda sigma Lambda^T = diag(nu, nu).
///
/// With B = sigma^{-1/2} J sigma^{-1/2} (real antisymmetric), each eigenpair
/// iB v = mu v with mu > 0 gives v = x + iy where sqrt(2)x, sqrt(2)y are
/// orthonormal and B x = mu y, B y = -mu x. Stacking those into an orthogonal
/// O gives O^T B O = [[0, -1/nu], [1/nu, 0]] with nu = 1/mu, so
/// Lambda = diag(nu, nu)^{1/2} O^T sigma^{-1/2} is symplectic and diagonalizes sigma.
inline WilliamsonResult williamson(const RMatrix& sigma) {
  detail::require_square(sigma, "williamson");
  const Eigen::Index dim = sigma.rows();
  if (dim == 0 || dim % 2 != 0) {
    throw DimensionError("williamson: covariance matrix must be 2N x 2N, got " +
                         std::to_string(dim));
  }
  if (!sigma.allFinite()) throw InvalidArgument("williamson: non-finite entry");
  const double scale = std::max(max_abs(sigma), 1e-300);
  if (max_abs(RMatrix(sigma - sigma.transpose())) > 1e-10 * scale) {
    throw InvalidArgument("williamson: covariance matrix is not symmetric");
  }
  const RMatrix sym = 0.5 * (sigma + sigma.transpose());
  const Eigen::Index n = dim / 2;

  Eigen::SelfAdjointEigenSolver<RMatrix> sig(sym);
  if (sig.info() != Eigen::Success) throw NumericalError("williamson: eigensolver failed");
  if (!(sig.eigenvalues().minCoeff() > 0.0)) {
    throw InvalidArgument("williamson: covariance matrix is not positive definite (min eigenvalue " +
                          format_short(sig.eigenvalues().minCoeff()) + ")");
  }
  const RMatrix inv_sqrt = sig.eigenvectors() *
                           sig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                           sig.eigenvectors().transpose();

  const SymplecticForm j(static_cast<std::size_t>(n));
  const RMatrix b = inv_sqrt * j.matrix * inv_sqrt;
  const CMatrix ib = Complex(0.0, 1.0) * b.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (ib + ib.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("williamson: eigensolver failed");

  // Ascending eigenvalues: the last n are the positive mu, largest mu last.
  // nu = 1/mu descending means mu ascending, i.e. columns n..2n-1 in order.
  RMatrix o(dim, dim);
  std::vector<double> nus(static_cast<std::size_t>(n));
  for (Eigen::Index jdx = 0; jdx < n; ++jdx) {
    const Eigen::Index col = n + jdx;
    const double mu = es.eigenvalues()[col];
    if (!(mu > 0.0)) throw NumericalError("williamson: degenerate symplectic spectrum");
    CVector v = es.eigenvectors().col(col);
    // Fix the phase: the largest-modulus component (lowest index on ties,
    // up to rounding) is made real positive.
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const double a = std::abs(v[k]);
      if (a > best * (1.0 + 1e-9)) {
        best = a;
        pivot = k;
      }
    }
    v *= std::conj(v[pivot]) / std::abs(v[pivot]);
    o.col(jdx) = std::sqrt(2.0) * v.real();
    o.col(n + jdx) = std::sqrt(2.0) * v.imag();
    nus[static_cast<std::size_t>(jdx)] = 1.0 / mu;
  }

  RVector d(dim);
  for (Eigen::Index jdx = 0; jdx < n; ++jdx) {
    d[jdx] = std::sqrt(nus[static_cast<std::size_t>(jdx)]);
    d[n + jdx] = d[jdx];
  }
  RMatrix lambda = d.asDiagonal() * o.transpose() * inv_sqrt;
  return {std::move(lambda), std::move(nus)};
}

inline WilliamsonResult williamson(const CovarianceMatrix& sigma) { return williamson(sigma.matrix); }

}  // namespace uncertainty_lab
