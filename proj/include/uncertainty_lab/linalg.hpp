#pragma once

// Dense complex matrix engine. Everything here is a pure function over
// Eigen matrices; the library never keeps matrices in shared mutable state.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "uncertainty_lab/errors.hpp"

namespace uncertainty_lab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kEigTolerance = 1e-10;
inline constexpr std::size_t kMaxMinorDimension = 12;
inline constexpr double kMaxConditionNumber = 1e12;

namespace detail {

template <class Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

template <class A, class B>
void require_same_square(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                         const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()));
  }
}

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace detail

/// Largest entry modulus, max|M_ij|.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// True when max|M - M^dagger| <= tol * max|M|.
inline bool is_hermitian(const CMatrix& m, double rel_tol = kHermitianTolerance) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  return max_abs(CMatrix(m - m.adjoint())) <= rel_tol * scale;
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  detail::require_same_square(a, b, "commutator");
  return a * b - b * a;
}

inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  detail::require_same_square(a, b, "anticommutator");
  return a * b + b * a;
}

struct EighResult {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // orthonormal columns
};

/// Hermitian eigendecomposition. Throws InvalidArgument for non-Hermitian
/// input and NumericalError if the QR iteration does not converge.
inline EighResult eigh(const CMatrix& m) {
  detail::require_square(m, "eigh");
  if (!detail::all_finite(m)) throw InvalidArgument("eigh: matrix has non-finite entries");
  if (!is_hermitian(m)) throw InvalidArgument("eigh: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    const auto limit = static_cast<long>(Eigen::SelfAdjointEigenSolver<CMatrix>::m_maxIterations) *
                       static_cast<long>(m.rows());
    throw NumericalError("eigh: no convergence within " + std::to_string(limit) + " iterations");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// U = exp(i s H) for Hermitian H, built on the eigenbasis of H so that U is
/// unitary to rounding.
inline CMatrix expm_skew(const CMatrix& h, double s) {
  const EighResult e = eigh(h);
  CVector phases(e.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::polar(1.0, s * e.eigenvalues[k]);
  }
  return e.eigenvectors * phases.asDiagonal() * e.eigenvectors.adjoint();
}

namespace detail {

// Cofactor expansion along the first row; used for the small minors.
inline double cofactor_det(const RMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double det = 0.0;
  RMatrix minor(n - 1, n - 1);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (Eigen::Index i = 1; i < n; ++i) {
      Eigen::Index cj = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, cj++) = m(i, j);
      }
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    det += sign * m(0, col) * cofactor_det(minor);
  }
  return det;
}

inline double principal_minor(const RMatrix& m, const std::vector<Eigen::Index>& idx) {
  const auto r = static_cast<Eigen::Index>(idx.size());
  RMatrix sub(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) sub(i, j) = m(idx[i], idx[j]);
  if (r <= 4) return cofactor_det(sub);
  return Eigen::PartialPivLU<RMatrix>(sub).determinant();
}

// Advances idx to the next r-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<Eigen::Index>& idx, Eigen::Index n) {
  const auto r = static_cast<Eigen::Index>(idx.size());
  Eigen::Index i = r - 1;
  while (i >= 0 && idx[i] == n - r + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (Eigen::Index j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace detail

/// Characteristic coefficients (C_1, ..., C_n): C_r is the sum of all r x r
/// principal minors, so C_1 is the trace and C_n the determinant. Enumeration
/// is combinatorial, hence the n <= 12 cap.
inline std::vector<double> char_coeffs(const RMatrix& phi) {
  detail::require_square(phi, "char_coeffs");
  const Eigen::Index n = phi.rows();
  if (static_cast<std::size_t>(n) > kMaxMinorDimension) {
    throw DimensionError("char_coeffs: n = " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxMinorDimension) + "; use eigenvalue route");
  }
  if (!phi.allFinite()) throw InvalidArgument("char_coeffs: matrix has non-finite entries");
  std::vector<double> coeffs(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index r = 1; r <= n; ++r) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) idx[i] = i;
    double sum = 0.0;
    do {
      sum += detail::principal_minor(phi, idx);
    } while (detail::next_combination(idx, n));
    coeffs[static_cast<std::size_t>(r - 1)] = sum;
  }
  return coeffs;
}

/// Complex overload: the imaginary part must vanish to within
/// kHermitianTolerance relative to the largest entry.
inline std::vector<double> char_coeffs(const CMatrix& phi) {
  const double scale = std::max(max_abs(phi), 1.0);
  if (max_abs(RMatrix(phi.imag())) > kHermitianTolerance * scale) {
    throw InvalidArgument("char_coeffs: matrix has non-negligible imaginary entries");
  }
  return char_coeffs(RMatrix(phi.real()));
}

/// Returns T * Phi * T^{-1}. T must be invertible with 2-norm condition
/// number below kMaxConditionNumber.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> similarity(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& phi,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& t) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require_same_square(phi, t, "similarity");
  Eigen::JacobiSVD<Mat> svd(t);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? static_cast<double>(sv(0)) : 0.0;
  const double smin = sv.size() ? static_cast<double>(sv(sv.size() - 1)) : 0.0;
  if (smin == 0.0 || smax / smin > kMaxConditionNumber) {
    throw InvalidArgument("similarity: transformation is singular or ill-conditioned");
  }
  const Eigen::PartialPivLU<Mat> lu(t);
  return t * phi * lu.inverse();
}

}  // namespace uncertainty_lab
