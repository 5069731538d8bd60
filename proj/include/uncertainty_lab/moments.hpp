#pragma once

// Second-order quantum-statistical moments. Every routine accepts either a
// pure StateVector or a DensityMatrix.

#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/format.hpp"
#include "uncertainty_lab/fock.hpp"
#include "uncertainty_lab/linalg.hpp"

namespace uncertainty_lab {

/// Imaginary residue allowed on quantities that are real in exact arithmetic.
inline constexpr double kImagResidueTolerance = 1e-8;

template <class S>
concept QuantumState = std::same_as<S, StateVector> || std::same_as<S, DensityMatrix>;

/// A named Hermitian operator.
struct Observable {
  std::string label;
  CMatrix op;
};

namespace detail {

inline void require_state_dim(const CMatrix& a, std::size_t dim, const char* what) {
  if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != dim) {
    throw DimensionError(std::string(what) + ": operator is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", state dim is " + std::to_string(dim));
  }
}

inline void require_hermitian(const CMatrix& a, const char* what) {
  if (!is_hermitian(a)) throw InvalidArgument(std::string(what) + ": observable is not Hermitian");
}

inline double real_part_checked(Complex z, double scale, const char* what) {
  if (std::abs(z.imag()) > kImagResidueTolerance * std::max(scale, 1.0)) {
    throw NumericalError(std::string(what) + ": imaginary residue " + format_short(z.imag()) +
                         " on a real quantity");
  }
  return z.real();
}

// <A B> for a pure state, as (A^dagger psi)^dagger (B psi).
inline Complex second_moment(const CMatrix& a, const CMatrix& b, const StateVector& s) {
  const CVector& psi = s.amplitudes();
  return (a.adjoint() * psi).dot(b * psi);
}

inline Complex second_moment(const CMatrix& a, const CMatrix& b, const DensityMatrix& s) {
  // Tr(rho A B) = sum_ij (rho A)_ij B_ji
  return (s.matrix() * a).cwiseProduct(b.transpose()).sum();
}

}  // namespace detail

/// <psi|A|psi> or Tr(rho A).
inline Complex expect(const CMatrix& a, const StateVector& s) {
  detail::require_state_dim(a, s.dim(), "expect");
  const CVector& psi = s.amplitudes();
  return psi.dot(a * psi);
}

inline Complex expect(const CMatrix& a, const DensityMatrix& s) {
  detail::require_state_dim(a, s.dim(), "expect");
  return s.matrix().cwiseProduct(a.transpose()).sum();
}

/// Mean of a Hermitian observable, with the imaginary residue checked.
template <QuantumState S>
double mean(const CMatrix& a, const S& s) {
  return detail::real_part_checked(expect(a, s), max_abs(a), "mean");
}

/// Cov(A, B) = <AB + BA>/2 - <A><B>. Symmetric in A and B by construction.
template <QuantumState S>
double covariance(const CMatrix& a, const CMatrix& b, const S& s) {
  detail::require_state_dim(a, s.dim(), "covariance");
  detail::require_state_dim(b, s.dim(), "covariance");
  detail::require_hermitian(a, "covariance");
  detail::require_hermitian(b, "covariance");
  const double ea = mean(a, s);
  const double eb = mean(b, s);
  const Complex ab = detail::second_moment(a, b, s);
  const Complex ba = detail::second_moment(b, a, s);
  const double scale = max_abs(a) * max_abs(b);
  const double sym = detail::real_part_checked(0.5 * (ab + ba), scale, "covariance");
  return sym - ea * eb;
}

/// (Delta A)^2 = Cov(A, A).
template <QuantumState S>
double variance(const CMatrix& a, const S& s) {
  return covariance(a, a, s);
}

/// <[A, B]>; purely imaginary for Hermitian A, B.
template <QuantumState S>
Complex commutator_mean(const CMatrix& a, const CMatrix& b, const S& s) {
  detail::require_state_dim(a, s.dim(), "commutator_mean");
  detail::require_state_dim(b, s.dim(), "commutator_mean");
  return detail::second_moment(a, b, s) - detail::second_moment(b, a, s);
}

/// Real symmetric matrix sigma_jk = Cov(X_j, X_k).
struct CovarianceMatrix {
  std::vector<std::string> labels;
  RMatrix matrix;
};

/// Real antisymmetric matrix C_jk = -(i/2) <[X_j, X_k]>.
struct CommutatorMatrix {
  std::vector<std::string> labels;
  RMatrix matrix;
};

namespace detail {

inline std::vector<std::string> labels_of(std::span<const Observable> obs) {
  std::vector<std::string> out;
  out.reserve(obs.size());
  for (const auto& o : obs) out.push_back(o.label);
  return out;
}

}  // namespace detail

template <QuantumState S>
CovarianceMatrix covariance_matrix(std::span<const Observable> obs, const S& s) {
  const auto n = static_cast<Eigen::Index>(obs.size());
  RMatrix sigma(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      const double c = covariance(obs[j].op, obs[k].op, s);
      sigma(j, k) = c;
      sigma(k, j) = c;
    }
  }
  return {detail::labels_of(obs), std::move(sigma)};
}

/// Throws NumericalError if any |Re <[X_j, X_k]>| exceeds 1e-8, which means
/// non-Hermitian input or corrupted numerics.
template <QuantumState S>
CommutatorMatrix commutator_matrix(std::span<const Observable> obs, const S& s) {
  const auto n = static_cast<Eigen::Index>(obs.size());
  RMatrix c = RMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    detail::require_hermitian(obs[j].op, "commutator_matrix");
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const Complex m = commutator_mean(obs[j].op, obs[k].op, s);
      if (std::abs(m.real()) > kImagResidueTolerance) {
        throw NumericalError("commutator_matrix: Re<[" + obs[j].label + ", " + obs[k].label +
                             "]> = " + format_short(m.real()) + " should vanish");
      }
      // -(i/2)(x + iy) = y/2 - (i/2)x
      c(j, k) = 0.5 * m.imag();
      c(k, j) = -c(j, k);
    }
  }
  return {detail::labels_of(obs), std::move(c)};
}

/// Quantum covariance function <AB> - <A><B>: the real part is Cov(A, B) and
/// the imaginary part is -(i/2)<[A, B]>.
template <QuantumState S>
Complex qcf(const CMatrix& a, const CMatrix& b, const S& s) {
  detail::require_state_dim(a, s.dim(), "qcf");
  detail::require_state_dim(b, s.dim(), "qcf");
  detail::require_hermitian(a, "qcf");
  detail::require_hermitian(b, "qcf");
  return detail::second_moment(a, b, s) - mean(a, s) * mean(b, s);
}

}  // namespace uncertainty_lab
