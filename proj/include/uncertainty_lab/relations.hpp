#pragma once

// Evaluators for the uncertainty relations. Each returns a RelationReport
// carrying both sides of the inequality and a verdict.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/format.hpp"
#include "uncertainty_lab/fock.hpp"
#include "uncertainty_lab/linalg.hpp"
#include "uncertainty_lab/moments.hpp"
#include "uncertainty_lab/symplectic.hpp"

namespace uncertainty_lab {

struct Tolerances {
  double rel = 1e-9;  // satisfied <=> gap >= -rel * scale
  double sat = 1e-6;  // saturated <=> |gap| <= sat * scale
};

struct RelationReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool satisfied = false;
  bool saturated = false;
  bool mixed_state = false;
};

/// scale = max(|lhs|, |rhs|, 1).
inline RelationReport make_report(std::string name, double lhs, double rhs, const Tolerances& tol = {},
                                  bool mixed = false) {
  RelationReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  r.satisfied = r.gap >= -tol.rel * scale;
  r.saturated = std::abs(r.gap) <= tol.sat * scale;
  r.mixed_state = mixed;
  return r;
}

namespace detail {

template <QuantumState S>
constexpr bool is_mixed() {
  return std::same_as<S, DensityMatrix>;
}

// Clamps rounding-level negative variances to zero; larger negatives mean
// the state or observable is broken.
inline double nonnegative(double v, double scale, const char* what) {
  if (v < -1e-10 * std::max(scale, 1.0)) {
    throw NumericalError(std::string(what) + ": negative variance " + format_short(v));
  }
  return std::max(v, 0.0);
}

}  // namespace detail

/// Delta A Delta B >= |<[A, B]>| / 2.
template <QuantumState S>
RelationReport heisenberg(const S& s, const CMatrix& a, const CMatrix& b, const Tolerances& tol = {}) {
  const double scale = max_abs(a) * max_abs(b);
  const double va = detail::nonnegative(variance(a, s), scale, "heisenberg");
  const double vb = detail::nonnegative(variance(b, s), scale, "heisenberg");
  const double lhs = std::sqrt(va) * std::sqrt(vb);
  const double rhs = std::abs(commutator_mean(a, b, s)) / 2.0;
  return make_report("heisenberg", lhs, rhs, tol, detail::is_mixed<S>());
}

/// det sigma(A, B) = Var(A) Var(B) - Cov(A, B)^2 >= |<[A, B]> / 2|^2.
template <QuantumState S>
RelationReport schrodinger(const S& s, const CMatrix& a, const CMatrix& b, const Tolerances& tol = {}) {
  const double va = variance(a, s);
  const double vb = variance(b, s);
  const double cov = covariance(a, b, s);
  const double lhs = va * vb - cov * cov;
  const double half = std::abs(commutator_mean(a, b, s)) / 2.0;
  return make_report("schrodinger", lhs, half * half, tol, detail::is_mixed<S>());
}

/// One report per r = 1..n: C_r(sigma) >= C_r(C), C_r the sum of r x r
/// principal minors.
template <QuantumState S>
std::vector<RelationReport> characteristic_ur(const S& s, std::span<const Observable> obs,
                                              const Tolerances& tol = {}) {
  if (obs.empty()) throw InvalidArgument("characteristic_ur: need at least one observable");
  if (obs.size() > kMaxMinorDimension) {
    throw DimensionError("characteristic_ur: at most " + std::to_string(kMaxMinorDimension) +
                         " observables");
  }
  const CovarianceMatrix sigma = covariance_matrix(obs, s);
  const CommutatorMatrix comm = commutator_matrix(obs, s);
  const std::vector<double> lhs = char_coeffs(sigma.matrix);
  const std::vector<double> rhs = char_coeffs(comm.matrix);
  std::vector<RelationReport> out;
  out.reserve(lhs.size());
  for (std::size_t r = 0; r < lhs.size(); ++r) {
    out.push_back(make_report("characteristic[r=" + std::to_string(r + 1) + "]", lhs[r], rhs[r], tol,
                              detail::is_mixed<S>()));
  }
  return out;
}

/// Var(A) + Var(B) >= sqrt(|<[A, B]>|^2 + 4 Cov(A, B)^2).
template <QuantumState S>
RelationReport sum_ur(const S& s, const CMatrix& a, const CMatrix& b, const Tolerances& tol = {}) {
  const double va = variance(a, s);
  const double vb = variance(b, s);
  const double cov = covariance(a, b, s);
  const double comm = std::abs(commutator_mean(a, b, s));
  return make_report("sum", va + vb, std::sqrt(comm * comm + 4.0 * cov * cov), tol,
                     detail::is_mixed<S>());
}

/// m omega Var(q) + Var(p) / (m omega) >= hbar, with q, p from the state's config.
template <QuantumState S>
RelationReport canonical_sum(const S& s, const Tolerances& tol = {}) {
  const ModeConfig& c = s.config();
  const Quadratures qp = quadratures(c);
  const double mw = c.mass * c.omega;
  const double lhs = mw * variance(qp.q, s) + variance(qp.p, s) / mw;
  return make_report("canonical-sum", lhs, c.hbar, tol, detail::is_mixed<S>());
}

/// Two-state relation for canonical (q, p):
///   1/2 [Var_psi(q) Var_phi(p) + Var_phi(q) Var_psi(p)] - |Cov_psi(q,p) Cov_phi(q,p)| >= hbar^2/4.
template <QuantumState S1, QuantumState S2>
RelationReport two_state_ur(const S1& psi, const S2& phi, const Tolerances& tol = {}) {
  if (!psi.config().compatible(phi.config())) {
    throw InvalidArgument("two_state_ur: states have different mode configs (dim " +
                          std::to_string(psi.dim()) + " vs " + std::to_string(phi.dim()) + ")");
  }
  const ModeConfig& c = psi.config();
  const Quadratures qp = quadratures(c);
  const double vq_psi = variance(qp.q, psi);
  const double vp_psi = variance(qp.p, psi);
  const double vq_phi = variance(qp.q, phi);
  const double vp_phi = variance(qp.p, phi);
  const double cov_psi = covariance(qp.q, qp.p, psi);
  const double cov_phi = covariance(qp.q, qp.p, phi);
  const double lhs = 0.5 * (vq_psi * vp_phi + vq_phi * vp_psi) - std::abs(cov_psi * cov_phi);
  return make_report("two-state", lhs, c.hbar * c.hbar / 4.0, tol,
                     detail::is_mixed<S1>() || detail::is_mixed<S2>());
}

/// Trace-class relation for a 2N x 2N covariance matrix:
///   Tr((i sigma J)^{2k}) = 2^{1-2k} sum_j |<[X'_j, X'_{N+j}]>|^{2k},  X' = Lambda X,
/// with Lambda the Williamson transform of sigma. Reported as an equality
/// check: saturated means equal within tol.sat.
inline RelationReport trace_class_ur(const CovarianceMatrix& sigma, const CommutatorMatrix& comm,
                                     int k, const Tolerances& tol = {}) {
  if (k < 1) throw InvalidArgument("trace_class_ur: k must be >= 1");
  if (sigma.matrix.rows() != comm.matrix.rows() || sigma.matrix.cols() != comm.matrix.cols()) {
    throw DimensionError("trace_class_ur: covariance and commutator matrices differ in size");
  }
  const WilliamsonResult w = williamson(sigma.matrix);
  const Eigen::Index dim = sigma.matrix.rows();
  const Eigen::Index n = dim / 2;
  const SymplecticForm j(static_cast<std::size_t>(n));

  const CMatrix isj = Complex(0.0, 1.0) * (sigma.matrix * j.matrix).cast<Complex>();
  CMatrix power = CMatrix::Identity(dim, dim);
  for (int i = 0; i < 2 * k; ++i) power = power * isj;
  const Complex tr = power.trace();
  const double lhs = detail::real_part_checked(tr, std::abs(tr), "trace_class_ur");

  // <[X'_a, X'_b]> = 2i (Lambda C Lambda^T)_ab
  const RMatrix primed = w.lambda * comm.matrix * w.lambda.transpose();
  double sum = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    sum += std::pow(2.0 * std::abs(primed(m, n + m)), 2 * k);
  }
  const double rhs = std::pow(2.0, 1 - 2 * k) * sum;
  return make_report("trace-class[k=" + std::to_string(k) + "]", lhs, rhs, tol);
}

}  // namespace uncertainty_lab
