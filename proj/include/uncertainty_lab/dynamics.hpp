#pragma once

// Unitary evolution under the degenerate parametric amplifier Hamiltonian
//   H = hbar omega (a^dagger a + 1/2) + (hbar chi / 2)(e^{i phi} a^2 + e^{-i phi} a^dagger^2)
// and the second-moment trajectory of (q, p) it produces.

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/fock.hpp"
#include "uncertainty_lab/format.hpp"
#include "uncertainty_lab/linalg.hpp"
#include "uncertainty_lab/moments.hpp"

namespace uncertainty_lab {

struct DPAConfig {
  ModeConfig mode{128, 1.0, 1.0, 1.0, true};
  double chi = 0.2;         // units of omega
  double pump_phase = 0.0;  // [0, 2 pi)
  std::vector<double> times;

  void validate() const {
    mode.validate();
    if (!std::isfinite(chi)) throw InvalidArgument("DPAConfig: chi must be finite");
    if (!std::isfinite(pump_phase)) throw InvalidArgument("DPAConfig: pump_phase must be finite");
    if (times.empty()) throw InvalidArgument("DPAConfig: times must be non-empty");
    if (!(times.front() >= 0.0)) throw InvalidArgument("DPAConfig: times must start at t >= 0");
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!std::isfinite(times[i])) throw InvalidArgument("DPAConfig: non-finite time");
      if (i > 0 && times[i] < times[i - 1]) throw InvalidArgument("DPAConfig: times must be ascending");
    }
  }
};

/// steps + 1 equally spaced points on [0, t_max].
inline std::vector<double> uniform_times(double t_max, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("uniform_times: steps must be >= 1");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("uniform_times: t_max must be >= 0");
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    t[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
  }
  return t;
}

inline CMatrix dpa_hamiltonian(const DPAConfig& cfg) {
  cfg.mode.validate();
  const LadderOps ops = ladder_ops(cfg.mode);
  const auto n = static_cast<Eigen::Index>(cfg.mode.dim);
  const double hw = cfg.mode.hbar * cfg.mode.omega;
  CMatrix h = hw * (ops.n + 0.5 * CMatrix::Identity(n, n));
  if (cfg.chi != 0.0) {
    const Complex pump = std::polar(1.0, cfg.pump_phase);
    const double coupling = cfg.mode.hbar * cfg.chi * cfg.mode.omega / 2.0;
    h += coupling * (pump * (ops.a * ops.a) + std::conj(pump) * (ops.adag * ops.adag));
  }
  return h;
}

/// exp(-i H t / hbar) for time-independent H from one cached eigendecomposition.
class Propagator {
 public:
  Propagator(const CMatrix& h, double hbar) : eig_(eigh(h)), hbar_(hbar) {
    if (!(hbar > 0.0)) throw InvalidArgument("Propagator: hbar must be > 0");
  }

  /// Evolved state; throws TruncationError if the result leaks into the
  /// cutoff region and NumericalError if the norm drifts by more than 1e-9.
  [[nodiscard]] StateVector apply(const StateVector& psi, double t) const {
    if (static_cast<Eigen::Index>(psi.dim()) != eig_.eigenvectors.rows()) {
      throw DimensionError("evolve: Hamiltonian and state dimensions differ");
    }
    const CVector coeffs = eig_.eigenvectors.adjoint() * psi.amplitudes();
    CVector phased(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
      phased[k] = coeffs[k] * std::polar(1.0, -eig_.eigenvalues[k] * t / hbar_);
    }
    CVector out = eig_.eigenvectors * phased;
    const double drift = std::abs(out.norm() - 1.0);
    if (drift > 1e-9) throw NumericalError("evolve: norm drift " + format_short(drift));
    StateVector s(psi.config(), std::move(out));
    s.check_tail("evolve");
    return s;
  }

 private:
  EighResult eig_;
  double hbar_;
};

inline StateVector evolve(const StateVector& psi, const CMatrix& h, double t) {
  return Propagator(h, psi.config().hbar).apply(psi, t);
}

struct MomentTrajectory {
  std::vector<double> times;
  std::vector<double> var_q;
  std::vector<double> var_p;
  std::vector<double> cov_qp;
  std::vector<double> det_sigma;
  std::vector<double> schrodinger_gap;
  std::vector<double> heisenberg_gap;
  double max_norm_drift = 0.0;
};

/// Moments of (q, p) along exp(-i H t / hbar)|initial> at every cfg.times.
inline MomentTrajectory moment_trajectory(const DPAConfig& cfg, const StateVector& initial) {
  cfg.validate();
  if (!initial.config().compatible(cfg.mode)) {
    throw InvalidArgument("moment_trajectory: initial state config differs from DPA mode config");
  }
  const Propagator prop(dpa_hamiltonian(cfg), cfg.mode.hbar);
  const Quadratures qp = quadratures(cfg.mode);
  MomentTrajectory tr;
  const std::size_t n = cfg.times.size();
  tr.times = cfg.times;
  tr.var_q.resize(n);
  tr.var_p.resize(n);
  tr.cov_qp.resize(n);
  tr.det_sigma.resize(n);
  tr.schrodinger_gap.resize(n);
  tr.heisenberg_gap.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const StateVector s = prop.apply(initial, cfg.times[i]);
    tr.max_norm_drift = std::max(tr.max_norm_drift, std::abs(s.amplitudes().norm() - 1.0));
    const double vq = variance(qp.q, s);
    const double vp = variance(qp.p, s);
    const double cov = covariance(qp.q, qp.p, s);
    const double half = std::abs(commutator_mean(qp.q, qp.p, s)) / 2.0;
    tr.var_q[i] = vq;
    tr.var_p[i] = vp;
    tr.cov_qp[i] = cov;
    tr.det_sigma[i] = vq * vp - cov * cov;
    tr.schrodinger_gap[i] = tr.det_sigma[i] - half * half;
    tr.heisenberg_gap[i] = std::sqrt(std::max(vq, 0.0)) * std::sqrt(std::max(vp, 0.0)) - half;
  }
  return tr;
}

inline void write_trajectory_csv(std::ostream& os, const MomentTrajectory& tr) {
  os << "t,var_q,var_p,cov_qp,det_sigma,schrodinger_gap,heisenberg_gap\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    os << format_real(tr.times[i]) << ',' << format_real(tr.var_q[i]) << ','
       << format_real(tr.var_p[i]) << ',' << format_real(tr.cov_qp[i]) << ','
       << format_real(tr.det_sigma[i]) << ',' << format_real(tr.schrodinger_gap[i]) << ','
       << format_real(tr.heisenberg_gap[i]) << '\n';
  }
}

}  // namespace uncertainty_lab
