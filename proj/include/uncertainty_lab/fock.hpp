#pragma once

// Truncated single-mode bosonic Hilbert space: ladder and quadrature
// operators plus the standard pure and mixed states built on them.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/format.hpp"
#include "uncertainty_lab/linalg.hpp"

namespace uncertainty_lab {

inline constexpr std::size_t kDefaultDim = 64;
inline constexpr std::size_t kMaxDim = 512;
inline constexpr std::size_t kTailBuffer = 8;
inline constexpr double kTailEpsilon = 1e-10;
inline constexpr double kNormTolerance = 1e-10;

/// Physical constants and truncation for one bosonic mode.
///
/// When auto_dim is set, state constructors whose tail-weight guard fails at
/// `dim` retry at the next power of two, up to kMaxDim.
struct ModeConfig {
  std::size_t dim = kDefaultDim;
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  bool auto_dim = true;

  void validate() const {
    if (dim < 2) throw InvalidArgument("ModeConfig: dim must be >= 2, got " + std::to_string(dim));
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("ModeConfig: hbar must be > 0");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("ModeConfig: mass must be > 0");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("ModeConfig: omega must be > 0");
  }

  /// Same physics (hbar, m, omega) and same truncation.
  [[nodiscard]] bool compatible(const ModeConfig& other) const {
    return dim == other.dim && hbar == other.hbar && mass == other.mass && omega == other.omega;
  }
};

/// Probability weight in the top kTailBuffer levels.
inline double tail_weight(const CVector& amplitudes) {
  const auto n = static_cast<std::size_t>(amplitudes.size());
  const std::size_t start = n > kTailBuffer ? n - kTailBuffer : 0;
  double w = 0.0;
  for (std::size_t k = start; k < n; ++k) w += std::norm(amplitudes[static_cast<Eigen::Index>(k)]);
  return w;
}

/// Normalized pure state on the truncated space.
class StateVector {
 public:
  StateVector(ModeConfig config, CVector amplitudes)
      : config_(config), amplitudes_(std::move(amplitudes)) {
    config_.validate();
    if (static_cast<std::size_t>(amplitudes_.size()) != config_.dim) {
      throw DimensionError("StateVector: " + std::to_string(amplitudes_.size()) +
                           " amplitudes for dim " + std::to_string(config_.dim));
    }
    if (!amplitudes_.allFinite()) throw InvalidArgument("StateVector: non-finite amplitude");
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
      throw InvalidArgument("StateVector: not normalized (|psi|^2 = " + format_short(norm2) + ")");
    }
  }

  /// Normalizes first; throws if the vector is (numerically) zero.
  static StateVector normalized(ModeConfig config, CVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 1e-12)) throw InvalidArgument("StateVector: zero-norm vector cannot be normalized");
    amplitudes /= norm;
    return StateVector(config, std::move(amplitudes));
  }

  [[nodiscard]] const ModeConfig& config() const { return config_; }
  [[nodiscard]] const CVector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] std::size_t dim() const { return config_.dim; }
  [[nodiscard]] double tail_weight() const { return uncertainty_lab::tail_weight(amplitudes_); }

  /// Throws TruncationError when the tail weight exceeds kTailEpsilon.
  void check_tail(const char* source) const {
    const double w = tail_weight();
    if (w > kTailEpsilon) {
      throw TruncationError(std::string(source) + ": tail weight " + format_short(w) +
                            " above cutoff guard at dim " + std::to_string(config_.dim) +
                            "; increase dim");
    }
  }

  /// Same state zero-padded into a larger truncation. Exact.
  [[nodiscard]] StateVector embedded(std::size_t new_dim) const {
    if (new_dim < config_.dim) throw DimensionError("StateVector::embedded: cannot shrink");
    ModeConfig c = config_;
    c.dim = new_dim;
    CVector v = CVector::Zero(static_cast<Eigen::Index>(new_dim));
    v.head(amplitudes_.size()) = amplitudes_;
    return StateVector(c, std::move(v));
  }

 private:
  ModeConfig config_;
  CVector amplitudes_;
};

/// Mixed state: Hermitian, unit trace, positive semidefinite (to 1e-10).
class DensityMatrix {
 public:
  DensityMatrix(ModeConfig config, CMatrix rho) : config_(config), rho_(std::move(rho)) {
    config_.validate();
    if (static_cast<std::size_t>(rho_.rows()) != config_.dim || rho_.rows() != rho_.cols()) {
      throw DimensionError("DensityMatrix: matrix shape does not match dim " +
                           std::to_string(config_.dim));
    }
    if (!rho_.allFinite()) throw InvalidArgument("DensityMatrix: non-finite entry");
    if (!is_hermitian(rho_)) throw InvalidArgument("DensityMatrix: not Hermitian");
    const Complex tr = rho_.trace();
    if (std::abs(tr - 1.0) > kNormTolerance) {
      throw InvalidArgument("DensityMatrix: trace " + format_short(tr.real()) + " != 1");
    }
    const RVector ev = eigh(rho_).eigenvalues;
    if (ev.size() > 0 && ev.minCoeff() < -kNormTolerance) {
      throw InvalidArgument("DensityMatrix: negative eigenvalue " + format_short(ev.minCoeff()));
    }
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    const CVector& v = psi.amplitudes();
    return DensityMatrix(psi.config(), v * v.adjoint());
  }

  /// Convex combination sum_i w_i |psi_i><psi_i|; weights are normalized.
  static DensityMatrix mixture(std::span<const StateVector> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
      throw InvalidArgument("DensityMatrix::mixture: need one weight per state");
    }
    const ModeConfig& cfg = states.front().config();
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw InvalidArgument("DensityMatrix::mixture: weights must be >= 0");
      total += w;
    }
    if (!(total > 0.0)) throw InvalidArgument("DensityMatrix::mixture: weights sum to zero");
    const auto n = static_cast<Eigen::Index>(cfg.dim);
    CMatrix rho = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (!states[i].config().compatible(cfg)) {
        throw InvalidArgument("DensityMatrix::mixture: states have different mode configs");
      }
      const CVector& v = states[i].amplitudes();
      rho += (weights[i] / total) * (v * v.adjoint());
    }
    return DensityMatrix(cfg, std::move(rho));
  }

  [[nodiscard]] const ModeConfig& config() const { return config_; }
  [[nodiscard]] const CMatrix& matrix() const { return rho_; }
  [[nodiscard]] std::size_t dim() const { return config_.dim; }
  [[nodiscard]] double tail_weight() const {
    const auto n = static_cast<Eigen::Index>(config_.dim);
    const Eigen::Index start = n > static_cast<Eigen::Index>(kTailBuffer) ? n - kTailBuffer : 0;
    double w = 0.0;
    for (Eigen::Index k = start; k < n; ++k) w += rho_(k, k).real();
    return w;
  }

 private:
  ModeConfig config_;
  CMatrix rho_;
};

/// Displacement and squeezing of a Gaussian pure state; theta in [0, 2 pi).
struct GaussianParams {
  Complex alpha{0.0, 0.0};
  double r = 0.0;
  double theta = 0.0;

  void validate() const {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
      throw InvalidArgument("GaussianParams: alpha must be finite");
    if (!std::isfinite(r) || r < 0.0) throw InvalidArgument("GaussianParams: r must be finite and >= 0");
    if (!std::isfinite(theta)) throw InvalidArgument("GaussianParams: theta must be finite");
  }
};

struct LadderOps {
  CMatrix a;     // annihilation, a[k-1,k] = sqrt(k)
  CMatrix adag;  // creation
  CMatrix n;     // number, diag(0..N-1)
};

inline LadderOps ladder_ops(const ModeConfig& config) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(config.dim);
  CMatrix a = CMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  CMatrix adag = a.adjoint();
  CMatrix num = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
  return {std::move(a), std::move(adag), std::move(num)};
}

struct Quadratures {
  CMatrix q;
  CMatrix p;
};

/// q = sqrt(hbar / 2 m omega) (a + a^dagger),  p = i sqrt(hbar m omega / 2) (a^dagger - a).
inline Quadratures quadratures(const ModeConfig& config) {
  const LadderOps ops = ladder_ops(config);
  const double q_scale = std::sqrt(config.hbar / (2.0 * config.mass * config.omega));
  const double p_scale = std::sqrt(config.hbar * config.mass * config.omega / 2.0);
  return {q_scale * (ops.a + ops.adag), Complex(0.0, p_scale) * (ops.adag - ops.a)};
}

namespace detail {

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Mean-excitation guard: nbar + 5 sqrt(nbar) + buffer < dim.
inline bool excitation_guard_ok(double nbar, std::size_t dim) {
  return nbar + 5.0 * std::sqrt(nbar) + static_cast<double>(kTailBuffer) < static_cast<double>(dim);
}

// Runs `build` at config.dim and, if auto_dim is set, at successive powers of
// two until both the excitation guard and the tail-weight guard pass.
template <class Build>
StateVector build_with_guard(ModeConfig config, double nbar, const char* source, Build&& build) {
  config.validate();
  std::size_t dim = config.dim;
  for (;;) {
    if (excitation_guard_ok(nbar, dim)) {
      ModeConfig c = config;
      c.dim = dim;
      StateVector s = build(c);
      if (s.tail_weight() <= kTailEpsilon) return s;
      if (!config.auto_dim) s.check_tail(source);
    } else if (!config.auto_dim) {
      throw TruncationError(std::string(source) + ": mean excitation " + format_short(nbar) +
                            " too large for dim " + std::to_string(dim) + "; increase dim");
    }
    const std::size_t next = (dim == next_power_of_two(dim)) ? dim * 2 : next_power_of_two(dim);
    if (next > kMaxDim) {
      throw TruncationError(std::string(source) + ": no truncation up to " +
                            std::to_string(kMaxDim) + " satisfies the tail guard; increase dim");
    }
    dim = next;
  }
}

inline CVector basis_vector(std::size_t dim, std::size_t k) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(k)] = 1.0;
  return v;
}

}  // namespace detail

inline StateVector vacuum(const ModeConfig& config) {
  config.validate();
  return StateVector(config, detail::basis_vector(config.dim, 0));
}

/// Number state |k>; requires k < dim - kTailBuffer.
inline StateVector fock_state(const ModeConfig& config, std::size_t k) {
  config.validate();
  if (k + kTailBuffer >= config.dim) {
    throw InvalidArgument("fock_state: k = " + std::to_string(k) + " must be below dim - " +
                          std::to_string(kTailBuffer) + " = " +
                          std::to_string(config.dim - std::min(config.dim, kTailBuffer)));
  }
  return StateVector(config, detail::basis_vector(config.dim, k));
}

/// Generator H with D(alpha) = exp(i H) = exp(alpha a^dagger - alpha^* a).
inline CMatrix displacement_generator(const LadderOps& ops, Complex alpha) {
  const Complex minus_i(0.0, -1.0);
  return minus_i * (alpha * ops.adag - std::conj(alpha) * ops.a);
}

/// Generator H with S(zeta) = exp(i H) = exp((zeta^* a^2 - zeta a^dagger^2) / 2).
inline CMatrix squeeze_generator(const LadderOps& ops, Complex zeta) {
  const Complex minus_i_half(0.0, -0.5);
  return minus_i_half * (std::conj(zeta) * (ops.a * ops.a) - zeta * (ops.adag * ops.adag));
}

/// Glauber coherent state D(alpha)|0>.
inline StateVector coherent(const ModeConfig& config, Complex alpha) {
  const double nbar = std::norm(alpha);
  return detail::build_with_guard(config, nbar, "coherent", [&](const ModeConfig& c) {
    if (alpha == Complex(0.0, 0.0)) return vacuum(c);
    const LadderOps ops = ladder_ops(c);
    const CVector v = expm_skew(displacement_generator(ops, alpha), 1.0).col(0);
    return StateVector::normalized(c, v);
  });
}

/// Squeezed coherent state D(alpha) S(zeta)|0> with zeta = r e^{i theta}.
inline StateVector squeezed(const ModeConfig& config, const GaussianParams& params) {
  params.validate();
  const double sh = std::sinh(params.r);
  const double nbar = std::norm(params.alpha) + sh * sh;
  return detail::build_with_guard(config, nbar, "squeezed", [&](const ModeConfig& c) {
    const LadderOps ops = ladder_ops(c);
    CVector v = detail::basis_vector(c.dim, 0);
    if (params.r != 0.0) {
      const Complex zeta = std::polar(params.r, params.theta);
      v = expm_skew(squeeze_generator(ops, zeta), 1.0) * v;
    }
    if (params.alpha != Complex(0.0, 0.0)) {
      v = expm_skew(displacement_generator(ops, params.alpha), 1.0) * v;
    }
    return StateVector::normalized(c, std::move(v));
  });
}

/// Normalized sum_i w_i |psi_i>. All states must share one mode config.
inline StateVector superpose(std::span<const StateVector> states, std::span<const Complex> weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw InvalidArgument("superpose: need one weight per state");
  }
  const ModeConfig& cfg = states.front().config();
  CVector v = CVector::Zero(static_cast<Eigen::Index>(cfg.dim));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].config().compatible(cfg)) {
      throw InvalidArgument("superpose: states have different mode configs");
    }
    v += weights[i] * states[i].amplitudes();
  }
  if (!(v.norm() > 1e-12)) throw InvalidArgument("superpose: result has zero norm");
  StateVector out = StateVector::normalized(cfg, std::move(v));
  out.check_tail("superpose");
  return out;
}

/// Thermal state with mean occupation nbar, truncated and renormalized.
inline DensityMatrix thermal(ModeConfig config, double nbar) {
  config.validate();
  if (!std::isfinite(nbar) || nbar < 0.0) throw InvalidArgument("thermal: nbar must be >= 0");
  const double ratio = nbar / (1.0 + nbar);
  std::size_t dim = config.dim;
  for (;;) {
    // Geometric tail: P(k >= dim - buffer) = ratio^(dim - buffer).
    const double tail = std::pow(ratio, static_cast<double>(dim - std::min(dim, kTailBuffer)));
    if (tail <= kTailEpsilon) break;
    if (!config.auto_dim || dim * 2 > kMaxDim) {
      throw TruncationError("thermal: tail weight " + format_short(tail) + " at dim " +
                            std::to_string(dim) + "; increase dim");
    }
    dim = (dim == detail::next_power_of_two(dim)) ? dim * 2 : detail::next_power_of_two(dim);
  }
  config.dim = dim;
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix rho = CMatrix::Zero(n, n);
  double total = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pk = std::pow(ratio, static_cast<double>(k)) / (1.0 + nbar);
    rho(k, k) = pk;
    total += pk;
  }
  rho /= total;
  return DensityMatrix(config, std::move(rho));
}

}  // namespace uncertainty_lab
