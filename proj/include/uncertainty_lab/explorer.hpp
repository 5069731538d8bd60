#pragma once

// Scans over the Gaussian family, gap minimization, and the three-way
// classification of Schrodinger minimum-uncertainty states.

#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/fock.hpp"
#include "uncertainty_lab/format.hpp"
#include "uncertainty_lab/minimize.hpp"
#include "uncertainty_lab/moments.hpp"
#include "uncertainty_lab/relations.hpp"

namespace uncertainty_lab {

enum class ClassLabel { coherent, squeezed, covariance, not_minimal };

inline std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::coherent: return "coherent";
    case ClassLabel::squeezed: return "squeezed";
    case ClassLabel::covariance: return "covariance";
    case ClassLabel::not_minimal: return "not-minimal";
  }
  return "not-minimal";
}

/// Relative threshold on |Cov| and on the variance asymmetry.
inline constexpr double kClassTolerance = 1e-6;

/// not-minimal unless Schrodinger-saturated; then covariance if Cov(q,p) != 0,
/// squeezed if m omega Var(q) != Var(p)/(m omega), else coherent.
inline ClassLabel classify_smus(const StateVector& s, const Tolerances& tol = {}) {
  const ModeConfig& c = s.config();
  const Quadratures qp = quadratures(c);
  if (!schrodinger(s, qp.q, qp.p, tol).saturated) return ClassLabel::not_minimal;
  const double mw = c.mass * c.omega;
  const double vq = mw * variance(qp.q, s);
  const double vp = variance(qp.p, s) / mw;
  const double cov = covariance(qp.q, qp.p, s);
  const double eps = kClassTolerance * std::max({vq, vp, std::abs(cov), c.hbar / 2.0});
  if (std::abs(cov) > eps) return ClassLabel::covariance;
  if (std::abs(vq - vp) > eps) return ClassLabel::squeezed;
  return ClassLabel::coherent;
}

enum class GapKind { schrodinger, heisenberg, sum };

inline std::string_view to_string(GapKind kind) {
  switch (kind) {
    case GapKind::schrodinger: return "schrodinger";
    case GapKind::heisenberg: return "heisenberg";
    case GapKind::sum: return "sum";
  }
  return "schrodinger";
}

inline GapKind parse_gap_kind(std::string_view name) {
  if (name == "schrodinger") return GapKind::schrodinger;
  if (name == "heisenberg") return GapKind::heisenberg;
  if (name == "sum") return GapKind::sum;
  throw InvalidArgument("unknown objective '" + std::string(name) +
                        "' (expected schrodinger, heisenberg or sum)");
}

/// The named relation evaluated on (q, p) for the given state.
inline RelationReport gap_report(GapKind kind, const StateVector& s, const Tolerances& tol = {}) {
  const Quadratures qp = quadratures(s.config());
  switch (kind) {
    case GapKind::schrodinger: return schrodinger(s, qp.q, qp.p, tol);
    case GapKind::heisenberg: return heisenberg(s, qp.q, qp.p, tol);
    case GapKind::sum: return sum_ur(s, qp.q, qp.p, tol);
  }
  throw InvalidArgument("gap_report: unknown kind");
}

inline double gap_objective(GapKind kind, const GaussianParams& params, const ModeConfig& config) {
  return gap_report(kind, squeezed(config, params)).gap;
}

struct ScanResult {
  GaussianParams params;
  double objective = 0.0;
  RelationReport report;
  ClassLabel label = ClassLabel::not_minimal;
  std::optional<std::string> error;  // set when the point could not be evaluated
};

/// Cartesian product of parameter axes, alpha_re slowest and theta fastest.
inline std::vector<GaussianParams> gaussian_grid(std::span<const double> alpha_re,
                                                 std::span<const double> alpha_im,
                                                 std::span<const double> r,
                                                 std::span<const double> theta) {
  std::vector<GaussianParams> out;
  out.reserve(alpha_re.size() * alpha_im.size() * r.size() * theta.size());
  for (double ar : alpha_re)
    for (double ai : alpha_im)
      for (double rr : r)
        for (double th : theta) out.push_back({Complex(ar, ai), rr, th});
  return out;
}

/// One result per grid point, in grid order. A point that fails records its
/// error and the scan continues.
inline std::vector<ScanResult> scan_grid(GapKind kind, std::span<const GaussianParams> grid,
                                         const ModeConfig& config, const Tolerances& tol = {}) {
  std::vector<ScanResult> out;
  out.reserve(grid.size());
  for (const GaussianParams& p : grid) {
    ScanResult res;
    res.params = p;
    try {
      const StateVector s = squeezed(config, p);
      res.report = gap_report(kind, s, tol);
      res.objective = res.report.gap;
      res.label = classify_smus(s, tol);
    } catch (const Error& e) {
      res.objective = std::nan("");
      res.error = e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

inline void write_scan_csv(std::ostream& os, std::span<const ScanResult> results) {
  os << "alpha_re,alpha_im,r,theta,objective,label\n";
  for (const ScanResult& r : results) {
    os << format_real(r.params.alpha.real()) << ',' << format_real(r.params.alpha.imag()) << ','
       << format_real(r.params.r) << ',' << format_real(r.params.theta) << ','
       << (r.error ? std::string("nan") : format_real(r.objective)) << ','
       << (r.error ? std::string("error") : std::string(to_string(r.label))) << '\n';
  }
}

}  // namespace uncertainty_lab
