// uncertainty_lab command-line front end.
//
// Exit codes: 0 all relations satisfied, 2 some relation violated,
// 1 usage, IO or numerical error.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "uncertainty_lab/uncertainty_lab.hpp"

namespace ul = uncertainty_lab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolated = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::optional<std::size_t> dim;
  std::optional<double> hbar;
  std::optional<double> mass;
  std::optional<double> omega;
  std::optional<double> tol_sat;
  bool strict_dim = false;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<ul::RelationReport> reports;
  std::vector<std::string> warnings;  // "[source] message"

  void warn(const std::string& source, const std::string& message) {
    warnings.push_back("[" + source + "] " + message);
  }

  [[nodiscard]] bool all_satisfied() const {
    for (const auto& r : reports)
      if (!r.satisfied) return false;
    return true;
  }
};

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string status_of(const ul::RelationReport& r) {
  if (!r.satisfied) return "VIOLATED";
  return r.saturated ? "saturated" : "satisfied";
}

void print_report(std::ostream& os, const RunReport& rep) {
  os << "uncertainty_lab " << ul::kVersion << '\n';
  os << "command: " << rep.command << '\n';
  for (const auto& [k, v] : rep.config) os << "  " << k << " = " << v << '\n';
  if (!rep.reports.empty()) {
    os << pad("name", 24) << pad("lhs", 26) << pad("rhs", 26) << pad("gap", 26) << "SAT\n";
    for (const auto& r : rep.reports) {
      os << pad(r.name, 24) << pad(ul::format_real(r.lhs), 26) << pad(ul::format_real(r.rhs), 26)
         << pad(ul::format_real(r.gap), 26) << status_of(r) << (r.mixed_state ? " (mixed)" : "") << '\n';
    }
  }
  for (const auto& w : rep.warnings) os << "warning " << w << '\n';
}

void write_reports_csv(std::ostream& os, const std::vector<ul::RelationReport>& reports) {
  os << "name,lhs,rhs,gap,satisfied,saturated\n";
  for (const auto& r : reports) {
    os << r.name << ',' << ul::format_real(r.lhs) << ',' << ul::format_real(r.rhs) << ','
       << ul::format_real(r.gap) << ',' << (r.satisfied ? 1 : 0) << ',' << (r.saturated ? 1 : 0) << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw UsageError("error writing '" + path + "'");
}

std::size_t default_dim(std::size_t fallback) {
  const char* env = std::getenv("UNCERTAINTY_LAB_DIM");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string s(env);
  std::size_t value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || value < 2) {
    throw UsageError("UNCERTAINTY_LAB_DIM must be an integer >= 2, got '" + s + "'");
  }
  return value;
}

// Precedence: flag > spec file > UNCERTAINTY_LAB_DIM > command default.
ul::ModeConfig resolve_config(const GlobalFlags& g, const ul::ModeOverrides& spec, std::size_t fallback_dim) {
  ul::ModeConfig c;
  c.dim = default_dim(fallback_dim);
  spec.apply_to(c);
  if (g.dim) c.dim = *g.dim;
  if (g.hbar) c.hbar = *g.hbar;
  if (g.mass) c.mass = *g.mass;
  if (g.omega) c.omega = *g.omega;
  c.auto_dim = !g.strict_dim;
  c.validate();
  return c;
}

ul::Tolerances resolve_tolerances(const GlobalFlags& g) {
  ul::Tolerances t;
  if (g.tol_sat) {
    if (!(*g.tol_sat > 0.0)) throw UsageError("--tol-sat must be > 0");
    t.sat = *g.tol_sat;
  }
  return t;
}

void echo_config(RunReport& rep, const ul::ModeConfig& c, const ul::Tolerances& tol) {
  rep.config.emplace_back("dim", std::to_string(c.dim));
  rep.config.emplace_back("hbar", ul::format_real(c.hbar));
  rep.config.emplace_back("mass", ul::format_real(c.mass));
  rep.config.emplace_back("omega", ul::format_real(c.omega));
  rep.config.emplace_back("tol_sat", ul::format_real(tol.sat));
  rep.config.emplace_back("auto_dim", c.auto_dim ? "on" : "off");
}

struct LoadedState {
  ul::StateSpec spec;
  ul::ModeConfig requested;
  ul::AnyState state;
};

LoadedState load_state(const std::string& path, const GlobalFlags& g, std::size_t fallback_dim,
                       RunReport& rep, const std::string& role = "state") {
  ul::StateSpec spec = ul::parse_state_spec(read_file(path));
  const ul::ModeConfig requested = resolve_config(g, spec.mode, fallback_dim);
  ul::AnyState state = ul::build_state(spec, requested);
  const std::size_t built = ul::config_of(state).dim;
  if (built != requested.dim) {
    rep.warn(spec.kind, role + " dim raised from " + std::to_string(requested.dim) + " to " +
                            std::to_string(built) + " to satisfy the tail guard");
  }
  rep.config.emplace_back(role, spec.kind + " (" + path + ")");
  return {std::move(spec), requested, std::move(state)};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const std::string t = ul::detail::trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

const std::vector<std::string> kRelationNames{"heisenberg", "schrodinger", "characteristic",
                                               "sum",        "canonical-sum", "trace-class"};

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

std::vector<ul::Observable> observables_for(const std::vector<std::string>& names, const ul::ModeConfig& c) {
  const ul::Quadratures qp = ul::quadratures(c);
  const ul::LadderOps ops = ul::ladder_ops(c);
  std::vector<ul::Observable> out;
  for (const auto& n : names) {
    if (n == "q") {
      out.push_back({"q", qp.q});
    } else if (n == "p") {
      out.push_back({"p", qp.p});
    } else if (n == "n") {
      out.push_back({"n", ops.n});
    } else {
      throw UsageError("unknown observable '" + n + "' (valid: q, p, n)");
    }
  }
  if (out.empty()) throw UsageError("--observables must list at least one of q, p, n");
  return out;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
  std::string spec;
  std::string relations = "all";
  std::string observables = "q,p";
  int k = 1;
  std::string out;
};

int cmd_check(const GlobalFlags& g, const CheckArgs& a) {
  RunReport rep;
  rep.command = "check";
  std::vector<std::string> names = a.relations == "all" ? kRelationNames : split_list(a.relations);
  for (const auto& n : names) {
    if (std::find(kRelationNames.begin(), kRelationNames.end(), n) == kRelationNames.end()) {
      throw UsageError("unknown relation '" + n + "' (valid: " + joined(kRelationNames) + ")");
    }
  }
  if (names.empty()) throw UsageError("--relations is empty (valid: " + joined(kRelationNames) + ")");
  if (a.k < 1) throw UsageError("--k must be >= 1");
  const std::vector<std::string> obs_names = split_list(a.observables);

  LoadedState ls = load_state(a.spec, g, ul::kDefaultDim, rep);
  const ul::Tolerances tol = resolve_tolerances(g);
  const ul::ModeConfig& c = ul::config_of(ls.state);
  echo_config(rep, c, tol);

  std::visit(
      [&](const auto& s) {
        const ul::Quadratures qp = ul::quadratures(c);
        const std::vector<ul::Observable> qp_obs{{"q", qp.q}, {"p", qp.p}};
        for (const auto& n : names) {
          if (n == "heisenberg") {
            rep.reports.push_back(ul::heisenberg(s, qp.q, qp.p, tol));
          } else if (n == "schrodinger") {
            rep.reports.push_back(ul::schrodinger(s, qp.q, qp.p, tol));
          } else if (n == "characteristic") {
            const auto obs = observables_for(obs_names, c);
            for (auto& r : ul::characteristic_ur(s, obs, tol)) rep.reports.push_back(std::move(r));
          } else if (n == "sum") {
            rep.reports.push_back(ul::sum_ur(s, qp.q, qp.p, tol));
          } else if (n == "canonical-sum") {
            rep.reports.push_back(ul::canonical_sum(s, tol));
          } else if (n == "trace-class") {
            const auto sigma = ul::covariance_matrix(qp_obs, s);
            const auto comm = ul::commutator_matrix(qp_obs, s);
            ul::RelationReport r = ul::trace_class_ur(sigma, comm, a.k, tol);
            if (!r.saturated) rep.warn("trace-class", "equality does not hold (expected only for pure Gaussian states)");
            rep.reports.push_back(std::move(r));
          }
        }
      },
      ls.state);
  if (std::holds_alternative<ul::DensityMatrix>(ls.state)) {
    rep.warn("check", "state is mixed; reports are flagged (mixed)");
  }

  print_report(std::cout, rep);
  if (!a.out.empty()) {
    std::ofstream out = open_out(a.out);
    write_reports_csv(out, rep.reports);
    finish_out(out, a.out);
  }
  return rep.all_satisfied() ? kExitOk : kExitViolated;
}

// ---- two-state -------------------------------------------------------------

int cmd_two_state(const GlobalFlags& g, const std::string& psi_path, const std::string& phi_path) {
  RunReport rep;
  rep.command = "two-state";
  LoadedState psi = load_state(psi_path, g, ul::kDefaultDim, rep, "psi");
  LoadedState phi = load_state(phi_path, g, ul::kDefaultDim, rep, "phi");
  if (!psi.requested.compatible(phi.requested)) {
    throw UsageError("two-state: states request different mode configs (dim " +
                     std::to_string(psi.requested.dim) + " vs " + std::to_string(phi.requested.dim) +
                     ", or differing hbar/mass/omega)");
  }
  const std::size_t dp = ul::config_of(psi.state).dim;
  const std::size_t df = ul::config_of(phi.state).dim;
  if (dp != df) {
    ul::ModeConfig common = psi.requested;
    common.dim = std::max(dp, df);
    psi.state = ul::build_state(psi.spec, common);
    phi.state = ul::build_state(phi.spec, common);
    rep.warn("two-state", "both states rebuilt at dim " + std::to_string(common.dim));
  }
  const ul::Tolerances tol = resolve_tolerances(g);
  echo_config(rep, ul::config_of(psi.state), tol);
  rep.reports.push_back(std::visit([&](const auto& a, const auto& b) { return ul::two_state_ur(a, b, tol); },
                                   psi.state, phi.state));
  print_report(std::cout, rep);
  return rep.all_satisfied() ? kExitOk : kExitViolated;
}

// ---- evolve ----------------------------------------------------------------

struct EvolveArgs {
  std::string spec;
  double chi = 0.2;
  double pump_phase = 0.0;
  double t_max = 2.0;
  std::size_t steps = 200;
  std::string out;
};

int cmd_evolve(const GlobalFlags& g, const EvolveArgs& a) {
  RunReport rep;
  rep.command = "evolve";
  if (!(a.chi >= 0.0)) throw UsageError("--chi must be >= 0");
  if (a.steps == 0) throw UsageError("--steps must be >= 1");
  if (!(a.t_max >= 0.0)) throw UsageError("--t-max must be >= 0");

  const ul::DPAConfig defaults;
  LoadedState ls = load_state(a.spec, g, defaults.mode.dim, rep, "initial");
  if (!std::holds_alternative<ul::StateVector>(ls.state)) {
    throw UsageError("evolve: initial state must be pure (got " + ls.spec.kind + ")");
  }
  const ul::StateVector& psi = std::get<ul::StateVector>(ls.state);
  ul::DPAConfig cfg;
  cfg.mode = psi.config();
  cfg.chi = a.chi;
  cfg.pump_phase = a.pump_phase;
  cfg.times = ul::uniform_times(a.t_max, a.steps);
  const ul::Tolerances tol = resolve_tolerances(g);
  echo_config(rep, cfg.mode, tol);
  rep.config.emplace_back("chi", ul::format_real(cfg.chi));
  rep.config.emplace_back("pump_phase", ul::format_real(cfg.pump_phase));
  rep.config.emplace_back("t_max", ul::format_real(a.t_max));
  rep.config.emplace_back("steps", std::to_string(a.steps));

  const ul::MomentTrajectory tr = ul::moment_trajectory(cfg, psi);
  std::ofstream out = open_out(a.out);
  ul::write_trajectory_csv(out, tr);
  finish_out(out, a.out);

  const double h2 = cfg.mode.hbar * cfg.mode.hbar / 4.0;
  double max_cov = 0.0;
  double max_heis = -HUGE_VAL;
  double max_det_dev = 0.0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    max_cov = std::max(max_cov, std::abs(tr.cov_qp[i]));
    max_heis = std::max(max_heis, tr.heisenberg_gap[i]);
    max_det_dev = std::max(max_det_dev, std::abs(tr.det_sigma[i] - h2));
    if (tr.schrodinger_gap[i] < tr.schrodinger_gap[worst]) worst = i;
  }
  rep.reports.push_back(ul::make_report("schrodinger[t=" + ul::format_real(tr.times[worst]) + "]",
                                        tr.det_sigma[worst], tr.det_sigma[worst] - tr.schrodinger_gap[worst],
                                        tol));
  rep.config.emplace_back("rows", std::to_string(tr.times.size()));
  rep.config.emplace_back("out", a.out);
  print_report(std::cout, rep);
  std::cout << "max_abs_cov_qp = " << ul::format_real(max_cov) << '\n'
            << "max_heisenberg_gap = " << ul::format_real(max_heis) << '\n'
            << "max_abs_det_sigma_minus_hbar2_4 = " << ul::format_real(max_det_dev) << '\n'
            << "max_norm_drift = " << ul::format_real(tr.max_norm_drift) << '\n';
  return rep.all_satisfied() ? kExitOk : kExitViolated;
}

// ---- scan ------------------------------------------------------------------

struct ScanArgs {
  std::string alpha_re = "0";
  std::string alpha_im = "0";
  std::string r = "0:1:5";
  std::string theta = "0:pi:5";
  std::string objective = "schrodinger";
  std::string out;
};

// "a:b:n" (n points, inclusive) or a single value.
std::vector<double> parse_range(const std::string& flag, const std::string& text) {
  const auto bad = [&] {
    return UsageError("--" + flag + " expects 'start:stop:count' or a single value, got '" + text + "'");
  };
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ':')) parts.push_back(ul::detail::trim(item));
  if (parts.size() == 1) {
    auto v = ul::detail::parse_value(parts[0]);
    if (!v) throw bad();
    return {*v};
  }
  if (parts.size() != 3) throw bad();
  const auto a = ul::detail::parse_value(parts[0]);
  const auto b = ul::detail::parse_value(parts[1]);
  const auto n = ul::detail::parse_plain_number(parts[2]);
  if (!a || !b || !n || *n < 1 || *n != std::floor(*n) || *n > 1e6) throw bad();
  const auto count = static_cast<std::size_t>(*n);
  if (count == 1) return {*a};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = *a + (*b - *a) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

int cmd_scan(const GlobalFlags& g, const ScanArgs& a) {
  RunReport rep;
  rep.command = "scan";
  const ul::GapKind kind = ul::parse_gap_kind(a.objective);
  const auto ar = parse_range("alpha-re", a.alpha_re);
  const auto ai = parse_range("alpha-im", a.alpha_im);
  const auto rs = parse_range("r", a.r);
  const auto th = parse_range("theta", a.theta);
  for (double r : rs)
    if (r < 0.0) throw UsageError("--r values must be >= 0");
  const ul::ModeConfig c = resolve_config(g, {}, ul::kDefaultDim);
  const ul::Tolerances tol = resolve_tolerances(g);
  echo_config(rep, c, tol);
  rep.config.emplace_back("objective", std::string(ul::to_string(kind)));

  const auto grid = ul::gaussian_grid(ar, ai, rs, th);
  const auto results = ul::scan_grid(kind, grid, c, tol);
  std::ofstream out = open_out(a.out);
  ul::write_scan_csv(out, results);
  finish_out(out, a.out);

  std::map<std::string, std::size_t> counts;
  std::size_t violated = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    if (res.error) {
      rep.warn("scan", "point " + std::to_string(i) + ": " + *res.error);
      ++counts["error"];
      continue;
    }
    ++counts[std::string(ul::to_string(res.label))];
    if (!res.report.satisfied) {
      ++violated;
      rep.reports.push_back(res.report);
    }
  }
  rep.config.emplace_back("points", std::to_string(results.size()));
  for (const auto& [label, n] : counts) rep.config.emplace_back("label." + label, std::to_string(n));
  rep.config.emplace_back("violations", std::to_string(violated));
  rep.config.emplace_back("out", a.out);
  print_report(std::cout, rep);
  return violated == 0 ? kExitOk : kExitViolated;
}

// ---- classify --------------------------------------------------------------

int cmd_classify(const GlobalFlags& g, const std::string& spec_path) {
  RunReport rep;
  LoadedState ls = load_state(spec_path, g, ul::kDefaultDim, rep);
  if (!std::holds_alternative<ul::StateVector>(ls.state)) {
    throw UsageError("classify: state must be pure (got " + ls.spec.kind + ")");
  }
  const ul::ClassLabel label = ul::classify_smus(std::get<ul::StateVector>(ls.state), resolve_tolerances(g));
  std::cout << ul::to_string(label) << '\n';
  for (const auto& w : rep.warnings) std::cerr << "warning " << w << '\n';
  return kExitOk;
}

// ---- williamson ------------------------------------------------------------

ul::RMatrix read_matrix_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (ul::detail::trim(line).empty()) continue;
    std::vector<double> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      const auto v = ul::detail::parse_value(ul::detail::trim(cell));
      if (!v) throw UsageError(path + ":" + std::to_string(lineno) + ": non-numeric entry '" + cell + "'");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw UsageError(path + ": empty matrix");
  const std::size_t n = rows.size();
  ul::RMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw UsageError(path + ": matrix must be square (" + std::to_string(n) + " rows, row " +
                       std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) + " entries)");
    }
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

int cmd_williamson(const std::string& path) {
  const ul::RMatrix sigma = read_matrix_csv(path);
  const ul::WilliamsonResult w = ul::williamson(sigma);
  std::cout << "# symplectic eigenvalues (descending)\n";
  for (std::size_t i = 0; i < w.nus.size(); ++i) {
    std::cout << "nu_" << (i + 1) << ',' << ul::format_real(w.nus[i]) << '\n';
  }
  std::cout << "# Lambda (Lambda sigma Lambda^T = diag(nu, nu))\n";
  for (Eigen::Index i = 0; i < w.lambda.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.lambda.cols(); ++j) {
      std::cout << (j ? "," : "") << ul::format_real(w.lambda(i, j));
    }
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical workbench for quantum uncertainty relations"};
  app.set_version_flag("--version", std::string(ul::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  std::size_t dim = 0;
  double hbar = 0, mass = 0, omega = 0, tol_sat = 0;
  auto* o_dim = app.add_option("--dim", dim, "Fock truncation (overrides spec and UNCERTAINTY_LAB_DIM)");
  auto* o_hbar = app.add_option("--hbar", hbar, "Reduced Planck constant");
  auto* o_mass = app.add_option("--mass", mass, "Oscillator mass");
  auto* o_omega = app.add_option("--omega", omega, "Oscillator frequency");
  auto* o_tol = app.add_option("--tol-sat", tol_sat, "Relative saturation tolerance (default 1e-6)");
  app.add_flag("--strict-dim", g.strict_dim, "Fail instead of raising dim when the tail guard trips");

  CheckArgs check;
  auto* sc_check = app.add_subcommand("check", "Evaluate uncertainty relations on a state");
  sc_check->add_option("spec", check.spec, "State spec file")->required();
  sc_check->add_option("--relations", check.relations,
                       "Comma list of heisenberg, schrodinger, characteristic, sum, canonical-sum, trace-class, or 'all'");
  sc_check->add_option("--observables", check.observables, "Comma list from q, p, n for 'characteristic'");
  sc_check->add_option("--k", check.k, "Power index for 'trace-class'");
  sc_check->add_option("--out", check.out, "Also write the reports as CSV");

  std::string psi_path, phi_path;
  auto* sc_two = app.add_subcommand("two-state", "Two-state relation for a pair of states");
  sc_two->add_option("psi", psi_path, "First state spec")->required();
  sc_two->add_option("phi", phi_path, "Second state spec")->required();

  EvolveArgs evolve;
  auto* sc_evolve = app.add_subcommand("evolve", "Degenerate parametric amplifier trajectory");
  sc_evolve->add_option("spec", evolve.spec, "Initial state spec")->required();
  sc_evolve->add_option("--chi", evolve.chi, "Coupling in units of omega");
  sc_evolve->add_option("--pump-phase", evolve.pump_phase, "Pump phase");
  sc_evolve->add_option("--t-max", evolve.t_max, "Final time (units 1/omega)");
  sc_evolve->add_option("--steps", evolve.steps, "Number of time steps");
  sc_evolve->add_option("--out", evolve.out, "Trajectory CSV path")->required();

  ScanArgs scan;
  auto* sc_scan = app.add_subcommand("scan", "Scan the Gaussian family on a grid");
  sc_scan->add_option("--alpha-re", scan.alpha_re, "start:stop:count or value");
  sc_scan->add_option("--alpha-im", scan.alpha_im, "start:stop:count or value");
  sc_scan->add_option("--r", scan.r, "start:stop:count or value");
  sc_scan->add_option("--theta", scan.theta, "start:stop:count or value (pi forms allowed)");
  sc_scan->add_option("--objective", scan.objective, "schrodinger, heisenberg or sum");
  sc_scan->add_option("--out", scan.out, "Scan CSV path")->required();

  std::string classify_path;
  auto* sc_classify = app.add_subcommand("classify", "Label a pure state coherent/squeezed/covariance/not-minimal");
  sc_classify->add_option("spec", classify_path, "State spec file")->required();

  std::string matrix_path;
  auto* sc_will = app.add_subcommand("williamson", "Williamson decomposition of a covariance matrix CSV");
  sc_will->add_option("matrix", matrix_path, "CSV file with a 2N x 2N symmetric positive-definite matrix")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (o_dim->count()) g.dim = dim;
    if (o_hbar->count()) g.hbar = hbar;
    if (o_mass->count()) g.mass = mass;
    if (o_omega->count()) g.omega = omega;
    if (o_tol->count()) g.tol_sat = tol_sat;

    if (sc_check->parsed()) return cmd_check(g, check);
    if (sc_two->parsed()) return cmd_two_state(g, psi_path, phi_path);
    if (sc_evolve->parsed()) return cmd_evolve(g, evolve);
    if (sc_scan->parsed()) return cmd_scan(g, scan);
    if (sc_classify->parsed()) return cmd_classify(g, classify_path);
    if (sc_will->parsed()) return cmd_williamson(matrix_path);
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
