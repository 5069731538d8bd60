#pragma once

// Line-oriented `key = value` state specification files.
//
//   # comment
//   kind = squeezed          # vacuum | fock | coherent | squeezed | superposition | thermal-density
//   r = 0.5
//   theta = pi/2             # numbers, or pi-multiples: pi, 2*pi, pi/2, 0.5*pi/3
//   dim = 64                 # optional mode overrides: dim, hbar, mass, omega
//
// Superpositions list one component per line:
//   component = coherent alpha_re=2 weight_re=1
//   component = coherent alpha_re=-2 weight_re=1 weight_im=0

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/fock.hpp"

namespace uncertainty_lab {

class SpecError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct ModeOverrides {
  std::optional<std::size_t> dim;
  std::optional<double> hbar;
  std::optional<double> mass;
  std::optional<double> omega;

  void apply_to(ModeConfig& c) const {
    if (dim) c.dim = *dim;
    if (hbar) c.hbar = *hbar;
    if (mass) c.mass = *mass;
    if (omega) c.omega = *omega;
  }
};

struct ComponentSpec {
  std::string kind;
  std::map<std::string, double> params;
  Complex weight{1.0, 0.0};
};

struct StateSpec {
  std::string kind;
  std::map<std::string, double> params;
  std::vector<ComponentSpec> components;
  ModeOverrides mode;
};

using AnyState = std::variant<StateVector, DensityMatrix>;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_plain_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// number | [number*]pi[/number] | -pi...
inline std::optional<double> parse_value(std::string_view s) {
  if (auto v = parse_plain_number(s)) return v;
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return std::nullopt;
  double factor = 1.0;
  std::string_view head = s.substr(0, pi_pos);
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') return std::nullopt;
    head.remove_suffix(1);
    auto f = parse_plain_number(head);
    if (!f) return std::nullopt;
    factor = *f;
  }
  std::string_view tail = s.substr(pi_pos + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    tail.remove_prefix(1);
    auto d = parse_plain_number(tail);
    if (!d || *d == 0.0) return std::nullopt;
    divisor = *d;
  }
  return factor * M_PI / divisor;
}

inline double parse_number_for(const std::string& key, const std::string& value) {
  auto v = parse_value(value);
  if (!v) throw SpecError("state spec: key '" + key + "' has non-numeric value '" + value + "'");
  return *v;
}

inline const std::set<std::string>& allowed_keys(const std::string& kind) {
  static const std::map<std::string, std::set<std::string>> keys{
      {"vacuum", {}},
      {"fock", {"k"}},
      {"coherent", {"alpha_re", "alpha_im"}},
      {"squeezed", {"alpha_re", "alpha_im", "r", "theta"}},
      {"superposition", {}},
      {"thermal-density", {"nbar"}},
  };
  const auto it = keys.find(kind);
  if (it == keys.end()) {
    throw SpecError("state spec: key 'kind' has unknown value '" + kind +
                    "' (expected vacuum, fock, coherent, squeezed, superposition, thermal-density)");
  }
  return it->second;
}

inline std::size_t as_count(const std::string& key, double v) {
  if (v < 0.0 || v != std::floor(v) || v > 1e9) {
    throw SpecError("state spec: key '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

inline void require_keys(const std::string& kind, const std::map<std::string, double>& params) {
  auto need = [&](const char* key) {
    if (!params.count(key)) throw SpecError("state spec: kind '" + kind + "' requires key '" + key + "'");
  };
  if (kind == "fock") {
    need("k");
    as_count("k", params.at("k"));
  }
  if (kind == "squeezed") need("r");
  if (kind == "thermal-density") need("nbar");
}

inline ComponentSpec parse_component(const std::string& text) {
  std::istringstream in(text);
  ComponentSpec c;
  if (!(in >> c.kind)) throw SpecError("state spec: key 'component' is empty");
  if (c.kind == "superposition" || c.kind == "thermal-density") {
    throw SpecError("state spec: key 'component' cannot be of kind '" + c.kind + "'");
  }
  const auto& allowed = allowed_keys(c.kind);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw SpecError("state spec: key 'component' has malformed token '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const double v = parse_number_for(key, tok.substr(eq + 1));
    if (key == "weight_re") {
      c.weight.real(v);
    } else if (key == "weight_im") {
      c.weight.imag(v);
    } else if (allowed.count(key)) {
      c.params[key] = v;
    } else {
      throw SpecError("state spec: unknown key '" + key + "' in component of kind '" + c.kind + "'");
    }
  }
  require_keys(c.kind, c.params);
  return c;
}

inline double get_or(const std::map<std::string, double>& m, const char* key, double fallback) {
  const auto it = m.find(key);
  return it == m.end() ? fallback : it->second;
}

inline StateVector build_pure(const std::string& kind, const std::map<std::string, double>& p,
                              const ModeConfig& config) {
  if (kind == "vacuum") return vacuum(config);
  if (kind == "fock") return fock_state(config, as_count("k", p.at("k")));
  const Complex alpha(get_or(p, "alpha_re", 0.0), get_or(p, "alpha_im", 0.0));
  if (kind == "coherent") return coherent(config, alpha);
  if (kind == "squeezed") return squeezed(config, {alpha, p.at("r"), get_or(p, "theta", 0.0)});
  throw SpecError("state spec: kind '" + kind + "' is not a pure single-component state");
}

}  // namespace detail

inline StateSpec parse_state_spec(std::istream& in) {
  StateSpec spec;
  std::set<std::string> seen;
  std::map<std::string, std::string> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw SpecError("state spec: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty()) throw SpecError("state spec: line " + std::to_string(lineno) + " has an empty key");
    if (key == "component") {
      spec.components.push_back(detail::parse_component(value));
      continue;
    }
    if (!seen.insert(key).second) throw SpecError("state spec: key '" + key + "' given twice");
    raw[key] = value;
  }
  const auto kind_it = raw.find("kind");
  if (kind_it == raw.end()) throw SpecError("state spec: key 'kind' is missing");
  spec.kind = kind_it->second;
  const auto& allowed = detail::allowed_keys(spec.kind);
  for (const auto& [key, value] : raw) {
    if (key == "kind") continue;
    const double v = detail::parse_number_for(key, value);
    if (key == "dim") {
      spec.mode.dim = detail::as_count(key, v);
    } else if (key == "hbar") {
      spec.mode.hbar = v;
    } else if (key == "mass") {
      spec.mode.mass = v;
    } else if (key == "omega") {
      spec.mode.omega = v;
    } else if (allowed.count(key)) {
      spec.params[key] = v;
    } else {
      throw SpecError("state spec: unknown key '" + key + "' for kind '" + spec.kind + "'");
    }
  }
  detail::require_keys(spec.kind, spec.params);
  if (spec.kind == "superposition" && spec.components.empty()) {
    throw SpecError("state spec: kind 'superposition' requires at least one key 'component'");
  }
  if (spec.kind != "superposition" && !spec.components.empty()) {
    throw SpecError("state spec: key 'component' is only valid for kind 'superposition'");
  }
  return spec;
}

inline StateSpec parse_state_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_state_spec(in);
}

/// Builds the state at `config`. Superposition components are embedded into
/// the largest truncation any of them needed.
inline AnyState build_state(const StateSpec& spec, const ModeConfig& config) {
  if (spec.kind == "thermal-density") return thermal(config, spec.params.at("nbar"));
  if (spec.kind != "superposition") return detail::build_pure(spec.kind, spec.params, config);

  std::vector<StateVector> parts;
  std::vector<Complex> weights;
  std::size_t dim = config.dim;
  for (const auto& c : spec.components) {
    parts.push_back(detail::build_pure(c.kind, c.params, config));
    weights.push_back(c.weight);
    dim = std::max(dim, parts.back().dim());
  }
  for (auto& s : parts) {
    if (s.dim() != dim) s = s.embedded(dim);
  }
  return superpose(parts, weights);
}

inline const ModeConfig& config_of(const AnyState& s) {
  return std::visit([](const auto& x) -> const ModeConfig& { return x.config(); }, s);
}

}  // namespace uncertainty_lab
