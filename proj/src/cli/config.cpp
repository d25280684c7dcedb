#include "hqc/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "hqc/cli/toml_lite.hpp"
#include "hqc/errors.hpp"

namespace hqc::cli {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised while reading; turned into a ConfigError once the location is known.
struct KeyError {
  std::string path;
  std::string message;
};

class Section {
 public:
  Section(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) throw KeyError{prefix_, "expected a table"};
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  void number(const std::string& key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) throw KeyError{path(key), "expected a number"};
      out = v->get<double>();
      if (!std::isfinite(out)) throw KeyError{path(key), "must be finite"};
    }
  }
  void number(const std::string& key, std::optional<double>& out) {
    if (const json* v = take(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      double x = 0.0;
      number_value(*v, key, x);
      out = x;
    }
  }
  void count(const std::string& key, std::size_t& out) {
    if (const json* v = take(key)) out = static_cast<std::size_t>(integer_value(*v, key, 0));
  }
  void integer(const std::string& key, int& out) {
    if (const json* v = take(key)) out = static_cast<int>(integer_value(*v, key, INT32_MIN));
  }
  void boolean(const std::string& key, bool& out) {
    if (const json* v = take(key)) {
      if (v->is_boolean()) {
        out = v->get<bool>();
      } else if (v->is_string() && (*v == "on" || *v == "off")) {
        out = *v == "on";
      } else {
        throw KeyError{path(key), "expected true/false"};
      }
    }
  }
  void string(const std::string& key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) throw KeyError{path(key), "expected a string"};
      out = v->get<std::string>();
    }
  }
  template <std::size_t N>
  void numbers(const std::string& key, std::array<double, N>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array() || v->size() != N)
        throw KeyError{path(key), "expected an array of " + std::to_string(N) + " numbers"};
      for (std::size_t i = 0; i < N; ++i) number_value((*v)[i], key + "." + std::to_string(i), out[i]);
    }
  }
  const json* sub(const std::string& key) { return take(key); }

  std::string path(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw KeyError{path(it.key()), "unknown key"};
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string> used_;

  const json* take(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  void number_value(const json& v, const std::string& key, double& out) const {
    if (!v.is_number()) throw KeyError{path(key), "expected a number"};
    out = v.get<double>();
    if (!std::isfinite(out)) throw KeyError{path(key), "must be finite"};
  }
  long long integer_value(const json& v, const std::string& key, long long min) const {
    double x = 0.0;
    number_value(v, key, x);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw KeyError{path(key), "expected an integer"};
    if (x < static_cast<double>(min)) throw KeyError{path(key), "must be non-negative"};
    return static_cast<long long>(x);
  }
};

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw KeyError{path, msg};
}

ScenarioConfig read_config(const json& j) {
  ScenarioConfig cfg;
  Section top(j, "");
  std::string mode = to_string(cfg.mode);
  top.string("mode", mode);
  try {
    cfg.mode = mode_from_string(mode);
  } catch (const ParameterError& e) {
    throw KeyError{"mode", e.what()};
  }

  if (const json* s = top.sub("single")) {
    Section sec(*s, "single");
    sec.number("omega_q_ghz", cfg.single.omega_q_ghz);
    sec.number("omega_c1_ghz", cfg.single.omega_c1_ghz);
    sec.number("omega_c2_ghz", cfg.single.omega_c2_ghz);
    sec.number("g_mhz", cfg.single.g_mhz);
    sec.finish();
  }
  if (const json* s = top.sub("gate")) {
    Section sec(*s, "gate");
    sec.string("kind", cfg.gate.kind);
    sec.number("theta", cfg.gate.theta);
    sec.number("phi", cfg.gate.phi);
    sec.number("vartheta", cfg.gate.vartheta);
    sec.number("varphi", cfg.gate.varphi);
    sec.finish();
  }
  if (const json* s = top.sub("noise")) {
    Section sec(*s, "noise");
    sec.number("kappa_khz", cfg.noise.kappa_khz);
    sec.number("gamma_khz", cfg.noise.gamma_khz);
    sec.number("gamma_phi_khz", cfg.noise.gamma_phi_khz);
    sec.finish();
  }
  if (const json* s = top.sub("numerics")) {
    Section sec(*s, "numerics");
    auto& n = cfg.numerics;
    sec.number("dt_ns", n.dt_ns);
    sec.count("quadrature_n", n.quadrature_n);
    sec.count("quadrature_n_2q", n.quadrature_n_2q);
    sec.integer("m_max", n.m_max);
    sec.count("fock_cutoff", n.fock_cutoff);
    sec.boolean("with_correction", n.with_correction);
    sec.count("threads", n.threads);
    sec.count("store_every", n.store_every);
    sec.finish();
  }
  if (const json* s = top.sub("two_qubit")) {
    Section sec(*s, "two_qubit");
    auto& t = cfg.two_qubit;
    sec.number("omega_c3_ghz", t.omega_c3_ghz);
    sec.number("omega_c4_ghz", t.omega_c4_ghz);
    sec.number("omega_q2_ghz", t.omega_q2_ghz);
    sec.number("eta1_mhz", t.eta1_mhz);
    sec.number("eta2_mhz", t.eta2_mhz);
    sec.finish();
  }
  if (const json* s = top.sub("circuit")) {
    Section sec(*s, "circuit");
    auto& c = cfg.circuit;
    sec.number("l_h_per_m", c.l_h_per_m);
    sec.number("c_f_per_m", c.c_f_per_m);
    sec.numbers("lengths_mm", c.lengths_mm);
    sec.number("i_j0_ua", c.i_j0_ua);
    sec.number("phi_dc_phi0", c.phi_dc_phi0);
    sec.number("c_j_pf", c.c_j_pf);
    sec.number("tone23_phi0", c.tone23_phi0);
    sec.number("tone24_phi0", c.tone24_phi0);
    sec.number("tone23_phase", c.tone23_phase);
    sec.number("tone24_phase", c.tone24_phase);
    sec.number("tone23_ghz", c.tone23_ghz);
    sec.number("tone24_ghz", c.tone24_ghz);
    sec.count("profile_points", c.profile_points);
    sec.finish();
  }
  if (const json* s = top.sub("noise_budget")) {
    Section sec(*s, "noise_budget");
    auto& nb = cfg.noise_budget;
    sec.numbers("delta_phi", nb.delta_phi);
    sec.numbers("delta_ic", nb.delta_ic);
    sec.number("flux_amp", nb.flux_amp);
    sec.number("current_amp", nb.current_amp);
    sec.number("eta_reference_mhz", nb.eta_reference_mhz);
    sec.finish();
  }
  if (const json* s = top.sub("sweep")) {
    Section sec(*s, "sweep");
    std::string scenario = to_string(cfg.sweep.scenario);
    sec.string("scenario", scenario);
    try {
      cfg.sweep.scenario = mode_from_string(scenario);
    } catch (const ParameterError& e) {
      throw KeyError{"sweep.scenario", e.what()};
    }
    if (const json* p = sec.sub("parameters")) {
      require(p->is_array(), "sweep.parameters", "expected an array of tables");
      for (std::size_t i = 0; i < p->size(); ++i) {
        const std::string prefix = "sweep.parameters." + std::to_string(i);
        Section ax((*p)[i], prefix);
        SweepAxis axis;
        ax.string("path", axis.path);
        require(!axis.path.empty(), prefix + ".path", "missing swept path");
        if (const json* vals = ax.sub("values")) {
          require(vals->is_array() && !vals->empty(), prefix + ".values",
                  "expected a non-empty array");
          for (const auto& v : *vals) {
            require(v.is_number(), prefix + ".values", "expected numbers");
            axis.values.push_back(v.get<double>());
          }
        } else {
          double start = 0.0, stop = 0.0;
          std::size_t n = 0;
          require(ax.has("start") && ax.has("stop") && ax.has("count"), prefix,
                  "give either values or start/stop/count");
          ax.number("start", start);
          ax.number("stop", stop);
          ax.count("count", n);
          require(n >= 1, prefix + ".count", "must be >= 1");
          for (std::size_t k = 0; k < n; ++k)
            axis.values.push_back(n == 1 ? start
                                         : start + (stop - start) * static_cast<double>(k) /
                                                       static_cast<double>(n - 1));
        }
        ax.finish();
        cfg.sweep.axes.push_back(std::move(axis));
      }
    }
    sec.finish();
  }
  top.finish();
  return cfg;
}

void check_config(const ScenarioConfig& c) {
  auto positive = [](double v, const char* path) { require(v > 0.0, path, "must be positive"); };
  auto non_negative = [](double v, const char* path) { require(v >= 0.0, path, "must be >= 0"); };
  positive(c.single.omega_q_ghz, "single.omega_q_ghz");
  positive(c.single.omega_c1_ghz, "single.omega_c1_ghz");
  positive(c.single.omega_c2_ghz, "single.omega_c2_ghz");
  positive(c.single.g_mhz, "single.g_mhz");
  require(c.gate.kind == "hadamard" || c.gate.kind == "not" || c.gate.kind == "custom",
          "gate.kind", "expected hadamard, not or custom");
  if (c.gate.kind == "custom")
    require(c.gate.theta > 0.0 && c.gate.theta < std::numbers::pi, "gate.theta",
            "must lie in (0, pi)");
  if (c.gate.vartheta)
    require(*c.gate.vartheta > 0.0 && *c.gate.vartheta < std::numbers::pi, "gate.vartheta",
            "must lie in (0, pi)");
  non_negative(c.noise.kappa_khz, "noise.kappa_khz");
  non_negative(c.noise.gamma_khz, "noise.gamma_khz");
  non_negative(c.noise.gamma_phi_khz, "noise.gamma_phi_khz");
  non_negative(c.numerics.dt_ns, "numerics.dt_ns");
  require(c.numerics.quadrature_n >= 8, "numerics.quadrature_n", "must be >= 8");
  require(c.numerics.quadrature_n_2q >= 8, "numerics.quadrature_n_2q", "must be >= 8");
  require(c.numerics.m_max >= 3, "numerics.m_max", "must be >= 3");
  require(c.numerics.fock_cutoff >= 1 && c.numerics.fock_cutoff <= 3, "numerics.fock_cutoff",
          "must lie in 1..3");
  require(c.numerics.threads >= 1 && c.numerics.threads <= 256, "numerics.threads",
          "must lie in 1..256");
  require(c.numerics.store_every >= 1, "numerics.store_every", "must be >= 1");
  positive(c.two_qubit.omega_c3_ghz, "two_qubit.omega_c3_ghz");
  positive(c.two_qubit.omega_c4_ghz, "two_qubit.omega_c4_ghz");
  positive(c.two_qubit.omega_q2_ghz, "two_qubit.omega_q2_ghz");
  positive(c.two_qubit.eta1_mhz, "two_qubit.eta1_mhz");
  positive(c.two_qubit.eta2_mhz, "two_qubit.eta2_mhz");
  positive(c.circuit.l_h_per_m, "circuit.l_h_per_m");
  positive(c.circuit.c_f_per_m, "circuit.c_f_per_m");
  for (double len : c.circuit.lengths_mm) positive(len, "circuit.lengths_mm");
  positive(c.circuit.i_j0_ua, "circuit.i_j0_ua");
  positive(c.circuit.c_j_pf, "circuit.c_j_pf");
  require(std::abs(c.circuit.phi_dc_phi0) < 0.5, "circuit.phi_dc_phi0", "must satisfy |x| < 0.5");
  non_negative(c.circuit.tone23_phi0, "circuit.tone23_phi0");
  non_negative(c.circuit.tone24_phi0, "circuit.tone24_phi0");
  require(c.circuit.profile_points >= 2, "circuit.profile_points", "must be >= 2");
  for (const auto& r : {c.noise_budget.delta_phi, c.noise_budget.delta_ic})
    require(r[0] > 0.0 && r[0] < r[1] && r[1] < 1e-2, "noise_budget",
            "ranges need 0 < low < high < 1e-2");
  positive(c.noise_budget.eta_reference_mhz, "noise_budget.eta_reference_mhz");
  if (c.mode == Mode::sweep) {
    require(c.sweep.scenario != Mode::sweep, "sweep.scenario", "cannot sweep a sweep");
    require(!c.sweep.axes.empty() && c.sweep.axes.size() <= 2, "sweep.parameters",
            "declare one or two swept parameters");
  }
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

// Best-effort line lookup for JSON files: the first line quoting the last key.
int json_line_of(const std::string& text, const std::string& path) {
  const auto parts = split_path(path);
  if (parts.empty()) return 0;
  std::string key = parts.back();
  for (auto it = parts.rbegin(); it != parts.rend(); ++it)
    if (!std::all_of(it->begin(), it->end(), ::isdigit)) {
      key = *it;
      break;
    }
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

int toml_line_of(const std::map<std::string, int>& lines, std::string path) {
  while (!path.empty()) {
    auto it = lines.find(path);
    if (it != lines.end()) return it->second;
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) break;
    path.resize(dot);
  }
  return 0;
}

std::string locate(const std::string& origin, int line, const std::string& path,
                   const std::string& msg) {
  std::string out = origin;
  if (line > 0) out += ":" + std::to_string(line);
  out += ": ";
  if (!path.empty()) out += path + ": ";
  return out + msg;
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::single_gate: return "single-gate";
    case Mode::two_qubit: return "two-qubit";
    case Mode::eigenmodes: return "eigenmodes";
    case Mode::coupling: return "coupling";
    case Mode::noise: return "noise";
    case Mode::sweep: return "sweep";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  for (Mode m : {Mode::single_gate, Mode::two_qubit, Mode::eigenmodes, Mode::coupling, Mode::noise,
                 Mode::sweep})
    if (to_string(m) == s) return m;
  throw ParameterError("unknown mode '" + s + "'");
}

double GateSection::resolved_theta() const {
  if (kind == "hadamard") return std::numbers::pi / 4.0;
  if (kind == "not") return std::numbers::pi / 2.0;
  return theta;
}

double GateSection::resolved_phi() const { return kind == "custom" ? phi : 0.0; }

void ScenarioConfig::validate() const {
  try {
    check_config(*this);
  } catch (const KeyError& e) {
    throw ConfigError(e.path + ": " + e.message);
  }
}

SingleQubitParams ScenarioConfig::single_params() const {
  SingleQubitParams p;
  p.omega_q = kTwoPi * single.omega_q_ghz * 1e9;
  p.omega_c = {kTwoPi * single.omega_c1_ghz * 1e9, kTwoPi * single.omega_c2_ghz * 1e9};
  p.g = kTwoPi * single.g_mhz * 1e6;
  p.fock_cutoff = numerics.fock_cutoff;
  return p;
}

NoiseRates ScenarioConfig::rates() const {
  return {kTwoPi * noise.kappa_khz * 1e3, kTwoPi * noise.gamma_khz * 1e3,
          kTwoPi * noise.gamma_phi_khz * 1e3};
}

std::array<double, 3> ScenarioConfig::coupler_modes() const {
  return {kTwoPi * single.omega_c2_ghz * 1e9, kTwoPi * two_qubit.omega_c3_ghz * 1e9,
          kTwoPi * two_qubit.omega_c4_ghz * 1e9};
}

TwoQubitDrive ScenarioConfig::two_qubit_drive() const {
  const double eta1 = kTwoPi * two_qubit.eta1_mhz * 1e6;
  const double eta2 = kTwoPi * two_qubit.eta2_mhz * 1e6;
  const double lambda2 = std::hypot(eta1, eta2);
  const double vt = gate.vartheta ? *gate.vartheta : 2.0 * std::atan2(eta1, eta2);
  return TwoQubitDrive::for_gate(vt, gate.varphi, lambda2, coupler_modes());
}

TLRNetwork ScenarioConfig::network() const {
  TLRNetwork net;
  net.l = circuit.l_h_per_m;
  net.c = circuit.c_f_per_m;
  for (std::size_t i = 0; i < 3; ++i) net.lengths[i] = circuit.lengths_mm[i] * 1e-3;
  net.squid.C_J = circuit.c_j_pf * 1e-12;
  net.squid.I_J0 = circuit.i_j0_ua * 1e-6;
  net.squid.Phi_dc = circuit.phi_dc_phi0 * constants::kPhi0;
  return net;
}

NoiseSpec ScenarioConfig::noise_spec() const {
  NoiseSpec s;
  s.delta_phi_range = noise_budget.delta_phi;
  s.delta_ic_range = noise_budget.delta_ic;
  s.flux_amp = noise_budget.flux_amp;
  s.current_amp = noise_budget.current_amp;
  s.tone_amplitudes = {circuit.tone23_phi0, circuit.tone24_phi0};
  s.eta_reference = kTwoPi * noise_budget.eta_reference_mhz * 1e6;
  return s;
}

ScenarioConfig config_from_json(const json& j) {
  try {
    ScenarioConfig cfg = read_config(j);
    check_config(cfg);
    return cfg;
  } catch (const KeyError& e) {
    throw ConfigError(e.path.empty() ? e.message : e.path + ": " + e.message);
  }
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["mode"] = to_string(c.mode);
  j["single"] = {{"omega_q_ghz", c.single.omega_q_ghz},
                 {"omega_c1_ghz", c.single.omega_c1_ghz},
                 {"omega_c2_ghz", c.single.omega_c2_ghz},
                 {"g_mhz", c.single.g_mhz}};
  j["gate"] = {{"kind", c.gate.kind}, {"theta", c.gate.theta}, {"phi", c.gate.phi},
               {"varphi", c.gate.varphi}};
  if (c.gate.vartheta) j["gate"]["vartheta"] = *c.gate.vartheta;
  j["noise"] = {{"kappa_khz", c.noise.kappa_khz},
                {"gamma_khz", c.noise.gamma_khz},
                {"gamma_phi_khz", c.noise.gamma_phi_khz}};
  const auto& n = c.numerics;
  j["numerics"] = {{"dt_ns", n.dt_ns},
                   {"quadrature_n", n.quadrature_n},
                   {"quadrature_n_2q", n.quadrature_n_2q},
                   {"m_max", n.m_max},
                   {"fock_cutoff", n.fock_cutoff},
                   {"with_correction", n.with_correction},
                   {"threads", n.threads},
                   {"store_every", n.store_every}};
  const auto& t = c.two_qubit;
  j["two_qubit"] = {{"omega_c3_ghz", t.omega_c3_ghz}, {"omega_c4_ghz", t.omega_c4_ghz},
                    {"omega_q2_ghz", t.omega_q2_ghz}, {"eta1_mhz", t.eta1_mhz},
                    {"eta2_mhz", t.eta2_mhz}};
  const auto& ci = c.circuit;
  j["circuit"] = {{"l_h_per_m", ci.l_h_per_m},     {"c_f_per_m", ci.c_f_per_m},
                  {"lengths_mm", ci.lengths_mm},   {"i_j0_ua", ci.i_j0_ua},
                  {"phi_dc_phi0", ci.phi_dc_phi0}, {"c_j_pf", ci.c_j_pf},
                  {"tone23_phi0", ci.tone23_phi0}, {"tone24_phi0", ci.tone24_phi0},
                  {"tone23_phase", ci.tone23_phase}, {"tone24_phase", ci.tone24_phase},
                  {"profile_points", ci.profile_points}};
  if (ci.tone23_ghz) j["circuit"]["tone23_ghz"] = *ci.tone23_ghz;
  if (ci.tone24_ghz) j["circuit"]["tone24_ghz"] = *ci.tone24_ghz;
  const auto& nb = c.noise_budget;
  j["noise_budget"] = {{"delta_phi", nb.delta_phi},
                       {"delta_ic", nb.delta_ic},
                       {"flux_amp", nb.flux_amp},
                       {"current_amp", nb.current_amp},
                       {"eta_reference_mhz", nb.eta_reference_mhz}};
  json axes = json::array();
  for (const auto& a : c.sweep.axes) axes.push_back({{"path", a.path}, {"values", a.values}});
  j["sweep"] = {{"scenario", to_string(c.sweep.scenario)}, {"parameters", axes}};
  return j;
}

ScenarioConfig parse_config(const std::string& text, bool is_toml, const std::string& origin) {
  json j;
  std::map<std::string, int> lines;
  if (is_toml) {
    try {
      auto doc = parse_toml(text);
      j = std::move(doc.root);
      lines = std::move(doc.lines);
    } catch (const TomlError& e) {
      throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " +
                        std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
  } else {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(origin + ": " + e.what());
    }
  }
  try {
    ScenarioConfig cfg = read_config(j);
    check_config(cfg);
    return cfg;
  } catch (const KeyError& e) {
    const int line = is_toml ? toml_line_of(lines, e.path) : json_line_of(text, e.path);
    throw ConfigError(locate(origin, line, e.path, e.message));
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto ext = path.extension().string();
  bool is_toml;
  if (ext == ".toml") {
    is_toml = true;
  } else if (ext == ".json") {
    is_toml = false;
  } else {
    throw ConfigError(path.string() + ": config must end in .toml or .json");
  }
  return parse_config(ss.str(), is_toml, path.string());
}

ScenarioConfig with_value(const ScenarioConfig& cfg, const std::string& path, double value) {
  json j = config_to_json(cfg);
  const auto parts = split_path(path);
  if (parts.empty()) throw ConfigError("empty sweep path");
  json* node = &j;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const bool last = i + 1 == parts.size();
    const std::string& p = parts[i];
    if (node->is_array()) {
      if (!std::all_of(p.begin(), p.end(), ::isdigit) || p.empty())
        throw ConfigError(path + ": expected an array index");
      const std::size_t idx = std::stoul(p);
      if (idx >= node->size()) throw ConfigError(path + ": index out of range");
      node = &(*node)[idx];
    } else if (node->is_object()) {
      if (!last && !node->contains(p)) throw ConfigError(path + ": unknown key");
      node = &(*node)[p];
    } else {
      throw ConfigError(path + ": not a table");
    }
    if (last) {
      if (!(node->is_null() || node->is_number()))
        throw ConfigError(path + ": only numeric values can be swept");
      *node = value;
    }
  }
  return config_from_json(j);
}

}  // namespace hqc::cli
