#pragma once

// Scenario description shared by the CLI subcommands. Values are held in
// the units used in config files (GHz, MHz, kHz, ns, mm, uA, pF, fractions
// of Phi0) and converted to SI / rad/s on demand.

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqc/circuit_em.hpp"
#include "hqc/dynamics.hpp"
#include "hqc/models.hpp"
#include "hqc/noise_budget.hpp"

namespace hqc::cli {

/// Invalid configuration; `what()` carries "file:line: key: message" when
/// the location is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { single_gate, two_qubit, eigenmodes, coupling, noise, sweep };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct SingleSection {
  double omega_q_ghz = 6.0;
  double omega_c1_ghz = 6.5;
  double omega_c2_ghz = 6.75;
  /// Bare coupling g (quoted as g / J).
  double g_mhz = 25.0;
};

struct GateSection {
  /// "hadamard", "not" or "custom".
  std::string kind = "hadamard";
  double theta = 0.0;
  double phi = 0.0;
  /// Two-qubit gate; unset vartheta follows from the hopping strengths.
  std::optional<double> vartheta;
  double varphi = 0.0;

  double resolved_theta() const;
  double resolved_phi() const;
};

struct NoiseSection {
  double kappa_khz = 10.0;
  double gamma_khz = 10.0;
  double gamma_phi_khz = 10.0;
};

struct NumericsSection {
  /// 0 selects the default step.
  double dt_ns = 0.0;
  std::size_t quadrature_n = 24;
  std::size_t quadrature_n_2q = 12;
  int m_max = 8;
  std::size_t fock_cutoff = 1;
  bool with_correction = true;
  std::size_t threads = 1;
  /// Thin time-series CSVs to every n-th step.
  std::size_t store_every = 1;
};

struct TwoQubitSection {
  double omega_c3_ghz = 7.25;
  double omega_c4_ghz = 7.5;
  double omega_q2_ghz = 6.75;
  double eta1_mhz = 4.14;
  double eta2_mhz = 10.0;
};

struct CircuitSection {
  double l_h_per_m = 4.1e-7;
  double c_f_per_m = 1.6e-10;
  std::array<double, 3> lengths_mm{9.16, 8.46, 8.2};
  double i_j0_ua = 29.5;
  double phi_dc_phi0 = 0.33;
  double c_j_pf = 0.5;
  double tone23_phi0 = 0.005;
  double tone24_phi0 = 0.015;
  double tone23_phase = 0.0;
  double tone24_phase = 0.0;
  /// Tone frequencies; unset values sit on the computed mode splittings.
  std::optional<double> tone23_ghz;
  std::optional<double> tone24_ghz;
  std::size_t profile_points = 201;
};

struct NoiseBudgetSection {
  std::array<double, 2> delta_phi{1e-5, 1e-4};
  std::array<double, 2> delta_ic{1e-7, 1e-6};
  double flux_amp = 1e-5;
  double current_amp = 1e-6;
  double eta_reference_mhz = 10.0;
};

struct SweepAxis {
  /// Dotted config path, e.g. "gate.theta".
  std::string path;
  std::vector<double> values;
};

struct SweepSection {
  Mode scenario = Mode::single_gate;
  std::vector<SweepAxis> axes;
};

struct ScenarioConfig {
  Mode mode = Mode::single_gate;
  SingleSection single;
  GateSection gate;
  NoiseSection noise;
  NumericsSection numerics;
  TwoQubitSection two_qubit;
  CircuitSection circuit;
  NoiseBudgetSection noise_budget;
  SweepSection sweep;

  /// Throws ConfigError with the offending key path.
  void validate() const;

  SingleQubitParams single_params() const;
  NoiseRates rates() const;
  std::array<double, 3> coupler_modes() const;
  TwoQubitDrive two_qubit_drive() const;
  TLRNetwork network() const;
  NoiseSpec noise_spec() const;
};

/// Strict conversion: unknown keys and wrong types raise ConfigError naming
/// the key path.
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& cfg);

/// Loads a .toml or .json file (chosen by extension) and validates it.
/// Errors carry the file name and, where known, the line.
ScenarioConfig load_config(const std::filesystem::path& path);
/// Parses TOML or JSON text; `origin` labels diagnostics.
ScenarioConfig parse_config(const std::string& text, bool is_toml, const std::string& origin);

/// Replaces the value at a dotted path (array entries as name.N) and
/// re-validates.
ScenarioConfig with_value(const ScenarioConfig& cfg, const std::string& path, double value);

}  // namespace hqc::cli
