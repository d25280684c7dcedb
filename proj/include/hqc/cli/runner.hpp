#pragma once

// Scenario execution for the command-line tool. Runs produce their files in
// memory first so that outputs can be compared byte for byte; only
// write_outputs touches the file system.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hqc/cli/config.hpp"

namespace hqc::cli {

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunOutput {
  Mode mode = Mode::single_gate;
  std::vector<OutputFile> files;
  /// Scalar results in a fixed order (also the sweep columns).
  std::vector<std::pair<std::string, double>> scalars;
  /// Human-readable lines; the last one is the headline result.
  std::vector<std::string> summary;
  std::vector<std::string> warnings;
  /// Resolved parameters and numerics; the timestamp is added on writing.
  nlohmann::json manifest;

  double scalar(const std::string& name) const;
  const OutputFile& file(const std::string& name) const;
};

/// Command-line overrides applied on top of a loaded or default config.
struct Overrides {
  std::optional<std::string> gate;
  std::optional<double> theta, phi, vartheta, varphi;
  /// kHz
  std::optional<double> kappa, gamma, gamma_phi;
  /// ns
  std::optional<double> dt;
  std::optional<std::size_t> quadrature_n, fock_cutoff, threads;
  std::optional<bool> with_correction;
};

/// Returns the updated, re-validated config.
ScenarioConfig apply_overrides(ScenarioConfig cfg, const Overrides& o);

/// Dispatches on cfg.mode. Library errors propagate unchanged.
RunOutput run_scenario(const ScenarioConfig& cfg);

/// Writes every file plus manifest.json (with a timestamp) into `dir`,
/// creating it if needed.
void write_outputs(const RunOutput& out, const std::filesystem::path& dir);

}  // namespace hqc::cli
