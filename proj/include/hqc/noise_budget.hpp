#pragma once

// Quasistatic 1/f-noise budget: shift the dc flux bias or the critical
// current, re-solve the modes and compare frequencies and hopping strengths.

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqc/circuit_em.hpp"

namespace hqc {

struct NoiseSpec {
  /// delta Phi / Phi0 at the two ends of the range.
  std::array<double, 2> delta_phi_range{1e-5, 1e-4};
  /// delta I_J0 / I_J0.
  std::array<double, 2> delta_ic_range{1e-7, 1e-6};
  /// Source amplitudes A_Phi / Phi0 and A_I / I_J0, carried into the report.
  double flux_amp = 1e-5;
  double current_amp = 1e-6;
  /// Tone amplitudes (fractions of Phi0) of the 2-3 and 2-4 hops.
  std::array<double, 2> tone_amplitudes{0.005, 0.015};
  /// Reference eta_2 the shifts are expressed against (rad/s).
  double eta_reference = 2.0 * 3.14159265358979323846 * 10e6;

  /// Throws ParameterError unless 0 < low < high < 1e-2 for both ranges.
  void validate() const;
};

struct SensitivityPoint {
  /// Fractional perturbation (of Phi0 or of I_J0).
  double perturbation = 0.0;
  std::array<double, 3> delta_omega{};
  std::array<double, 2> delta_eta{};
};

struct SensitivityReport {
  std::string parameter;
  std::vector<SensitivityPoint> points;
  double omega_min = 0.0, omega_max = 0.0;
  double eta_min = 0.0, eta_max = 0.0;
  double eta_reference = 0.0;
  double source_amplitude = 0.0;

  double omega_fraction_max() const { return omega_max / eta_reference; }
  double eta_fraction_max() const { return eta_max / eta_reference; }
};

/// Half the spread of omega_m and eta under Phi_dc -> Phi_dc +- delta Phi0.
SensitivityPoint flux_shift(const TLRNetwork& net, const NoiseSpec& spec, double delta);
/// Same with I_J0 -> I_J0 (1 +- delta).
SensitivityPoint critical_current_shift(const TLRNetwork& net, const NoiseSpec& spec, double delta);

SensitivityReport flux_sensitivity(const TLRNetwork& net, const NoiseSpec& spec);
SensitivityReport critical_current_sensitivity(const TLRNetwork& net, const NoiseSpec& spec);

void to_json(nlohmann::json& j, const SensitivityReport& r);

}  // namespace hqc
