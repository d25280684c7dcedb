#pragma once

// Three transmission-line resonators grounded through a common, linearised
// SQUID: normal modes, their quantisation, the flux-modulated parametric
// coupling between them and the SQUID plasma-frequency guard.
//
// SI units throughout; frequencies are angular (rad/s).

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hqc {

namespace constants {
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kPlanck = 6.62607015e-34;
/// Flux quantum h / 2e.
inline constexpr double kPhi0 = kPlanck / (2.0 * kElementaryCharge);
/// Reduced flux quantum Phi0 / 2pi.
inline constexpr double kPhi0Reduced = kHbar / (2.0 * kElementaryCharge);
}  // namespace constants

struct SQUIDParams {
  /// Junction capacitance (F).
  double C_J = 0.0;
  /// Maximal critical current (A).
  double I_J0 = 0.0;
  /// dc flux bias (Wb).
  double Phi_dc = 0.0;

  double E_J0() const;
  /// E_J0 cos(pi Phi_dc / Phi0).
  double E_J() const;
  /// Effective critical current E_J / phi0.
  double I_J() const;
  double L_J() const;
  double E_C() const;
  /// sqrt(8 E_C E_J) / hbar; 0 once E_J has reached zero.
  double plasma_frequency() const;

  /// Throws ParameterError unless C_J, I_J0 > 0 and E_J > 0.
  void validate() const;
  static SQUIDParams table_one();
};

struct TLRNetwork {
  /// Inductance and capacitance per unit length (H/m, F/m).
  double l = 0.0;
  double c = 0.0;
  /// Lengths of TLR 2, 3, 4 (m).
  std::array<double, 3> lengths{};
  SQUIDParams squid;

  double v() const;
  /// Non-fatal: SQUID inductance not small against the line inductances.
  std::vector<std::string> warnings() const;
  /// Throws ParameterError for non-positive values or two equal lengths.
  void validate() const;
  static TLRNetwork table_one();
};

struct Eigenmode {
  /// Mode label 2, 3, 4 following the TLR it lives on.
  int index = 0;
  std::size_t dominant_tlr = 0;
  double k = 0.0;
  double omega = 0.0;
  /// C_alpha in f_alpha(x) = C_alpha sin(k x), normalised so that
  /// sum_alpha int f_alpha^2 dx + (C_J / c) f(L)^2 = 1 (units m^-1/2).
  std::array<double, 3> amplitudes{};
  /// Share of sum_alpha int f_alpha^2 dx carried by each line.
  std::array<double, 3> tlr_weights{};
  /// Zero-point flux at the SQUID node f(L) sqrt(hbar / 2 omega c), > 0 (Wb).
  double zero_point_flux = 0.0;

  double profile(std::size_t tlr, double x) const;
  /// f_alpha(L_alpha) for the given line length.
  double end_value(std::size_t tlr, double length) const;
};

/// Coefficient matrix of the homogeneous boundary-condition system
///   L_J k sum_b C_b cos(k L_b) + (l - C_J L_J k^2 / c) C_a sin(k L_a) = 0.
Eigen::Matrix3d char_matrix(const TLRNetwork& net, double k);
double char_det(const TLRNetwork& net, double k);
/// k -> 0 limit of char_det / k^3.
double char_det_small_k_limit(const TLRNetwork& net);

struct ModeSolverOptions {
  std::size_t scan_points = 2000;
  double bracket_low = 0.8;
  double bracket_high = 1.2;
  double rel_tol = 1e-13;
};

/// All sign changes of char_det in [k_low, k_high], refined by bisection.
std::vector<double> char_det_roots(const TLRNetwork& net, double k_low, double k_high,
                                   std::size_t scan_points, double rel_tol);

/// The three normal modes in the order of their dominant TLR. Throws
/// SolverError (with the scan results) unless exactly three distinct roots
/// are found and each is dominated by a different line.
std::vector<Eigenmode> solve_eigenmodes(const TLRNetwork& net, const ModeSolverOptions& opt = {});

/// Inner product sum_alpha int f_m f_n dx + (C_J / c) f_m(L) f_n(L).
double mode_overlap(const TLRNetwork& net, const Eigenmode& a, const Eigenmode& b);

/// Columns tlr, x, mode_2, mode_3, mode_4 with `points` samples per line.
void write_mode_profiles_csv(std::ostream& out, const TLRNetwork& net,
                             std::span<const Eigenmode> modes, std::size_t points = 201);

/// Phi cos(omega t + phase) added to the dc flux.
struct Tone {
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
};

struct ParametricCoupling {
  /// Positions into the mode list, lower-frequency mode first.
  std::size_t mode_low = 0;
  std::size_t mode_high = 0;
  /// eta in eta a_low^dag a_high e^{i phase} + h.c. (rad/s).
  double eta = 0.0;
  double phase = 0.0;
  /// omega_tone - (omega_high - omega_low).
  double detuning = 0.0;
};

/// E_J0 sin(Phi_dc / 2 phi0) Phi phi^a phi^b / (4 phi0^3 hbar): the cross term
/// of the quadratic node-flux coupling with the tone's co-rotating half.
double coupling_strength(const TLRNetwork& net, const Eigenmode& a, const Eigenmode& b,
                         double tone_amplitude);

/// Picks the mode pair whose splitting matches the tone. Throws ValidityError
/// when no splitting is within `resonance_tol`, when the tone reaches the
/// plasma frequency or when |Phi| >= 0.1 Phi_dc.
ParametricCoupling parametric_coupling(const TLRNetwork& net, std::span<const Eigenmode> modes,
                                       const Tone& tone,
                                       double resonance_tol = 2.0 * 3.14159265358979323846 * 1e3);

/// Two tones driving the 2-3 and 2-4 hops.
struct TwoToneDrive {
  Tone hop23;
  Tone hop24;

  /// Amplitudes 0.5% and 1.5% of Phi0 at the computed mode splittings.
  static TwoToneDrive table_one(std::span<const Eigenmode> modes);
};

std::array<ParametricCoupling, 2> two_tone_couplings(const TLRNetwork& net,
                                                     std::span<const Eigenmode> modes,
                                                     const TwoToneDrive& drive);

struct PlasmaReport {
  double omega_p = 0.0;
  std::vector<double> tone_frequencies;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double threshold = 0.1;
  bool passed = false;
};

PlasmaReport plasma_guard(const SQUIDParams& squid, std::span<const double> modulation_freqs);

}  // namespace hqc
