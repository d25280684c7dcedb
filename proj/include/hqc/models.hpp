#pragma once

// Hamiltonians of the two-TLR + transmon logical-qubit block and of the
// three-TLR parametric coupler, together with the drive calibration that
// turns a target gate (theta, phi) into modulation indices.
//
// All frequencies and couplings are angular (rad/s); times are seconds.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hqc/hilbert.hpp"

namespace hqc {

// Subsystem positions in the single-logical-qubit space |TLR1, q, TLR2>.
namespace single_layout {
inline constexpr std::size_t kTlr1 = 0;
inline constexpr std::size_t kQubit = 1;
inline constexpr std::size_t kTlr2 = 2;
}  // namespace single_layout

// Subsystem positions in the two-logical-qubit space
// |TLR1, q1, TLR2, TLR3, q2, TLR4>.
namespace two_layout {
inline constexpr std::size_t kTlr1 = 0;
inline constexpr std::size_t kQubit1 = 1;
inline constexpr std::size_t kTlr2 = 2;
inline constexpr std::size_t kTlr3 = 3;
inline constexpr std::size_t kQubit2 = 4;
inline constexpr std::size_t kTlr4 = 5;
}  // namespace two_layout

/// Operator op contributing op * exp(i frequency t) + h.c. to a Hamiltonian.
struct HarmonicTerm {
  Operator op;
  double frequency = 0.0;
};

/// H(t) = H_static + sum_k [A_k e^{i w_k t} + h.c.].
class TimeDependentHamiltonian {
 public:
  explicit TimeDependentHamiltonian(Operator static_part);

  void add_harmonic(Operator op, double frequency);

  Operator at(double t) const;
  const Operator& static_part() const { return static_part_; }
  std::span<const HarmonicTerm> harmonics() const { return harmonics_; }
  const CompositeSpace& space() const { return static_part_.space(); }
  /// Largest |w_k| among the harmonics, 0 if the Hamiltonian is static.
  double max_frequency() const;
  bool is_static() const { return harmonics_.empty(); }

 private:
  Operator static_part_;
  std::vector<HarmonicTerm> harmonics_;
};

struct SingleQubitParams {
  double omega_q = 0.0;
  std::array<double, 2> omega_c{};
  /// Bare transmon-TLR coupling g_1 = g_2 (the quantity quoted as g/J).
  double g = 0.0;
  std::array<double, 2> eps{};
  std::array<double, 2> nu{};
  std::array<double, 2> phi_drive{};
  std::size_t fock_cutoff = 1;

  /// Delta_j = omega_c,j - omega_q, j in {0, 1}.
  double delta(std::size_t j) const { return omega_c.at(j) - omega_q; }
  /// |Delta_2 - Delta_1|.
  double delta_diff() const;
  /// alpha_j = eps_j / nu_j (0 when the tone is off).
  double alpha(std::size_t j) const;
  bool is_resonant(double tol) const;

  CompositeSpace space() const;
  /// Non-fatal checks: dispersive regime (Delta_j >= 10 g).
  std::vector<std::string> warnings() const;
  /// Throws ParameterError for non-positive detunings or cutoffs.
  void validate() const;

  /// omega_q/2pi = 6 GHz, omega_c/2pi = (6.5, 6.75) GHz, g/2pi = 25 MHz, no drive.
  static SingleQubitParams defaults();
};

struct DriveCalibration {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  /// J = J0(alpha2) = J1(alpha2).
  double J = 0.0;
  double J0_a1 = 0.0;
  double J1_a1 = 0.0;
  /// Effective coupling g_bare * J multiplying the resonant Hamiltonian.
  double g_eff = 0.0;
  double lambda1 = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double tau = 0.0;
};

/// Bessel inversion for a target gate: alpha1 from theta, alpha2 from the
/// equal-weight condition, lambda1 = g J sqrt(J1^2 + J0^2), tau = pi / lambda1.
DriveCalibration calibrate(const SingleQubitParams& params, double theta, double phi);

/// Sets the two-tone drive to realise `cal`: nu_j = Delta_j,
/// eps_j = alpha_j nu_j, phi_1 = 0, phi_2 = phi - pi.
SingleQubitParams apply_drive(SingleQubitParams params, const DriveCalibration& cal);

/// Lab-frame Hamiltonian with the frequency-modulated transmon. The
/// counter-rotating terms are only included on request.
TimeDependentHamiltonian lab_hamiltonian(const SingleQubitParams& params,
                                         bool counter_rotating = false);
Operator h_lab(const SingleQubitParams& params, double t, bool counter_rotating = false);

/// Interaction-picture Hamiltonian with both Bessel sums truncated at
/// |m| <= m_max. A constant transmon phase reference -i e^{-i phi_1} is
/// folded in so that the resonant part coincides with h_effective.
TimeDependentHamiltonian rotating_hamiltonian(const SingleQubitParams& params, int m_max);
Operator h_rotating(const SingleQubitParams& params, double t, int m_max);

/// g_eff [J1 a1^dag s^- - J0 a2^dag s^- e^{i phi}] + h.c.
Operator h_effective(const DriveCalibration& cal, const SingleQubitParams& params);

/// Lowest fast-oscillating sideband term, oscillating at Delta:
/// g_eff [J1 a2^dag s^- e^{i Delta t} + J0 a1^dag s^- e^{i(phi - Delta t)}] + h.c.
TimeDependentHamiltonian correction_hamiltonian(const DriveCalibration& cal,
                                                const SingleQubitParams& params);
Operator h_correction(const DriveCalibration& cal, const SingleQubitParams& params, double t);

/// Logical basis {|100>, |001>} and ancilla |010> of the single-qubit block.
std::array<Vector, 2> single_logical_basis(const CompositeSpace& space);
Vector single_ancilla(const CompositeSpace& space);
/// Total excitation number a1^dag a1 + a2^dag a2 + s^+ s^-.
Operator single_excitation_number(const CompositeSpace& space);

struct TwoQubitDrive {
  std::array<double, 2> eta{};
  std::array<double, 2> varphi_tones{};
  std::array<double, 2> omega_tones{};
  /// Mode frequencies of TLR 2, 3, 4 the tones are calibrated against.
  std::array<double, 3> omega_modes{};
  double lambda2 = 0.0;
  double vartheta = 0.0;
  double varphi = 0.0;

  /// Tones resonant with |w2 - w3| and |w2 - w4|; lambda2, vartheta and
  /// varphi = phi1 - phi2 - pi derived from the hopping strengths.
  static TwoQubitDrive from_hopping(double eta1, double eta2, double phi1, double phi2,
                                    const std::array<double, 3>& omega_modes);
  /// Inverse: hopping strengths realising U2(vartheta, varphi) at rate lambda2.
  static TwoQubitDrive for_gate(double vartheta, double varphi, double lambda2,
                                const std::array<double, 3>& omega_modes);

  bool is_resonant(double tol) const;
  double gate_time() const;
};

CompositeSpace two_qubit_space(std::size_t fock_cutoff = 1);

/// eta1 a2^dag a3 e^{i phi1} + eta2 a2^dag a4 e^{i phi2} + h.c. on the
/// six-subsystem space. Throws ParameterError if the tones are off resonance.
Operator h_two_qubit(const TwoQubitDrive& drive, const CompositeSpace& space);

/// S2 basis in the order {|00>, |01>, |10>, |11>, |E1>, |E2>}.
std::array<Vector, 6> two_qubit_s2_basis(const CompositeSpace& space);
/// Total photon number over the four TLRs.
Operator two_qubit_photon_number(const CompositeSpace& space);

struct CommutingDecomposition {
  /// Block on span{|10>, |11>, |E2>}, in units of lambda2.
  Operator h_a;
  /// Block on span{|00>, |01>, |E1>}, in units of lambda2.
  Operator h_b;
  double lambda2 = 0.0;
  /// Max-norm of P H P - lambda2 (H_a + H_b) with P the S2 projector.
  double residual = 0.0;
};

CommutingDecomposition decompose_commuting(const Operator& h_c, const TwoQubitDrive& drive);

}  // namespace hqc
