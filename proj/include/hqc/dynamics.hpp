#pragma once

// Lindblad master-equation integration (fixed-step RK4) and the fidelity
// figures of merit built on it.
//
//   d rho/dt = -i [H(t), rho] + sum_k (r_k / 2) L(A_k)
//   L(A) = 2 A rho A^dag - A^dag A rho - rho A^dag A

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hqc/hilbert.hpp"
#include "hqc/models.hpp"

namespace hqc {

struct CollapseChannel {
  std::string name;
  Operator op;
  double rate = 0.0;
};

struct LindbladModel {
  TimeDependentHamiltonian hamiltonian;
  std::vector<CollapseChannel> channels;

  const CompositeSpace& space() const { return hamiltonian.space(); }
  /// Throws ParameterError on negative rates or mismatched spaces.
  void validate() const;
};

struct NoiseRates {
  double kappa = 0.0;
  double gamma = 0.0;
  double gamma_phi = 0.0;

  static NoiseRates uniform(double rate) { return {rate, rate, rate}; }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::map<std::string, std::vector<double>> observables;

  /// Columns t plus each observable, in name order.
  void write_csv(std::ostream& out) const;
};

struct EvolveOptions {
  /// Record every n-th step (the final step is always recorded).
  std::size_t store_every = 1;
  bool keep_states = true;
  std::vector<std::pair<std::string, Operator>> observables;
};

/// Integrates from rho0 over [0, t_final]. The step is shrunk so that an
/// integer number of steps lands on t_final. Throws ParameterError when
/// dt exceeds 1/50 of the fastest harmonic period and NumericalError when
/// the trace drifts by more than 1e-6.
Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                  double dt, const EvolveOptions& options = {});

/// <psi| rho |psi> for a normalised psi, clamped to [0, 1].
double state_fidelity(const DensityMatrix& rho, const Vector& psi);

/// Single logical qubit: H = h_effective (+ h_correction), kappa on both
/// TLRs, gamma on s^-, gamma_phi on sigma_z.
LindbladModel single_qubit_model(const SingleQubitParams& params, const DriveCalibration& cal,
                                 const NoiseRates& rates, bool with_correction);

/// Two logical qubits under the coupler Hamiltonian alone, with kappa on all
/// four TLRs and gamma, gamma_phi on both transmons.
LindbladModel two_qubit_model(const TwoQubitDrive& drive, const NoiseRates& rates,
                              std::size_t fock_cutoff = 1);

/// (2 pi / w_max) / 100 for driven models, gate_time / 2000 otherwise.
double default_time_step(const LindbladModel& model, double gate_time);

/// Evolves every |i><j| of a logical basis once and exposes the resulting
/// linear map restricted to a set of probe states. Any initial logical
/// state's evolution is then a superposition of the stored blocks.
class LogicalPropagation {
 public:
  /// probes must start with the logical basis vectors.
  LogicalPropagation(const LindbladModel& model, std::span<const Vector> logical,
                     std::span<const Vector> probes, double t_final, double dt,
                     std::size_t threads = 1);

  const std::vector<double>& times() const { return times_; }
  double dt_used() const { return dt_used_; }
  std::size_t steps() const { return steps_; }
  std::size_t num_logical() const { return n_logical_; }

  /// Probe block of rho(t_k) for the initial state sum_i c_i |i>.
  Matrix probe_block(std::size_t time_index, const Vector& logical_coeffs) const;
  /// Fidelity of rho(t_k) with the logical target sum_i f_i |i>.
  double fidelity(std::size_t time_index, const Vector& logical_coeffs,
                  const Vector& target_coeffs) const;

 private:
  std::size_t n_logical_ = 0;
  std::size_t n_probe_ = 0;
  std::vector<double> times_;
  // blocks_[time][i * n + j] is the probe block of the image of |i><j|.
  std::vector<std::vector<Matrix>> blocks_;
  double dt_used_ = 0.0;
  std::size_t steps_ = 0;
};

struct QuadratureOptions {
  std::size_t nodes = 24;
  /// 0 selects default_time_step.
  double dt = 0.0;
  std::size_t threads = 1;
};

struct FidelityCurve {
  std::vector<double> times;
  std::vector<double> values;
  /// Value at the gate time (last sample).
  double final_value = 0.0;
  double peak_value = 0.0;
  double peak_time = 0.0;
  double dt_used = 0.0;
  std::size_t steps = 0;
};

/// Process fidelity (1/2pi) int <psi_f| rho |psi_f> d theta over initial
/// states cos(theta)|0>_L + sin(theta)|1>_L with psi_f = target psi_i,
/// trapezoidal in theta, evaluated at each recorded time.
FidelityCurve process_fidelity_1q(const Matrix& gate_target, const LindbladModel& model,
                                  std::span<const Vector> logical_basis, double gate_time,
                                  const QuadratureOptions& options = {});

/// Two-qubit analogue over product states, nodes x nodes trapezoidal grid.
FidelityCurve process_fidelity_2q(const Matrix& gate_target, const LindbladModel& model,
                                  std::span<const Vector> logical_basis, double gate_time,
                                  const QuadratureOptions& options = {12, 0.0, 1});

/// Quadrature averages evaluated on an existing propagation.
FidelityCurve process_fidelity_curve_1q(const LogicalPropagation& prop, const Matrix& gate_target,
                                        std::size_t nodes);
FidelityCurve process_fidelity_curve_2q(const LogicalPropagation& prop, const Matrix& gate_target,
                                        std::size_t nodes);
/// State fidelity with gate_target * initial for one logical initial state.
FidelityCurve state_fidelity_curve(const LogicalPropagation& prop, const Matrix& gate_target,
                                   const Vector& initial);

}  // namespace hqc
