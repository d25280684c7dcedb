#pragma once

// Ideal holonomic gates and numerical checks of the cyclic and
// parallel-transport conditions behind them.

#include <cstddef>
#include <string>
#include <vector>

#include "hqc/hilbert.hpp"
#include "hqc/models.hpp"

namespace hqc {

enum class GateKind { single, two };

struct GateSpec {
  GateKind kind = GateKind::single;
  /// theta for single-qubit gates, vartheta for two-qubit gates.
  double angle = 0.0;
  double phase = 0.0;
  Matrix matrix;
};

/// [[cos t, sin t e^{-i p}], [sin t e^{i p}, -cos t]].
Matrix u1(double theta, double phi);
/// Block-diagonal two-qubit gate in the logical order {00, 01, 10, 11}.
Matrix u2(double vartheta, double varphi);

GateSpec single_qubit_gate(double theta, double phi);
GateSpec two_qubit_gate(double vartheta, double varphi);

struct DressedStates {
  Eigen::Vector2cd dark;
  Eigen::Vector2cd bright;
};

/// Coefficients over {|0>_L, |1>_L}.
DressedStates dressed_states(double theta, double phi);

/// Lambda-system Hamiltonian in the basis {|0>_L, |1>_L, |E>_L}.
Matrix lambda_hamiltonian(double theta, double phi, double lambda);
/// Reduced coupler Hamiltonian in the S2 order {00, 01, 10, 11, E1, E2}.
Matrix two_qubit_lambda_hamiltonian(double vartheta, double varphi, double lambda2);

struct HolonomyReport {
  /// Largest population that leaves the logical subspace at the gate time.
  double leakage = 0.0;
  /// max |<psi_i(t)| H |psi_j(t)>| / lambda over the sampled times.
  double parallel_transport = 0.0;
  /// Max-norm distance between the logical propagator and the target gate
  /// after global-phase alignment.
  double gate_error = 0.0;
  bool cyclic_ok = false;
  bool transport_ok = false;
  bool gate_ok = false;
  std::vector<std::string> failures;

  bool passed() const { return cyclic_ok && transport_ok && gate_ok; }
};

struct HolonomyTolerances {
  double leakage = 1e-8;
  double transport = 1e-8;
  double gate = 1e-8;
  std::size_t samples = 200;
};

/// Checks the gate generated by h_effective over [0, cal.tau] against
/// u1(cal.theta, cal.phi). Failed checks are reported, never thrown.
HolonomyReport verify_holonomy(const DriveCalibration& cal, const SingleQubitParams& params,
                               const HolonomyTolerances& tol = {});

/// Same for the coupler Hamiltonian over [0, gate_time] against
/// u2(vartheta, varphi); gate_time <= 0 selects pi / lambda2.
HolonomyReport verify_two_qubit_holonomy(const TwoQubitDrive& drive, double gate_time = 0.0,
                                         std::size_t fock_cutoff = 1,
                                         const HolonomyTolerances& tol = {});

}  // namespace hqc
