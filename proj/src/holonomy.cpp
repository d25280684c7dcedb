#include "hqc/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "hqc/errors.hpp"

namespace hqc {

Matrix u1(double theta, double phi) {
  Matrix m(2, 2);
  m(0, 0) = std::cos(theta);
  m(0, 1) = std::sin(theta) * std::exp(-kI * phi);
  m(1, 0) = std::sin(theta) * std::exp(kI * phi);
  m(1, 1) = -std::cos(theta);
  return m;
}

Matrix u2(double vartheta, double varphi) {
  const double c = std::cos(vartheta);
  const double s = std::sin(vartheta);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = c;
  m(0, 1) = s * std::exp(-kI * varphi);
  m(1, 0) = s * std::exp(kI * varphi);
  m(1, 1) = -c;
  m(2, 2) = -c;
  m(2, 3) = s * std::exp(-kI * varphi);
  m(3, 2) = s * std::exp(kI * varphi);
  m(3, 3) = c;
  return m;
}

GateSpec single_qubit_gate(double theta, double phi) {
  return {GateKind::single, theta, phi, u1(theta, phi)};
}

GateSpec two_qubit_gate(double vartheta, double varphi) {
  return {GateKind::two, vartheta, varphi, u2(vartheta, varphi)};
}

DressedStates dressed_states(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  DressedStates out;
  out.dark << c, s * std::exp(kI * phi);
  out.bright << s * std::exp(-kI * phi), -c;
  return out;
}

Matrix lambda_hamiltonian(double theta, double phi, double lambda) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix h = Matrix::Zero(3, 3);
  h(2, 0) = lambda * s * std::exp(kI * phi);
  h(2, 1) = -lambda * c;
  h(0, 2) = std::conj(h(2, 0));
  h(1, 2) = std::conj(h(2, 1));
  return h;
}

Matrix two_qubit_lambda_hamiltonian(double vartheta, double varphi, double lambda2) {
  const double c = std::cos(0.5 * vartheta);
  const double s = std::sin(0.5 * vartheta);
  const Complex e = std::exp(kI * varphi);
  // Order {00, 01, 10, 11, E1, E2}.
  Matrix h = Matrix::Zero(6, 6);
  h(4, 0) = lambda2 * s * e;  // |E1><00|
  h(3, 5) = lambda2 * s * e;  // |11><E2|
  h(4, 1) = -lambda2 * c;     // |E1><01|
  h(2, 5) = -lambda2 * c;     // |10><E2|
  return h + Matrix(h.adjoint());
}

namespace {

struct Checks {
  double leakage = 0.0;
  double transport = 0.0;
  double gate = 0.0;
};

Checks run_checks(const Operator& h, std::span<const Vector> logical, const Matrix& target,
                  double gate_time, double lambda, std::size_t samples) {
  Checks out;
  const Operator u = herm_expm(h, gate_time);
  Matrix block = restrict_to(u, logical);
  for (Eigen::Index j = 0; j < block.cols(); ++j) {
    const double kept = block.col(j).squaredNorm();
    out.leakage = std::max(out.leakage, std::max(0.0, 1.0 - kept));
  }
  out.gate = phase_aligned_distance(block, target);

  const std::size_t n = std::max<std::size_t>(samples, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = gate_time * static_cast<double>(k) / static_cast<double>(n - 1);
    const Operator ut = herm_expm(h, t);
    std::vector<Vector> evolved;
    evolved.reserve(logical.size());
    for (const auto& ket : logical) evolved.push_back(ut.apply(ket));
    const Matrix m = restrict_to(h, evolved);
    out.transport = std::max(out.transport, max_abs(m) / lambda);
  }
  return out;
}

HolonomyReport make_report(const Checks& c, const HolonomyTolerances& tol) {
  HolonomyReport r;
  r.leakage = c.leakage;
  r.parallel_transport = c.transport;
  r.gate_error = c.gate;
  r.cyclic_ok = c.leakage <= tol.leakage;
  r.transport_ok = c.transport <= tol.transport;
  r.gate_ok = c.gate <= tol.gate;
  if (!r.cyclic_ok) r.failures.push_back("cyclic condition: leakage " + std::to_string(c.leakage));
  if (!r.transport_ok) {
    r.failures.push_back("parallel transport: relative violation " + std::to_string(c.transport));
  }
  if (!r.gate_ok) r.failures.push_back("gate mismatch: " + std::to_string(c.gate));
  return r;
}

}  // namespace

HolonomyReport verify_holonomy(const DriveCalibration& cal, const SingleQubitParams& params,
                               const HolonomyTolerances& tol) {
  const Operator h = h_effective(cal, params);
  const auto basis = single_logical_basis(h.space());
  const Checks c = run_checks(h, basis, u1(cal.theta, cal.phi), cal.tau, cal.lambda1, tol.samples);
  return make_report(c, tol);
}

HolonomyReport verify_two_qubit_holonomy(const TwoQubitDrive& drive, double gate_time,
                                         std::size_t fock_cutoff,
                                         const HolonomyTolerances& tol) {
  const CompositeSpace space = two_qubit_space(fock_cutoff);
  const Operator h = h_two_qubit(drive, space);
  const auto s2 = two_qubit_s2_basis(space);
  const std::array<Vector, 4> logical = {s2[0], s2[1], s2[2], s2[3]};
  const double t = gate_time > 0.0 ? gate_time : drive.gate_time();
  const Checks c =
      run_checks(h, logical, u2(drive.vartheta, drive.varphi), t, drive.lambda2, tol.samples);
  return make_report(c, tol);
}

}  // namespace hqc
