#include "hqc/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "hqc/bessel.hpp"
#include "hqc/errors.hpp"

namespace hqc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResonanceTol = kTwoPi * 1e3;  // 1 kHz

Complex i_pow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

struct SingleOps {
  Operator a1, a2, sm, sz;
};

SingleOps single_ops(const CompositeSpace& space) {
  const std::size_t cutoff = space.dim(single_layout::kTlr1) - 1;
  const std::size_t cutoff2 = space.dim(single_layout::kTlr2) - 1;
  return {embed(annihilation(cutoff), space, single_layout::kTlr1),
          embed(annihilation(cutoff2), space, single_layout::kTlr2),
          embed(sigma_minus(), space, single_layout::kQubit),
          embed(sigma_z(), space, single_layout::kQubit)};
}

}  // namespace

TimeDependentHamiltonian::TimeDependentHamiltonian(Operator static_part)
    : static_part_(std::move(static_part)) {}

void TimeDependentHamiltonian::add_harmonic(Operator op, double frequency) {
  if (op.space() != static_part_.space()) {
    throw ParameterError("TimeDependentHamiltonian: harmonic term on a different space");
  }
  harmonics_.push_back({std::move(op), frequency});
}

Operator TimeDependentHamiltonian::at(double t) const {
  Matrix m = static_part_.matrix();
  for (const auto& term : harmonics_) {
    const Complex phase = std::exp(kI * (term.frequency * t));
    m += phase * term.op.matrix();
    m += std::conj(phase) * term.op.matrix().adjoint();
  }
  return Operator(static_part_.space(), std::move(m));
}

double TimeDependentHamiltonian::max_frequency() const {
  double w = 0.0;
  for (const auto& term : harmonics_) w = std::max(w, std::abs(term.frequency));
  return w;
}

double SingleQubitParams::delta_diff() const { return std::abs(delta(1) - delta(0)); }

double SingleQubitParams::alpha(std::size_t j) const {
  return nu.at(j) == 0.0 ? 0.0 : eps.at(j) / nu.at(j);
}

bool SingleQubitParams::is_resonant(double tol) const {
  return std::abs(nu[0] - delta(0)) <= tol && std::abs(nu[1] - delta(1)) <= tol;
}

CompositeSpace SingleQubitParams::space() const {
  return CompositeSpace{fock_cutoff + 1, 2, fock_cutoff + 1};
}

std::vector<std::string> SingleQubitParams::warnings() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < 2; ++j) {
    if (delta(j) < 10.0 * g) {
      out.push_back("detuning Delta_" + std::to_string(j + 1) +
                    " is below 10 g; the dispersive regime is marginal");
    }
  }
  return out;
}

void SingleQubitParams::validate() const {
  if (fock_cutoff < 1 || fock_cutoff > 3) {
    throw ParameterError("fock_cutoff must lie in [1, 3]");
  }
  for (std::size_t j = 0; j < 2; ++j) {
    if (!(delta(j) > 0.0)) {
      throw ParameterError("detuning Delta_" + std::to_string(j + 1) + " must be positive");
    }
  }
  if (g < 0.0) throw ParameterError("coupling g must be non-negative");
  if (delta_diff() == 0.0) throw ParameterError("the two detunings must differ");
}

SingleQubitParams SingleQubitParams::defaults() {
  SingleQubitParams p;
  p.omega_q = kTwoPi * 6.0e9;
  p.omega_c = {kTwoPi * 6.5e9, kTwoPi * 6.75e9};
  p.g = kTwoPi * 25e6;
  return p;
}

DriveCalibration calibrate(const SingleQubitParams& params, double theta, double phi) {
  params.validate();
  for (std::size_t j = 0; j < 2; ++j) {
    if (params.nu[j] != 0.0 && std::abs(params.nu[j] - params.delta(j)) > kResonanceTol) {
      throw ParameterError("calibrate: drive tone " + std::to_string(j + 1) +
                           " is not resonant with its detuning");
    }
  }
  DriveCalibration cal;
  cal.alpha2 = solve_equal_bessel();
  cal.J = bessel_j(0, cal.alpha2);
  cal.alpha1 = solve_alpha_for_theta(theta);
  cal.J0_a1 = bessel_j(0, cal.alpha1);
  cal.J1_a1 = bessel_j(1, cal.alpha1);
  cal.g_eff = params.g * cal.J;
  cal.lambda1 = cal.g_eff * std::hypot(cal.J0_a1, cal.J1_a1);
  cal.theta = theta;
  cal.phi = phi;
  if (!(cal.lambda1 > 0.0)) throw ParameterError("calibrate: coupling must be positive");
  cal.tau = std::numbers::pi / cal.lambda1;
  return cal;
}

SingleQubitParams apply_drive(SingleQubitParams params, const DriveCalibration& cal) {
  params.nu = {params.delta(0), params.delta(1)};
  params.eps = {cal.alpha1 * params.nu[0], cal.alpha2 * params.nu[1]};
  params.phi_drive = {0.0, cal.phi - std::numbers::pi};
  return params;
}

TimeDependentHamiltonian lab_hamiltonian(const SingleQubitParams& params, bool counter_rotating) {
  const CompositeSpace space = params.space();
  const SingleOps ops = single_ops(space);
  const Operator sp = ops.sm.dagger();

  Operator h = 0.5 * params.omega_q * ops.sz;
  h += params.omega_c[0] * (ops.a1.dagger() * ops.a1);
  h += params.omega_c[1] * (ops.a2.dagger() * ops.a2);
  for (const Operator* a : {&ops.a1, &ops.a2}) {
    h += params.g * (*a * sp + a->dagger() * ops.sm);
    if (counter_rotating) h += params.g * (*a * ops.sm + a->dagger() * sp);
  }

  TimeDependentHamiltonian out(std::move(h));
  // eps sin(nu t - phi) sz/2 = A e^{i nu t} + h.c. with A = eps e^{-i phi} sz / (4i).
  for (std::size_t j = 0; j < 2; ++j) {
    if (params.eps[j] == 0.0) continue;
    const Complex amp = params.eps[j] * std::exp(-kI * params.phi_drive[j]) / (4.0 * kI);
    out.add_harmonic(amp * ops.sz, params.nu[j]);
  }
  return out;
}

Operator h_lab(const SingleQubitParams& params, double t, bool counter_rotating) {
  return lab_hamiltonian(params, counter_rotating).at(t);
}

TimeDependentHamiltonian rotating_hamiltonian(const SingleQubitParams& params, int m_max) {
  if (m_max < 3) throw ParameterError("rotating_hamiltonian: m_max must be at least 3");
  const CompositeSpace space = params.space();
  const SingleOps ops = single_ops(space);
  const std::array<Operator, 2> raising = {ops.a1.dagger() * ops.sm, ops.a2.dagger() * ops.sm};
  const double a1 = params.alpha(0);
  const double a2 = params.alpha(1);
  const Complex gauge = -kI * std::exp(-kI * params.phi_drive[0]);

  // Merge terms sharing a frequency so that resonant combinations add up.
  std::map<long long, std::pair<double, Matrix>> by_freq;
  const double quantum = 1e-3;  // rad/s bins
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  for (std::size_t j = 0; j < 2; ++j) {
    for (int m1 = -m_max; m1 <= m_max; ++m1) {
      const Complex c1 = i_pow(m1) * bessel_j_signed(m1, a1) *
                         std::exp(-kI * (m1 * params.phi_drive[0]));
      for (int m2 = -m_max; m2 <= m_max; ++m2) {
        const Complex c2 = i_pow(m2) * bessel_j_signed(m2, a2) *
                           std::exp(-kI * (m2 * params.phi_drive[1]));
        const Complex coeff = gauge * params.g * c1 * c2;
        if (coeff == Complex(0.0)) continue;
        const double w = params.delta(j) + m1 * params.nu[0] + m2 * params.nu[1];
        const auto key = static_cast<long long>(std::llround(w / quantum));
        auto [it, inserted] = by_freq.try_emplace(key, w, Matrix::Zero(n, n));
        it->second.second += coeff * raising[j].matrix();
      }
    }
  }
  TimeDependentHamiltonian out(Operator::zero(space));
  for (auto& [key, entry] : by_freq) {
    out.add_harmonic(Operator(space, std::move(entry.second)), entry.first);
  }
  return out;
}

Operator h_rotating(const SingleQubitParams& params, double t, int m_max) {
  return rotating_hamiltonian(params, m_max).at(t);
}

Operator h_effective(const DriveCalibration& cal, const SingleQubitParams& params) {
  const CompositeSpace space = params.space();
  const SingleOps ops = single_ops(space);
  const Operator x = cal.g_eff * (cal.J1_a1 * (ops.a1.dagger() * ops.sm) -
                                  cal.J0_a1 * std::exp(kI * cal.phi) * (ops.a2.dagger() * ops.sm));
  return x + x.dagger();
}

TimeDependentHamiltonian correction_hamiltonian(const DriveCalibration& cal,
                                                const SingleQubitParams& params) {
  const CompositeSpace space = params.space();
  const SingleOps ops = single_ops(space);
  const double delta = params.delta_diff();
  TimeDependentHamiltonian out(Operator::zero(space));
  out.add_harmonic(cal.g_eff * cal.J1_a1 * (ops.a2.dagger() * ops.sm), delta);
  out.add_harmonic(cal.g_eff * cal.J0_a1 * std::exp(kI * cal.phi) * (ops.a1.dagger() * ops.sm),
                   -delta);
  return out;
}

Operator h_correction(const DriveCalibration& cal, const SingleQubitParams& params, double t) {
  return correction_hamiltonian(cal, params).at(t);
}

std::array<Vector, 2> single_logical_basis(const CompositeSpace& space) {
  return {basis_ket(space, {1, 0, 0}), basis_ket(space, {0, 0, 1})};
}

Vector single_ancilla(const CompositeSpace& space) { return basis_ket(space, {0, 1, 0}); }

Operator single_excitation_number(const CompositeSpace& space) {
  const SingleOps ops = single_ops(space);
  return ops.a1.dagger() * ops.a1 + ops.a2.dagger() * ops.a2 + ops.sm.dagger() * ops.sm;
}

TwoQubitDrive TwoQubitDrive::from_hopping(double eta1, double eta2, double phi1, double phi2,
                                          const std::array<double, 3>& omega_modes) {
  if (eta1 < 0.0 || eta2 < 0.0) throw ParameterError("hopping strengths must be non-negative");
  TwoQubitDrive d;
  d.eta = {eta1, eta2};
  d.varphi_tones = {phi1, phi2};
  d.omega_modes = omega_modes;
  d.omega_tones = {std::abs(omega_modes[0] - omega_modes[1]),
                   std::abs(omega_modes[0] - omega_modes[2])};
  d.lambda2 = std::hypot(eta1, eta2);
  d.vartheta = 2.0 * std::atan2(eta1, eta2);
  d.varphi = phi1 - phi2 - std::numbers::pi;
  return d;
}

TwoQubitDrive TwoQubitDrive::for_gate(double vartheta, double varphi, double lambda2,
                                      const std::array<double, 3>& omega_modes) {
  if (!(lambda2 > 0.0)) throw ParameterError("lambda2 must be positive");
  if (!(vartheta >= 0.0 && vartheta <= std::numbers::pi)) {
    throw ParameterError("vartheta must lie in [0, pi]");
  }
  const double eta1 = lambda2 * std::sin(0.5 * vartheta);
  const double eta2 = lambda2 * std::cos(0.5 * vartheta);
  return from_hopping(eta1, eta2, varphi, -std::numbers::pi, omega_modes);
}

bool TwoQubitDrive::is_resonant(double tol) const {
  return std::abs(omega_tones[0] - std::abs(omega_modes[0] - omega_modes[1])) <= tol &&
         std::abs(omega_tones[1] - std::abs(omega_modes[0] - omega_modes[2])) <= tol;
}

double TwoQubitDrive::gate_time() const {
  if (!(lambda2 > 0.0)) throw ParameterError("gate_time: lambda2 must be positive");
  return std::numbers::pi / lambda2;
}

CompositeSpace two_qubit_space(std::size_t fock_cutoff) {
  if (fock_cutoff < 1 || fock_cutoff > 3) throw ParameterError("fock_cutoff must lie in [1, 3]");
  const std::size_t d = fock_cutoff + 1;
  return CompositeSpace{d, 2, d, d, 2, d};
}

namespace {

Operator tlr_annihilation(const CompositeSpace& space, std::size_t position) {
  return embed(annihilation(space.dim(position) - 1), space, position);
}

void require_two_qubit_space(const CompositeSpace& space) {
  if (space.num_subsystems() != 6 || space.dim(two_layout::kQubit1) != 2 ||
      space.dim(two_layout::kQubit2) != 2) {
    throw ParameterError("expected the six-subsystem two-qubit space");
  }
}

}  // namespace

Operator h_two_qubit(const TwoQubitDrive& drive, const CompositeSpace& space) {
  require_two_qubit_space(space);
  if (!drive.is_resonant(kResonanceTol)) {
    throw ParameterError("h_two_qubit: modulation tones are not resonant with the TLR pairs");
  }
  const Operator a2 = tlr_annihilation(space, two_layout::kTlr2);
  const Operator a3 = tlr_annihilation(space, two_layout::kTlr3);
  const Operator a4 = tlr_annihilation(space, two_layout::kTlr4);
  const Operator x = drive.eta[0] * std::exp(kI * drive.varphi_tones[0]) * (a2.dagger() * a3) +
                     drive.eta[1] * std::exp(kI * drive.varphi_tones[1]) * (a2.dagger() * a4);
  return x + x.dagger();
}

std::array<Vector, 6> two_qubit_s2_basis(const CompositeSpace& space) {
  require_two_qubit_space(space);
  return {basis_ket(space, {1, 0, 0, 1, 0, 0}), basis_ket(space, {1, 0, 0, 0, 0, 1}),
          basis_ket(space, {0, 0, 1, 1, 0, 0}), basis_ket(space, {0, 0, 1, 0, 0, 1}),
          basis_ket(space, {1, 0, 1, 0, 0, 0}), basis_ket(space, {0, 0, 0, 1, 0, 1})};
}

Operator two_qubit_photon_number(const CompositeSpace& space) {
  require_two_qubit_space(space);
  Operator n = Operator::zero(space);
  for (std::size_t pos : {two_layout::kTlr1, two_layout::kTlr2, two_layout::kTlr3,
                          two_layout::kTlr4}) {
    const Operator a = tlr_annihilation(space, pos);
    n += a.dagger() * a;
  }
  return n;
}

CommutingDecomposition decompose_commuting(const Operator& h_c, const TwoQubitDrive& drive) {
  const CompositeSpace& space = h_c.space();
  const auto s2 = two_qubit_s2_basis(space);
  auto block_projector = [&](std::initializer_list<std::size_t> members) {
    Operator p = Operator::zero(space);
    for (auto k : members) p += projector(space, s2[k]);
    return p;
  };
  const Operator p_b = block_projector({0, 1, 4});
  const Operator p_a = block_projector({2, 3, 5});
  const Operator p_all = p_a + p_b;
  if (!(drive.lambda2 > 0.0)) throw ParameterError("decompose_commuting: lambda2 must be positive");

  CommutingDecomposition out;
  out.lambda2 = drive.lambda2;
  out.h_a = (1.0 / drive.lambda2) * (p_a * h_c * p_a);
  out.h_b = (1.0 / drive.lambda2) * (p_b * h_c * p_b);
  out.residual = (p_all * h_c * p_all - drive.lambda2 * (out.h_a + out.h_b)).max_norm();
  return out;
}

}  // namespace hqc
