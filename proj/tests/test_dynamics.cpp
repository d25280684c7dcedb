#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "hqc/dynamics.hpp"
#include "hqc/errors.hpp"
#include "hqc/holonomy.hpp"

using namespace hqc;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKHz = 2.0 * kPi * 1e3;

struct Hadamard {
  SingleQubitParams params;
  DriveCalibration cal;
};

Hadamard hadamard() {
  const auto p = SingleQubitParams::defaults();
  const auto cal = calibrate(p, kPi / 4, 0.0);
  return {apply_drive(p, cal), cal};
}

// Column-major superoperator of the master equation for a static Hamiltonian,
// exponentiated exactly.
Matrix exact_static_evolution(const LindbladModel& model, const Matrix& rho0, double t) {
  const Matrix h = model.hamiltonian.static_part().matrix();
  const auto n = h.rows();
  const Matrix id = Matrix::Identity(n, n);
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
  };
  // vec(A X B) = (B^T (x) A) vec(X)
  Matrix L = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& ch : model.channels) {
    const Matrix& a = ch.op.matrix();
    const Matrix ada = a.adjoint() * a;
    L += 0.5 * ch.rate *
         (2.0 * kron(a.conjugate(), a) - kron(id, ada) - kron(ada.transpose(), id));
  }
  const Matrix prop = (L * t).exp();
  const Vector v = prop * Eigen::Map<const Vector>(rho0.data(), n * n);
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

LindbladModel static_model(const Operator& h) {
  return LindbladModel{TimeDependentHamiltonian(h), {}};
}

}  // namespace

TEST(Evolve, UnitaryMatchesExponential) {
  const auto [p, cal] = hadamard();
  const auto model = single_qubit_model(p, cal, {}, false);
  const auto basis = single_logical_basis(p.space());
  const Vector psi = (basis[0] + kI * basis[1]) / std::sqrt(2.0);
  const auto traj = evolve(model, DensityMatrix::pure(p.space(), psi), cal.tau, cal.tau / 2000);
  const Vector ref = herm_expm(h_effective(cal, p), cal.tau).apply(psi);
  EXPECT_NEAR(state_fidelity(traj.states.back(), ref), 1.0, 1e-10);
  EXPECT_NEAR(traj.times.back(), cal.tau, 1e-20);
  EXPECT_EQ(traj.times.size(), 2001u);
}

TEST(Evolve, NoisyStaticMatchesLiouvillianExponential) {
  const auto [p, cal] = hadamard();
  // Rates in the tens of MHz so that every channel leaves a visible mark.
  const auto model = single_qubit_model(p, cal, {3e4 * kKHz, 5e4 * kKHz, 2e4 * kKHz}, false);
  const auto basis = single_logical_basis(p.space());
  const Vector psi = (0.6 * basis[0] + 0.8 * kI * basis[1]);
  const auto rho0 = DensityMatrix::pure(p.space(), psi);
  const auto traj = evolve(model, rho0, cal.tau, cal.tau / 4000);
  const Matrix ref = exact_static_evolution(model, rho0.matrix(), cal.tau);
  EXPECT_LT(max_abs(traj.states.back().matrix() - ref), 1e-9);
}

TEST(Evolve, DrivenModelMatchesFineReference) {
  // Same run with half the step: RK4 converges, so the two must agree closely.
  const auto [p, cal] = hadamard();
  const auto model = single_qubit_model(p, cal, NoiseRates::uniform(10 * kKHz), true);
  const auto basis = single_logical_basis(p.space());
  const auto rho0 = DensityMatrix::pure(p.space(), basis[0]);
  const double dt = default_time_step(model, cal.tau);
  const auto a = evolve(model, rho0, cal.tau, dt);
  const auto b = evolve(model, rho0, cal.tau, dt / 2);
  EXPECT_LT(max_abs(a.states.back().matrix() - b.states.back().matrix()), 1e-8);
}

TEST(Evolve, CavityDecayIsExponential) {
  const CompositeSpace sp{2};
  const Operator a = annihilation(1);
  LindbladModel model{TimeDependentHamiltonian(Operator::zero(sp)), {{"kappa", a, 1e6}}};
  EvolveOptions opt;
  opt.observables.push_back({"n", number(1)});
  const auto traj = evolve(model, DensityMatrix::pure(sp, basis_ket(sp, {1})), 2e-6, 1e-9, opt);
  const auto& n = traj.observables.at("n");
  for (std::size_t k = 0; k < traj.times.size(); k += 250)
    EXPECT_NEAR(n[k], std::exp(-1e6 * traj.times[k]), 1e-10);
}

TEST(Evolve, DephasingDecaysCoherence) {
  const CompositeSpace sp{2};
  LindbladModel model{TimeDependentHamiltonian(Operator::zero(sp)), {{"phi", sigma_z(), 1e5}}};
  const Vector plus = (basis_ket(sp, {0}) + basis_ket(sp, {1})) / std::sqrt(2.0);
  const auto traj = evolve(model, DensityMatrix::pure(sp, plus), 5e-6, 5e-9);
  // (r/2) L(sz) damps the coherence at 2 r.
  EXPECT_NEAR(std::abs(traj.states.back().matrix()(0, 1)), 0.5 * std::exp(-2 * 1e5 * 5e-6), 1e-10);
}

TEST(Evolve, TraceAndPositivity) {
  const auto [p, cal] = hadamard();
  const auto model = single_qubit_model(p, cal, NoiseRates::uniform(500 * kKHz), true);
  const auto basis = single_logical_basis(p.space());
  const auto traj = evolve(model, DensityMatrix::pure(p.space(), basis[1]), cal.tau,
                           default_time_step(model, cal.tau), {50, true, {}});
  for (const auto& rho : traj.states) {
    EXPECT_NEAR(rho.trace_real(), 1.0, 1e-8);
    EXPECT_GT(rho.min_eigenvalue(), -1e-6);
    EXPECT_LT(max_abs(rho.matrix() - rho.matrix().adjoint()), 1e-12);
  }
}

TEST(Evolve, StepIsShrunkOntoFinalTime) {
  const CompositeSpace sp{2};
  const auto model = static_model(0.5 * 1e8 * sigma_x());
  const auto traj = evolve(model, DensityMatrix::pure(sp, basis_ket(sp, {0})), 1e-8, 3e-11);
  EXPECT_EQ(traj.times.size(), 335u);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1e-8);
}

TEST(Evolve, StoreEveryKeepsLastStep) {
  const CompositeSpace sp{2};
  const auto model = static_model(1e8 * sigma_x());
  const auto traj =
      evolve(model, DensityMatrix::pure(sp, basis_ket(sp, {0})), 1e-8, 1e-11, {300, true, {}});
  EXPECT_EQ(traj.times.size(), 5u);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1e-8);
}

TEST(Evolve, RejectsCoarseStepForDrivenModel) {
  const auto [p, cal] = hadamard();
  const auto model = single_qubit_model(p, cal, {}, true);
  const auto basis = single_logical_basis(p.space());
  const double period = 2 * kPi / p.delta_diff();
  EXPECT_THROW(evolve(model, DensityMatrix::pure(p.space(), basis[0]), cal.tau, period / 20),
               ParameterError);
}

TEST(Evolve, RejectsBadInputs) {
  const CompositeSpace sp{2};
  auto model = static_model(sigma_x());
  const auto rho = DensityMatrix::pure(sp, basis_ket(sp, {0}));
  EXPECT_THROW(evolve(model, rho, -1.0, 1e-3), ParameterError);
  EXPECT_THROW(evolve(model, rho, 1.0, 0.0), ParameterError);
  model.channels.push_back({"bad", sigma_minus(), -1.0});
  EXPECT_THROW(evolve(model, rho, 1.0, 1e-3), ParameterError);
  const CompositeSpace other{3};
  EXPECT_THROW(evolve(static_model(Operator::zero(other)), rho, 1.0, 1e-3), ParameterError);
}

TEST(Evolve, CsvLayout) {
  const CompositeSpace sp{2};
  EvolveOptions opt;
  opt.observables = {{"sz", sigma_z()}, {"p1", projector(sp, basis_ket(sp, {1}))}};
  const auto traj =
      evolve(static_model(sigma_x()), DensityMatrix::pure(sp, basis_ket(sp, {0})), 1.0, 0.25, opt);
  std::ostringstream out;
  traj.write_csv(out);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find("\r\n")), "t,p1,sz");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 6);
}

TEST(StateFidelity, Bounds) {
  const CompositeSpace sp{2};
  const auto rho = DensityMatrix::pure(sp, basis_ket(sp, {0}));
  EXPECT_DOUBLE_EQ(state_fidelity(rho, basis_ket(sp, {0})), 1.0);
  EXPECT_DOUBLE_EQ(state_fidelity(rho, basis_ket(sp, {1})), 0.0);
  EXPECT_NEAR(state_fidelity(rho, 3.0 * basis_ket(sp, {0})), 1.0, 1e-15);
  EXPECT_THROW(state_fidelity(rho, Vector::Zero(2)), ParameterError);
}

TEST(Models, ChannelLayout) {
  const auto [p, cal] = hadamard();
  const auto m1 = single_qubit_model(p, cal, {1.0, 2.0, 3.0}, true);
  ASSERT_EQ(m1.channels.size(), 4u);
  EXPECT_EQ(m1.channels[0].name, "kappa_tlr1");
  EXPECT_EQ(m1.channels[2].rate, 2.0);
  EXPECT_EQ(m1.channels[3].name, "gamma_phi");
  EXPECT_FALSE(m1.hamiltonian.is_static());
  EXPECT_TRUE(single_qubit_model(p, cal, {}, false).hamiltonian.is_static());

  const std::array<double, 3> modes{2 * kPi * 7e9, 2 * kPi * 7.25e9, 2 * kPi * 7.5e9};
  const auto d = TwoQubitDrive::from_hopping(2 * kPi * 4e6, 2 * kPi * 9e6, 0.0, 0.0, modes);
  const auto m2 = two_qubit_model(d, {1.0, 2.0, 3.0});
  EXPECT_EQ(m2.channels.size(), 8u);
  EXPECT_EQ(m2.space().total_dim(), 64u);
}

TEST(LogicalPropagation, LinearityReproducesDirectEvolution) {
  const auto [p, cal] = hadamard();
  const auto model = single_qubit_model(p, cal, NoiseRates::uniform(200 * kKHz), true);
  const auto basis = single_logical_basis(p.space());
  std::vector<Vector> probes{basis[0], basis[1], single_ancilla(p.space())};
  const double dt = default_time_step(model, cal.tau);
  const LogicalPropagation prop(model, std::span<const Vector>(basis.data(), 2), probes, cal.tau,
                                dt);
  Vector c(2);
  c << 0.6, Complex(0.0, 0.8);
  const Vector psi = c(0) * basis[0] + c(1) * basis[1];
  const auto traj = evolve(model, DensityMatrix::pure(p.space(), psi), cal.tau, dt);
  const Matrix& full = traj.states.back().matrix();
  const Matrix blk = prop.probe_block(prop.times().size() - 1, c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(std::abs(blk(i, j) - probes[i].dot(full * probes[j])), 0.0, 1e-12);
  Vector target(2);
  target << 1.0, 0.0;
  EXPECT_NEAR(prop.fidelity(prop.times().size() - 1, c, target),
              state_fidelity(traj.states.back(), basis[0]), 1e-12);
}

TEST(LogicalPropagation, ThreadsAreDeterministic) {
  const auto [p, cal] = hadamard();
  const auto model = single_qubit_model(p, cal, NoiseRates::uniform(10 * kKHz), true);
  const auto basis = single_logical_basis(p.space());
  const std::span<const Vector> lb(basis.data(), 2);
  const double dt = default_time_step(model, cal.tau);
  const LogicalPropagation a(model, lb, lb, cal.tau, dt, 1);
  const LogicalPropagation b(model, lb, lb, cal.tau, dt, 3);
  Vector c(2);
  c << 0.8, 0.6;
  EXPECT_EQ(max_abs(a.probe_block(a.times().size() - 1, c) - b.probe_block(b.times().size() - 1, c)),
            0.0);
}

TEST(ProcessFidelity, QuadratureOracle) {
  // No dynamics, NOT target: the average of |<psi|X|psi>|^2 = sin^2(2t) is 1/2.
  const CompositeSpace sp{2};
  const auto model = static_model(Operator::zero(sp));
  const std::array<Vector, 2> basis{basis_ket(sp, {0}), basis_ket(sp, {1})};
  const auto curve = process_fidelity_1q(u1(kPi / 2, 0.0), model, basis, 1e-8, {16, 1e-10, 1});
  EXPECT_NEAR(curve.final_value, 0.5, 1e-12);
  const auto same = process_fidelity_1q(Matrix::Identity(2, 2), model, basis, 1e-8, {8, 1e-10, 1});
  EXPECT_NEAR(same.final_value, 1.0, 1e-12);
}

TEST(ProcessFidelity, ZeroNoiseEffectiveHamiltonianIsExact) {
  const auto [p, cal] = hadamard();
  const auto model = single_qubit_model(p, cal, {}, false);
  const auto basis = single_logical_basis(p.space());
  const auto curve = process_fidelity_1q(u1(kPi / 4, 0.0), model, basis, cal.tau);
  EXPECT_GT(curve.final_value, 1.0 - 1e-9);
  EXPECT_EQ(curve.times.size(), curve.values.size());
  EXPECT_NEAR(curve.peak_time, cal.tau, cal.tau * 1e-3);
}

TEST(ProcessFidelity, NoiseLowersFidelityMonotonically) {
  const auto [p, cal] = hadamard();
  const auto basis = single_logical_basis(p.space());
  double last = 1.1;
  for (double r : {0.0, 10.0, 40.0, 160.0}) {
    const auto model = single_qubit_model(p, cal, NoiseRates::uniform(r * kKHz), false);
    const double f = process_fidelity_1q(u1(kPi / 4, 0.0), model, basis, cal.tau).final_value;
    EXPECT_LT(f, last);
    last = f;
  }
}

TEST(ProcessFidelity, RejectsBadArguments) {
  const CompositeSpace sp{2};
  const auto model = static_model(Operator::zero(sp));
  const std::array<Vector, 2> basis{basis_ket(sp, {0}), basis_ket(sp, {1})};
  EXPECT_THROW(process_fidelity_1q(u1(1.0, 0.0), model, basis, 1e-8, {4, 1e-10, 1}),
               ParameterError);
  Matrix bad = Matrix::Ones(2, 2);
  EXPECT_THROW(process_fidelity_1q(bad, model, basis, 1e-8, {8, 1e-10, 1}), ParameterError);
  EXPECT_THROW(process_fidelity_1q(u1(1.0, 0.0), model, basis, 0.0), ParameterError);
}

TEST(ProcessFidelity, TwoQubitZeroNoise) {
  const std::array<double, 3> modes{2 * kPi * 7e9, 2 * kPi * 7.25e9, 2 * kPi * 7.5e9};
  const auto d = TwoQubitDrive::from_hopping(2 * kPi * 4.14e6, 2 * kPi * 10e6, 0.3, 0.1, modes);
  const auto model = two_qubit_model(d, {});
  const auto s2 = two_qubit_s2_basis(model.space());
  const auto curve = process_fidelity_2q(u2(d.vartheta, d.varphi), model,
                                         std::span<const Vector>(s2.data(), 4), d.gate_time());
  EXPECT_GT(curve.final_value, 1.0 - 1e-9);
}
