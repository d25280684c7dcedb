#include "hqc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

#include <Eigen/Sparse>

#include "hqc/csv.hpp"
#include "hqc/errors.hpp"

namespace hqc {

namespace {

using Sparse = Eigen::SparseMatrix<Complex>;

using Index = Eigen::Index;
using IndexList = std::vector<Index>;

Sparse to_sparse(const Matrix& m) {
  // Entries below 1e-300 are structural zeros of the Kronecker products.
  return m.sparseView(Complex(1.0), 1e-300);
}

// Smallest set of basis states containing `seed` that H, every jump operator
// and every A^dag A map into itself. A density matrix supported there stays
// supported there, so the master equation can be integrated on that block
// alone without approximation.
IndexList support_closure(const LindbladModel& model, const IndexList& seed) {
  std::vector<const Matrix*> gens{&model.hamiltonian.static_part().matrix()};
  std::vector<Matrix> extra;
  extra.reserve(2 * model.hamiltonian.harmonics().size() + 2 * model.channels.size());
  for (const auto& h : model.hamiltonian.harmonics()) {
    extra.push_back(h.op.matrix());
    extra.push_back(h.op.matrix().adjoint());
  }
  for (const auto& ch : model.channels) {
    if (ch.rate == 0.0) continue;
    extra.push_back(ch.op.matrix());
    extra.push_back(ch.op.matrix().adjoint() * ch.op.matrix());
  }
  for (const auto& m : extra) gens.push_back(&m);

  const Index n = static_cast<Index>(model.space().total_dim());
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  IndexList queue;
  for (Index i : seed)
    if (!in[static_cast<std::size_t>(i)]) {
      in[static_cast<std::size_t>(i)] = 1;
      queue.push_back(i);
    }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Index j = queue[q];
    for (const Matrix* g : gens)
      for (Index i = 0; i < n; ++i)
        if (!in[static_cast<std::size_t>(i)] && (*g)(i, j) != Complex(0.0)) {
          in[static_cast<std::size_t>(i)] = 1;
          queue.push_back(i);
        }
  }
  IndexList keep;
  for (Index i = 0; i < n; ++i)
    if (in[static_cast<std::size_t>(i)]) keep.push_back(i);
  return keep;
}

Matrix block(const Matrix& m, const IndexList& keep) { return m(keep, keep); }

// Right-hand side of the master equation, precompiled into sparse factors.
//   drho/dt = -i (H_nh rho - rho H_nh^dag) + sum_k L_k rho L_k^dag
// with H_nh = H(t) - (i/2) sum_k L_k^dag L_k.
class CompiledLindblad {
 public:
  CompiledLindblad(const LindbladModel& model, const IndexList& keep) {
    const auto n = static_cast<Index>(keep.size());
    Matrix h_nh = block(model.hamiltonian.static_part().matrix(), keep);
    for (const auto& ch : model.channels) {
      if (ch.rate == 0.0) continue;
      const Matrix a = block(ch.op.matrix(), keep);
      h_nh -= Complex(0.0, 0.5 * ch.rate) * (a.adjoint() * a);
      Matrix l = std::sqrt(ch.rate) * a;
      jumps_.push_back(to_sparse(l));
      jumps_dag_.push_back(to_sparse(l.adjoint()));
    }
    h_nh_ = to_sparse(h_nh);
    h_nh_dag_ = to_sparse(h_nh.adjoint());
    for (const auto& term : model.hamiltonian.harmonics()) {
      const Matrix a = block(term.op.matrix(), keep);
      harm_.push_back(to_sparse(a));
      harm_dag_.push_back(to_sparse(a.adjoint()));
      freq_.push_back(term.frequency);
    }
    left_.resize(n, n);
    right_.resizeLike(left_);
  }

  void operator()(double t, const Matrix& rho, Matrix& out) {
    left_.noalias() = h_nh_ * rho;
    right_.noalias() = rho * h_nh_dag_;
    for (std::size_t k = 0; k < harm_.size(); ++k) {
      const Complex c = std::polar(1.0, freq_[k] * t);
      const Complex cc = std::conj(c);
      // H_k(t) = c A + c* A^dag is Hermitian, so rho H_k^dag = rho H_k.
      left_.noalias() += c * (harm_[k] * rho);
      left_.noalias() += cc * (harm_dag_[k] * rho);
      right_.noalias() += c * (rho * harm_[k]);
      right_.noalias() += cc * (rho * harm_dag_[k]);
    }
    out.noalias() = Complex(0.0, -1.0) * (left_ - right_);
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
      tmp_.noalias() = rho * jumps_dag_[k];
      out.noalias() += jumps_[k] * tmp_;
    }
  }

 private:
  Sparse h_nh_, h_nh_dag_;
  std::vector<Sparse> harm_, harm_dag_, jumps_, jumps_dag_;
  std::vector<double> freq_;
  Matrix left_, right_, tmp_;
};

struct Stepper {
  CompiledLindblad rhs;
  Matrix k1, k2, k3, k4, probe;

  Stepper(const LindbladModel& model, const IndexList& keep) : rhs(model, keep) {}

  void step(double t, double dt, Matrix& rho) {
    rhs(t, rho, k1);
    probe = rho + (0.5 * dt) * k1;
    rhs(t + 0.5 * dt, probe, k2);
    probe = rho + (0.5 * dt) * k2;
    rhs(t + 0.5 * dt, probe, k3);
    probe = rho + dt * k3;
    rhs(t + dt, probe, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

struct StepPlan {
  std::size_t steps = 0;
  double dt = 0.0;
};

StepPlan plan_steps(const LindbladModel& model, double t_final, double dt) {
  if (!(t_final > 0.0) || !std::isfinite(t_final))
    throw ParameterError("t_final must be positive and finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive and finite");
  const double w = model.hamiltonian.max_frequency();
  if (w > 0.0) {
    const double limit = (2.0 * std::numbers::pi / w) / 50.0;
    if (dt > limit * (1.0 + 1e-12)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "dt = %.4g s exceeds 1/50 of the fastest period (%.4g s)",
                    dt, limit);
      throw ParameterError(buf);
    }
  }
  StepPlan plan;
  plan.steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  plan.steps = std::max<std::size_t>(plan.steps, 1);
  plan.dt = t_final / static_cast<double>(plan.steps);
  return plan;
}

}  // namespace

void LindbladModel::validate() const {
  for (const auto& ch : channels) {
    if (!(ch.rate >= 0.0) || !std::isfinite(ch.rate))
      throw ParameterError("collapse rate '" + ch.name + "' must be finite and >= 0");
    if (!(ch.op.space() == space()))
      throw ParameterError("collapse operator '" + ch.name + "' lives on another space");
  }
  for (const auto& h : hamiltonian.harmonics())
    if (!(h.op.space() == space())) throw ParameterError("harmonic term on another space");
}

void Trajectory::write_csv(std::ostream& out) const {
  csv::Writer w(out);
  std::vector<std::string> names{"t"};
  for (const auto& [name, series] : observables) names.push_back(name);
  w.header(names);
  std::vector<double> row(names.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    row[0] = times[k];
    std::size_t c = 1;
    for (const auto& [name, series] : observables) row[c++] = series.at(k);
    w.row(row);
  }
}

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                  double dt, const EvolveOptions& options) {
  model.validate();
  if (!(rho0.space() == model.space()))
    throw ParameterError("initial state and model live on different spaces");
  for (const auto& [name, op] : options.observables)
    if (!(op.space() == model.space())) throw ParameterError("observable '" + name + "' mismatched");
  const StepPlan plan = plan_steps(model, t_final, dt);
  const std::size_t every = std::max<std::size_t>(options.store_every, 1);

  const Matrix& full0 = rho0.matrix();
  IndexList seed;
  for (Index i = 0; i < full0.rows(); ++i)
    if (full0.row(i).cwiseAbs().maxCoeff() > 0.0 || full0.col(i).cwiseAbs().maxCoeff() > 0.0)
      seed.push_back(i);
  const IndexList keep = support_closure(model, seed);
  std::vector<Matrix> obs;
  for (const auto& [name, op] : options.observables) obs.push_back(block(op.matrix(), keep));

  Trajectory traj;
  Matrix rho = block(full0, keep);
  const double tr0 = rho.trace().real();
  auto record = [&](double t) {
    traj.times.push_back(t);
    for (std::size_t k = 0; k < obs.size(); ++k)
      traj.observables[options.observables[k].first].push_back((obs[k] * rho).trace().real());
    if (options.keep_states) {
      Matrix full = Matrix::Zero(full0.rows(), full0.cols());
      full(keep, keep) = rho;
      traj.states.push_back(DensityMatrix::unchecked(model.space(), std::move(full)));
    }
  };
  record(0.0);

  Stepper stepper(model, keep);
  for (std::size_t s = 0; s < plan.steps; ++s) {
    const double t = static_cast<double>(s) * plan.dt;
    stepper.step(t, plan.dt, rho);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double drift = std::abs(rho.trace().real() - tr0);
    if (!(drift <= 1e-6)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "trace drift %.3g at t = %.4g s", drift, t + plan.dt);
      throw NumericalError(buf);
    }
    if ((s + 1) % every == 0 || s + 1 == plan.steps) record(static_cast<double>(s + 1) * plan.dt);
  }
  return traj;
}

double state_fidelity(const DensityMatrix& rho, const Vector& psi) {
  if (psi.size() != static_cast<Eigen::Index>(rho.dim()))
    throw ParameterError("state_fidelity: dimension mismatch");
  const double nrm = psi.squaredNorm();
  if (!(nrm > 0.0)) throw ParameterError("state_fidelity: zero target state");
  const double f = (psi.adjoint() * rho.matrix() * psi)(0, 0).real() / nrm;
  return std::clamp(f, 0.0, 1.0);
}

LindbladModel single_qubit_model(const SingleQubitParams& params, const DriveCalibration& cal,
                                 const NoiseRates& rates, bool with_correction) {
  using namespace single_layout;
  const CompositeSpace space = params.space();
  const std::size_t cut = params.fock_cutoff;
  TimeDependentHamiltonian h(h_effective(cal, params));
  if (with_correction) {
    const auto corr = correction_hamiltonian(cal, params);
    for (const auto& term : corr.harmonics()) h.add_harmonic(term.op, term.frequency);
  }
  LindbladModel model{std::move(h), {}};
  model.channels.push_back({"kappa_tlr1", embed(annihilation(cut), space, kTlr1), rates.kappa});
  model.channels.push_back({"kappa_tlr2", embed(annihilation(cut), space, kTlr2), rates.kappa});
  model.channels.push_back({"gamma", embed(sigma_minus(), space, kQubit), rates.gamma});
  model.channels.push_back({"gamma_phi", embed(sigma_z(), space, kQubit), rates.gamma_phi});
  model.validate();
  return model;
}

LindbladModel two_qubit_model(const TwoQubitDrive& drive, const NoiseRates& rates,
                              std::size_t fock_cutoff) {
  using namespace two_layout;
  const CompositeSpace space = two_qubit_space(fock_cutoff);
  LindbladModel model{TimeDependentHamiltonian(h_two_qubit(drive, space)), {}};
  const std::pair<const char*, std::size_t> tlrs[] = {
      {"kappa_tlr1", kTlr1}, {"kappa_tlr2", kTlr2}, {"kappa_tlr3", kTlr3}, {"kappa_tlr4", kTlr4}};
  for (const auto& [name, pos] : tlrs)
    model.channels.push_back({name, embed(annihilation(fock_cutoff), space, pos), rates.kappa});
  model.channels.push_back({"gamma_q1", embed(sigma_minus(), space, kQubit1), rates.gamma});
  model.channels.push_back({"gamma_q2", embed(sigma_minus(), space, kQubit2), rates.gamma});
  model.channels.push_back({"gamma_phi_q1", embed(sigma_z(), space, kQubit1), rates.gamma_phi});
  model.channels.push_back({"gamma_phi_q2", embed(sigma_z(), space, kQubit2), rates.gamma_phi});
  model.validate();
  return model;
}

double default_time_step(const LindbladModel& model, double gate_time) {
  const double w = model.hamiltonian.max_frequency();
  if (w > 0.0) return (2.0 * std::numbers::pi / w) / 100.0;
  if (!(gate_time > 0.0)) throw ParameterError("gate_time must be positive");
  return gate_time / 2000.0;
}

LogicalPropagation::LogicalPropagation(const LindbladModel& model, std::span<const Vector> logical,
                                       std::span<const Vector> probes, double t_final, double dt,
                                       std::size_t threads) {
  model.validate();
  n_logical_ = logical.size();
  n_probe_ = probes.size();
  if (n_logical_ == 0 || n_probe_ < n_logical_)
    throw ParameterError("probes must contain at least the logical basis");
  const auto n = static_cast<Eigen::Index>(model.space().total_dim());
  for (std::size_t i = 0; i < n_logical_; ++i)
    if (logical[i].size() != n || (probes[i] - logical[i]).norm() > 1e-12)
      throw ParameterError("probes must start with the logical basis vectors");
  for (const auto& p : probes)
    if (p.size() != n) throw ParameterError("probe dimension mismatch");

  const StepPlan plan = plan_steps(model, t_final, dt);
  dt_used_ = plan.dt;
  steps_ = plan.steps;
  times_.resize(plan.steps + 1);
  for (std::size_t s = 0; s <= plan.steps; ++s) times_[s] = static_cast<double>(s) * plan.dt;

  IndexList seed;
  for (const auto& v : logical)
    for (Index i = 0; i < n; ++i)
      if (v(i) != Complex(0.0)) seed.push_back(i);
  const IndexList keep = support_closure(model, seed);
  // Rows outside the invariant block never see any population.
  Matrix pm(static_cast<Index>(keep.size()), static_cast<Index>(n_probe_));
  for (std::size_t k = 0; k < n_probe_; ++k) pm.col(static_cast<Index>(k)) = probes[k](keep);
  const Matrix pm_dag = pm.adjoint();
  std::vector<Vector> logical_kept;
  for (const auto& v : logical) logical_kept.push_back(v(keep));

  const std::size_t pairs = n_logical_ * n_logical_;
  blocks_.assign(plan.steps + 1, std::vector<Matrix>(pairs));

  // Each |i><j| evolves independently; the slot written is fixed by the pair
  // index, so the result does not depend on the thread count.
  auto run_pair = [&](std::size_t pair) {
    const std::size_t i = pair / n_logical_;
    const std::size_t j = pair % n_logical_;
    Matrix x = logical_kept[i] * logical_kept[j].adjoint();
    const Complex expect = logical[j].dot(logical[i]);
    Stepper stepper(model, keep);
    blocks_[0][pair] = pm_dag * x * pm;
    for (std::size_t s = 0; s < plan.steps; ++s) {
      stepper.step(static_cast<double>(s) * plan.dt, plan.dt, x);
      blocks_[s + 1][pair] = pm_dag * x * pm;
    }
    const double drift = std::abs(x.trace() - expect);
    if (!(drift <= 1e-6)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "trace drift %.3g in propagated |%zu><%zu|", drift, i, j);
      throw NumericalError(buf);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, pairs);
  if (workers == 1) {
    for (std::size_t p = 0; p < pairs; ++p) run_pair(p);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t p = w; p < pairs; p += workers) run_pair(p);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Matrix LogicalPropagation::probe_block(std::size_t time_index, const Vector& c) const {
  if (static_cast<std::size_t>(c.size()) != n_logical_)
    throw ParameterError("logical coefficient count mismatch");
  const auto& slot = blocks_.at(time_index);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n_probe_), static_cast<Eigen::Index>(n_probe_));
  for (std::size_t i = 0; i < n_logical_; ++i)
    for (std::size_t j = 0; j < n_logical_; ++j) {
      const Complex w = c(static_cast<Eigen::Index>(i)) * std::conj(c(static_cast<Eigen::Index>(j)));
      if (w != Complex(0.0)) out += w * slot[i * n_logical_ + j];
    }
  return out;
}

double LogicalPropagation::fidelity(std::size_t time_index, const Vector& c,
                                    const Vector& f) const {
  if (static_cast<std::size_t>(f.size()) != n_logical_)
    throw ParameterError("target coefficient count mismatch");
  const auto& slot = blocks_.at(time_index);
  const auto nl = static_cast<Eigen::Index>(n_logical_);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < n_logical_; ++i)
    for (std::size_t j = 0; j < n_logical_; ++j) {
      const Complex w = c(static_cast<Eigen::Index>(i)) * std::conj(c(static_cast<Eigen::Index>(j)));
      if (w == Complex(0.0)) continue;
      const auto logical = slot[i * n_logical_ + j].topLeftCorner(nl, nl);
      acc += w * (f.adjoint() * logical * f)(0, 0);
    }
  return std::clamp(acc.real() / f.squaredNorm(), 0.0, 1.0);
}

namespace {

FidelityCurve average_curve(const LogicalPropagation& prop, std::span<const Vector> initial,
                            const Matrix& gate_target) {
  FidelityCurve curve;
  curve.times = prop.times();
  curve.dt_used = prop.dt_used();
  curve.steps = prop.steps();
  std::vector<Vector> targets;
  targets.reserve(initial.size());
  for (const auto& c : initial) targets.push_back(gate_target * c);
  curve.values.resize(curve.times.size());
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    double sum = 0.0;
    for (std::size_t q = 0; q < initial.size(); ++q) sum += prop.fidelity(k, initial[q], targets[q]);
    curve.values[k] = sum / static_cast<double>(initial.size());
  }
  curve.final_value = curve.values.back();
  const auto peak = std::max_element(curve.values.begin(), curve.values.end());
  curve.peak_value = *peak;
  curve.peak_time = curve.times[static_cast<std::size_t>(peak - curve.values.begin())];
  return curve;
}

std::vector<double> nodes_on_circle(std::size_t n) {
  std::vector<double> th(n);
  for (std::size_t k = 0; k < n; ++k)
    th[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return th;
}

void check_nodes(std::size_t nodes) {
  if (nodes < 8) throw ParameterError("quadrature needs at least 8 nodes per axis");
}

void check_target(const Matrix& u, Eigen::Index n) {
  if (u.rows() != n || u.cols() != n) throw ParameterError("gate target has the wrong size");
  if ((u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw ParameterError("gate target is not unitary");
}

double resolve_dt(const LindbladModel& model, double gate_time, double dt) {
  return dt > 0.0 ? dt : default_time_step(model, gate_time);
}

}  // namespace

FidelityCurve process_fidelity_curve_1q(const LogicalPropagation& prop, const Matrix& gate_target,
                                        std::size_t nodes) {
  check_nodes(nodes);
  if (prop.num_logical() != 2) throw ParameterError("expected a two-state logical basis");
  check_target(gate_target, 2);
  std::vector<Vector> initial;
  for (double th : nodes_on_circle(nodes)) {
    Vector c(2);
    c << std::cos(th), std::sin(th);
    initial.push_back(c);
  }
  return average_curve(prop, initial, gate_target);
}

FidelityCurve process_fidelity_curve_2q(const LogicalPropagation& prop, const Matrix& gate_target,
                                        std::size_t nodes) {
  check_nodes(nodes);
  if (prop.num_logical() != 4) throw ParameterError("expected a four-state logical basis");
  check_target(gate_target, 4);
  const auto th = nodes_on_circle(nodes);
  std::vector<Vector> initial;
  for (double a : th)
    for (double b : th) {
      Vector c(4);
      c << std::cos(a) * std::cos(b), std::cos(a) * std::sin(b), std::sin(a) * std::cos(b),
          std::sin(a) * std::sin(b);
      initial.push_back(c);
    }
  return average_curve(prop, initial, gate_target);
}

FidelityCurve state_fidelity_curve(const LogicalPropagation& prop, const Matrix& gate_target,
                                   const Vector& initial) {
  const auto n = static_cast<Eigen::Index>(prop.num_logical());
  check_target(gate_target, n);
  if (initial.size() != n) throw ParameterError("initial coefficient count mismatch");
  const Vector c = initial / initial.norm();
  return average_curve(prop, std::span<const Vector>(&c, 1), gate_target);
}

FidelityCurve process_fidelity_1q(const Matrix& gate_target, const LindbladModel& model,
                                  std::span<const Vector> logical_basis, double gate_time,
                                  const QuadratureOptions& options) {
  check_nodes(options.nodes);
  const double dt = resolve_dt(model, gate_time, options.dt);
  LogicalPropagation prop(model, logical_basis, logical_basis, gate_time, dt, options.threads);
  return process_fidelity_curve_1q(prop, gate_target, options.nodes);
}

FidelityCurve process_fidelity_2q(const Matrix& gate_target, const LindbladModel& model,
                                  std::span<const Vector> logical_basis, double gate_time,
                                  const QuadratureOptions& options) {
  check_nodes(options.nodes);
  const double dt = resolve_dt(model, gate_time, options.dt);
  LogicalPropagation prop(model, logical_basis, logical_basis, gate_time, dt, options.threads);
  return process_fidelity_curve_2q(prop, gate_target, options.nodes);
}

}  // namespace hqc
