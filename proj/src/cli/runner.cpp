#include "hqc/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "hqc/csv.hpp"
#include "hqc/errors.hpp"
#include "hqc/holonomy.hpp"

namespace hqc::cli {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMHz = kTwoPi * 1e6;
constexpr double kGHz = kTwoPi * 1e9;
// lambda_2 / 2pi as quoted alongside eta_1, eta_2 = (4.14, 10) MHz; it does
// not equal their quadrature sum, so both figures go into the manifest.
constexpr double kReferenceLambda2Mhz = 14.14;

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class... Args>
std::string fmtn(const char* f, Args... a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double resolved_dt(const ScenarioConfig& cfg, const LindbladModel& model, double gate_time) {
  return cfg.numerics.dt_ns > 0.0 ? cfg.numerics.dt_ns * 1e-9
                                  : default_time_step(model, gate_time);
}

bool keep_row(std::size_t k, std::size_t last, std::size_t every) {
  return k % every == 0 || k == last;
}

json rates_json(const NoiseRates& r) {
  return {{"kappa_rad_s", r.kappa}, {"gamma_rad_s", r.gamma}, {"gamma_phi_rad_s", r.gamma_phi}};
}

std::string fidelity_label(const std::string& kind) {
  if (kind == "hadamard") return "F_H";
  if (kind == "not") return "F_N";
  return "F";
}

RunOutput run_single_gate(const ScenarioConfig& cfg) {
  RunOutput out;
  SingleQubitParams params = cfg.single_params();
  params.validate();
  out.warnings = params.warnings();
  const double theta = cfg.gate.resolved_theta();
  const double phi = cfg.gate.resolved_phi();
  const DriveCalibration cal = calibrate(params, theta, phi);
  const SingleQubitParams driven = apply_drive(params, cal);
  const NoiseRates rates = cfg.rates();
  const LindbladModel model =
      single_qubit_model(driven, cal, rates, cfg.numerics.with_correction);
  const double dt = resolved_dt(cfg, model, cal.tau);

  const auto logical = single_logical_basis(driven.space());
  const std::vector<Vector> probes{logical[0], logical[1], single_ancilla(driven.space())};
  LogicalPropagation prop(model, logical, probes, cal.tau, dt, cfg.numerics.threads);
  const Matrix target = u1(theta, phi);
  const FidelityCurve curve = process_fidelity_curve_1q(prop, target, cfg.numerics.quadrature_n);

  std::ostringstream csv_text;
  csv::Writer w(csv_text);
  w.header({"t_ns", "P_0L", "P_1L", "P_E", "process_fidelity"});
  Vector zero_l = Vector::Zero(2);
  zero_l(0) = 1.0;
  const std::size_t last = curve.times.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    if (!keep_row(k, last, cfg.numerics.store_every)) continue;
    const Matrix b = prop.probe_block(k, zero_l);
    w.row({curve.times[k] * 1e9, b(0, 0).real(), b(1, 1).real(), b(2, 2).real(), curve.values[k]});
  }
  out.files.push_back({"fidelity_vs_time.csv", csv_text.str()});

  // Distance of the rotating-frame resonant part from h_effective: extra
  // zero-frequency Bessel combinations the effective model leaves out.
  const auto rot = rotating_hamiltonian(driven, cfg.numerics.m_max);
  Matrix resonant = rot.static_part().matrix();
  for (const auto& h : rot.harmonics())
    if (std::abs(h.frequency) < 1.0) resonant += h.op.matrix() + h.op.matrix().adjoint();
  const double residual = max_abs(resonant - h_effective(cal, driven).matrix());

  out.scalars = {{"process_fidelity", curve.final_value},
                 {"peak_fidelity", curve.peak_value},
                 {"peak_time_ns", curve.peak_time * 1e9},
                 {"gate_time_ns", cal.tau * 1e9},
                 {"lambda1_mhz", cal.lambda1 / kMHz},
                 {"alpha1", cal.alpha1},
                 {"alpha2", cal.alpha2},
                 {"rotating_residual_mhz", residual / kMHz}};

  out.manifest["derived"] = {{"omega_q_rad_s", params.omega_q},
                             {"omega_c1_rad_s", params.omega_c[0]},
                             {"omega_c2_rad_s", params.omega_c[1]},
                             {"g_rad_s", params.g},
                             {"delta1_rad_s", params.delta(0)},
                             {"delta2_rad_s", params.delta(1)},
                             {"delta_diff_rad_s", params.delta_diff()},
                             {"theta", theta},
                             {"phi", phi},
                             {"alpha1", cal.alpha1},
                             {"alpha2", cal.alpha2},
                             {"J", cal.J},
                             {"g_eff_rad_s", cal.g_eff},
                             {"lambda1_rad_s", cal.lambda1},
                             {"tau_s", cal.tau},
                             {"rates", rates_json(rates)},
                             {"dt_s", prop.dt_used()},
                             {"steps", prop.steps()},
                             {"with_correction", cfg.numerics.with_correction}};

  const std::string label = fidelity_label(cfg.gate.kind);
  out.summary.push_back(fmtn("gate %s: theta = %.6f, phi = %.6f", cfg.gate.kind.c_str(), theta, phi));
  out.summary.push_back(fmtn("alpha1 = %.8f, alpha2 = %.8f, lambda1/2pi = %.4f MHz, tau = %.4f ns",
                             cal.alpha1, cal.alpha2, cal.lambda1 / kMHz, cal.tau * 1e9));
  out.summary.push_back(fmtn("dt = %.4g ns, %zu steps, correction term %s", prop.dt_used() * 1e9,
                             prop.steps(), cfg.numerics.with_correction ? "on" : "off"));
  out.summary.push_back(fmtn("%s = %.4f %% (peak %.4f %% at %.3f ns)", label.c_str(),
                             100.0 * curve.final_value, 100.0 * curve.peak_value,
                             curve.peak_time * 1e9));
  return out;
}

RunOutput run_two_qubit(const ScenarioConfig& cfg) {
  RunOutput out;
  const TwoQubitDrive drive = cfg.two_qubit_drive();
  const NoiseRates rates = cfg.rates();
  const LindbladModel model = two_qubit_model(drive, rates, cfg.numerics.fock_cutoff);
  const double tau2 = drive.gate_time();
  const double dt = resolved_dt(cfg, model, tau2);
  const auto s2 = two_qubit_s2_basis(model.space());
  const std::vector<Vector> logical(s2.begin(), s2.begin() + 4);
  const std::vector<Vector> probes(s2.begin(), s2.end());
  LogicalPropagation prop(model, logical, probes, tau2, dt, cfg.numerics.threads);
  const Matrix target = u2(drive.vartheta, drive.varphi);

  Vector in01 = Vector::Zero(4);
  in01(1) = 1.0;
  Vector ent = Vector::Zero(4);
  ent(1) = ent(3) = 1.0 / std::sqrt(2.0);
  const FidelityCurve f2 = process_fidelity_curve_2q(prop, target, cfg.numerics.quadrature_n_2q);
  const FidelityCurve ft = state_fidelity_curve(prop, target, in01);
  const FidelityCurve fe = state_fidelity_curve(prop, target, ent);

  std::ostringstream csv_text;
  csv::Writer w(csv_text);
  w.header({"t_ns", "P_00", "P_01", "P_10", "P_11", "P_E1", "P_E2", "F_T", "F_E", "F_2"});
  const std::size_t last = f2.times.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    if (!keep_row(k, last, cfg.numerics.store_every)) continue;
    const Matrix b = prop.probe_block(k, in01);
    w.row({f2.times[k] * 1e9, b(0, 0).real(), b(1, 1).real(), b(2, 2).real(), b(3, 3).real(),
           b(4, 4).real(), b(5, 5).real(), ft.values[k], fe.values[k], f2.values[k]});
  }
  out.files.push_back({"two_qubit.csv", csv_text.str()});

  out.scalars = {{"F_2", f2.final_value},       {"F_T", ft.peak_value},
                 {"F_E", fe.peak_value},        {"F_T_final", ft.final_value},
                 {"F_E_final", fe.final_value}, {"gate_time_ns", tau2 * 1e9},
                 {"lambda2_mhz", drive.lambda2 / kMHz}, {"vartheta", drive.vartheta}};

  const double ref_lambda = kReferenceLambda2Mhz * kMHz;
  out.manifest["derived"] = {
      {"eta1_rad_s", drive.eta[0]},
      {"eta2_rad_s", drive.eta[1]},
      {"tone_phases", drive.varphi_tones},
      {"tone_omegas_rad_s", drive.omega_tones},
      {"mode_omegas_rad_s", drive.omega_modes},
      {"lambda2_rad_s", drive.lambda2},
      {"vartheta", drive.vartheta},
      {"varphi", drive.varphi},
      {"gate_time_s", tau2},
      {"reference_lambda2_mhz", kReferenceLambda2Mhz},
      {"reference_gate_time_s", std::numbers::pi / ref_lambda},
      {"rates", rates_json(rates)},
      {"dt_s", prop.dt_used()},
      {"steps", prop.steps()}};

  out.summary.push_back(fmtn("vartheta = %.6f, varphi = %.6f, lambda2/2pi = %.4f MHz, tau2 = %.4f ns",
                             drive.vartheta, drive.varphi, drive.lambda2 / kMHz, tau2 * 1e9));
  out.summary.push_back(fmtn("at lambda2/2pi = %.2f MHz the gate time would be %.4f ns",
                             kReferenceLambda2Mhz, 1e9 * std::numbers::pi / ref_lambda));
  out.summary.push_back(fmtn("dt = %.4g ns, %zu steps", prop.dt_used() * 1e9, prop.steps()));
  out.summary.push_back(fmtn("F_2 = %.4f %%, F_T = %.4f %%, F_E = %.4f %%", 100.0 * f2.final_value,
                             100.0 * ft.peak_value, 100.0 * fe.peak_value));
  return out;
}

json mode_json(const TLRNetwork& net, const Eigenmode& m) {
  return {{"index", m.index},
          {"k_per_m", m.k},
          {"frequency_ghz", m.omega / kGHz},
          {"uncoupled_ghz", net.v() / (2.0 * net.lengths[m.dominant_tlr]) / 1e9},
          {"zero_point_flux_over_phi0", m.zero_point_flux / constants::kPhi0Reduced},
          {"dominant_weight", m.tlr_weights[m.dominant_tlr]}};
}

RunOutput run_eigenmodes(const ScenarioConfig& cfg) {
  RunOutput out;
  const TLRNetwork net = cfg.network();
  out.warnings = net.warnings();
  const auto modes = solve_eigenmodes(net);

  std::ostringstream profiles;
  write_mode_profiles_csv(profiles, net, modes, cfg.circuit.profile_points);
  out.files.push_back({"mode_profiles.csv", profiles.str()});

  std::ostringstream table;
  csv::Writer w(table);
  w.header({"mode", "k_per_m", "frequency_ghz", "uncoupled_ghz", "zero_point_flux_over_phi0",
            "dominant_weight"});
  json jm = json::array();
  for (const auto& m : modes) {
    const json j = mode_json(net, m);
    jm.push_back(j);
    w.row({static_cast<double>(m.index), m.k, j["frequency_ghz"].get<double>(),
           j["uncoupled_ghz"].get<double>(), j["zero_point_flux_over_phi0"].get<double>(),
           j["dominant_weight"].get<double>()});
    out.scalars.push_back({"f" + std::to_string(m.index) + "_ghz", m.omega / kGHz});
  }
  for (const auto& m : modes)
    out.scalars.push_back({"phi" + std::to_string(m.index) + "_over_phi0",
                           m.zero_point_flux / constants::kPhi0Reduced});
  out.files.push_back({"eigenfrequencies.csv", table.str()});

  out.manifest["derived"] = {{"v_m_per_s", net.v()},
                             {"E_J0_J", net.squid.E_J0()},
                             {"E_J_J", net.squid.E_J()},
                             {"I_J_A", net.squid.I_J()},
                             {"L_J_H", net.squid.L_J()},
                             {"modes", jm}};
  out.summary.push_back(fmtn("v = %.6e m/s, L_J = %.4f pH, I_J = %.3f uA", net.v(),
                             net.squid.L_J() * 1e12, net.squid.I_J() * 1e6));
  for (const auto& m : modes)
    out.summary.push_back(fmtn("mode %d: omega/2pi = %.5f GHz, phi/phi0 = %.4e, weight %.3f",
                               m.index, m.omega / kGHz, m.zero_point_flux / constants::kPhi0Reduced,
                               m.tlr_weights[m.dominant_tlr]));
  out.summary.push_back(fmtn("eigenfrequencies: %.5f, %.5f, %.5f GHz", modes[0].omega / kGHz,
                             modes[1].omega / kGHz, modes[2].omega / kGHz));
  return out;
}

TwoToneDrive configured_tones(const ScenarioConfig& cfg, const std::vector<Eigenmode>& modes) {
  TwoToneDrive d = TwoToneDrive::table_one(modes);
  const auto& c = cfg.circuit;
  d.hop23.amplitude = c.tone23_phi0 * constants::kPhi0;
  d.hop24.amplitude = c.tone24_phi0 * constants::kPhi0;
  d.hop23.phase = c.tone23_phase;
  d.hop24.phase = c.tone24_phase;
  if (c.tone23_ghz) d.hop23.omega = *c.tone23_ghz * kGHz;
  if (c.tone24_ghz) d.hop24.omega = *c.tone24_ghz * kGHz;
  return d;
}

RunOutput run_coupling(const ScenarioConfig& cfg) {
  RunOutput out;
  const TLRNetwork net = cfg.network();
  out.warnings = net.warnings();
  const auto modes = solve_eigenmodes(net);
  const TwoToneDrive tones = configured_tones(cfg, modes);
  const std::vector<double> freqs{tones.hop23.omega, tones.hop24.omega};
  const PlasmaReport guard = plasma_guard(net.squid, freqs);
  const auto couplings = two_tone_couplings(net, modes, tones);

  json jc = json::array();
  const Tone* tone_of[2] = {&tones.hop23, &tones.hop24};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = couplings[i];
    jc.push_back({{"modes", {modes[c.mode_low].index, modes[c.mode_high].index}},
                  {"tone_amplitude_phi0", tone_of[i]->amplitude / constants::kPhi0},
                  {"tone_frequency_ghz", tone_of[i]->omega / kGHz},
                  {"eta_mhz", c.eta / kMHz},
                  {"phase", c.phase},
                  {"detuning_khz", c.detuning / (kTwoPi * 1e3)}});
  }
  const double lambda2 = std::hypot(couplings[0].eta, couplings[1].eta);
  const double vartheta = 2.0 * std::atan2(couplings[0].eta, couplings[1].eta);
  json report = {{"couplings", jc},
                 {"lambda2_mhz", lambda2 / kMHz},
                 {"vartheta", vartheta},
                 {"plasma", {{"omega_p_ghz", guard.omega_p / kGHz},
                             {"ratios", guard.ratios},
                             {"max_ratio", guard.max_ratio},
                             {"threshold", guard.threshold},
                             {"passed", guard.passed}}}};
  out.files.push_back({"coupling.json", report.dump(2) + "\n"});
  out.scalars = {{"eta1_mhz", couplings[0].eta / kMHz},
                 {"eta2_mhz", couplings[1].eta / kMHz},
                 {"lambda2_mhz", lambda2 / kMHz},
                 {"vartheta", vartheta},
                 {"omega_p_ghz", guard.omega_p / kGHz},
                 {"max_plasma_ratio", guard.max_ratio}};
  out.manifest["derived"] = {{"tone_omegas_rad_s", freqs},
                             {"tone_amplitudes_wb", {tones.hop23.amplitude, tones.hop24.amplitude}},
                             {"omega_p_rad_s", guard.omega_p},
                             {"eta_rad_s", {couplings[0].eta, couplings[1].eta}}};
  if (!guard.passed) out.warnings.push_back("plasma-frequency guard failed");
  out.summary.push_back(fmtn("omega_p/2pi = %.3f GHz, max tone ratio %.4f (%s)",
                             guard.omega_p / kGHz, guard.max_ratio,
                             guard.passed ? "pass" : "FAIL"));
  out.summary.push_back(fmtn("eta1/2pi = %.4f MHz, eta2/2pi = %.4f MHz, lambda2/2pi = %.4f MHz",
                             couplings[0].eta / kMHz, couplings[1].eta / kMHz, lambda2 / kMHz));
  return out;
}

RunOutput run_noise(const ScenarioConfig& cfg) {
  RunOutput out;
  const TLRNetwork net = cfg.network();
  const NoiseSpec spec = cfg.noise_spec();
  const SensitivityReport flux = flux_sensitivity(net, spec);
  const SensitivityReport ic = critical_current_sensitivity(net, spec);
  json report = {{"flux", flux}, {"critical_current", ic}};
  out.files.push_back({"noise.json", report.dump(2) + "\n"});
  out.scalars = {{"flux_domega_min_mhz", flux.omega_min / kMHz},
                 {"flux_domega_max_mhz", flux.omega_max / kMHz},
                 {"flux_deta_min_mhz", flux.eta_min / kMHz},
                 {"flux_deta_max_mhz", flux.eta_max / kMHz},
                 {"ic_domega_min_mhz", ic.omega_min / kMHz},
                 {"ic_domega_max_mhz", ic.omega_max / kMHz},
                 {"ic_deta_min_mhz", ic.eta_min / kMHz},
                 {"ic_deta_max_mhz", ic.eta_max / kMHz}};
  out.manifest["derived"] = {{"eta_reference_rad_s", spec.eta_reference}};
  out.summary.push_back(fmtn("flux:             d omega/2pi in [%.3e, %.3e] MHz, d eta/2pi in [%.3e, %.3e] MHz",
                             flux.omega_min / kMHz, flux.omega_max / kMHz, flux.eta_min / kMHz,
                             flux.eta_max / kMHz));
  out.summary.push_back(fmtn("critical current: d omega/2pi in [%.3e, %.3e] MHz, d eta/2pi in [%.3e, %.3e] MHz",
                             ic.omega_min / kMHz, ic.omega_max / kMHz, ic.eta_min / kMHz,
                             ic.eta_max / kMHz));
  return out;
}

RunOutput run_single_mode(const ScenarioConfig& cfg) {
  switch (cfg.mode) {
    case Mode::single_gate: return run_single_gate(cfg);
    case Mode::two_qubit: return run_two_qubit(cfg);
    case Mode::eigenmodes: return run_eigenmodes(cfg);
    case Mode::coupling: return run_coupling(cfg);
    case Mode::noise: return run_noise(cfg);
    case Mode::sweep: break;
  }
  throw ParameterError("sweep cannot be nested");
}

RunOutput run_sweep(const ScenarioConfig& cfg) {
  const auto& axes = cfg.sweep.axes;
  // Row-major grid: the last axis varies fastest.
  std::vector<std::vector<double>> grid{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& point : grid)
      for (double v : axis.values) {
        auto p = point;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    grid = std::move(next);
  }

  ScenarioConfig base = cfg;
  base.mode = cfg.sweep.scenario;
  base.sweep = {};
  const std::size_t workers = std::min<std::size_t>(cfg.numerics.threads, grid.size());
  base.numerics.threads = 1;

  std::vector<ScenarioConfig> points;
  for (const auto& p : grid) {
    ScenarioConfig c = base;
    for (std::size_t a = 0; a < axes.size(); ++a) c = with_value(c, axes[a].path, p[a]);
    points.push_back(std::move(c));
  }

  std::vector<std::vector<std::pair<std::string, double>>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < points.size(); i += workers) {
      try {
        results[i] = run_single_mode(points[i]).scalars;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunOutput out;
  out.mode = Mode::sweep;
  std::ostringstream text;
  csv::Writer w(text);
  std::vector<std::string> head;
  for (const auto& a : axes) head.push_back(a.path);
  for (const auto& [name, v] : results.front()) head.push_back(name);
  w.header(head);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row = grid[i];
    for (const auto& [name, v] : results[i]) row.push_back(v);
    w.row(row);
  }
  out.files.push_back({"sweep.csv", text.str()});
  out.manifest["derived"] = {{"scenario", to_string(base.mode)}, {"points", grid.size()}};
  out.summary.push_back(fmtn("sweep over %zu point(s) of %s", grid.size(),
                             to_string(base.mode).c_str()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::string line;
    for (std::size_t a = 0; a < axes.size(); ++a)
      line += axes[a].path + " = " + fmt("%.6g", grid[i][a]) + "  ";
    for (const auto& [name, v] : results[i]) line += name + " = " + fmt("%.8g", v) + "  ";
    out.summary.push_back(line);
  }
  return out;
}

}  // namespace

double RunOutput::scalar(const std::string& name) const {
  for (const auto& [k, v] : scalars)
    if (k == name) return v;
  throw ParameterError("no scalar named '" + name + "'");
}

const OutputFile& RunOutput::file(const std::string& name) const {
  for (const auto& f : files)
    if (f.name == name) return f;
  throw ParameterError("no output file named '" + name + "'");
}

ScenarioConfig apply_overrides(ScenarioConfig cfg, const Overrides& o) {
  if (o.gate) cfg.gate.kind = *o.gate;
  if (o.theta || o.phi) {
    if (!o.gate) cfg.gate.kind = "custom";
    if (o.theta) cfg.gate.theta = *o.theta;
    if (o.phi) cfg.gate.phi = *o.phi;
  }
  if (o.vartheta) cfg.gate.vartheta = *o.vartheta;
  if (o.varphi) cfg.gate.varphi = *o.varphi;
  if (o.kappa) cfg.noise.kappa_khz = *o.kappa;
  if (o.gamma) cfg.noise.gamma_khz = *o.gamma;
  if (o.gamma_phi) cfg.noise.gamma_phi_khz = *o.gamma_phi;
  if (o.dt) cfg.numerics.dt_ns = *o.dt;
  if (o.quadrature_n) cfg.numerics.quadrature_n = *o.quadrature_n;
  if (o.fock_cutoff) cfg.numerics.fock_cutoff = *o.fock_cutoff;
  if (o.threads) cfg.numerics.threads = *o.threads;
  if (o.with_correction) cfg.numerics.with_correction = *o.with_correction;
  cfg.validate();
  return cfg;
}

RunOutput run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  RunOutput out = cfg.mode == Mode::sweep ? run_sweep(cfg) : run_single_mode(cfg);
  out.mode = cfg.mode;
  out.manifest["mode"] = to_string(cfg.mode);
  out.manifest["config"] = config_to_json(cfg);
  json files = json::array();
  for (const auto& f : out.files) files.push_back(f.name);
  out.manifest["outputs"] = files;
  json scalars = json::object();
  for (const auto& [k, v] : out.scalars) scalars[k] = v;
  out.manifest["results"] = scalars;
  out.manifest["warnings"] = out.warnings;
  return out;
}

void write_outputs(const RunOutput& out, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / name).string());
    f << content;
    if (!f) throw Error("failed writing " + (dir / name).string());
  };
  for (const auto& f : out.files) write(f.name, f.content);
  json manifest = out.manifest;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  manifest["timestamp"] = stamp;
  write("manifest.json", manifest.dump(2) + "\n");
}

}  // namespace hqc::cli
