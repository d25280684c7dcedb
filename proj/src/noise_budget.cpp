#include "hqc/noise_budget.hpp"

#include <algorithm>
#include <cmath>

#include "hqc/errors.hpp"

namespace hqc {

namespace {

struct Snapshot {
  std::array<double, 3> omega{};
  std::array<double, 2> eta{};
};

Snapshot snapshot(const TLRNetwork& net, const NoiseSpec& spec) {
  const auto modes = solve_eigenmodes(net);
  Snapshot s;
  for (std::size_t m = 0; m < 3; ++m) s.omega[m] = modes[m].omega;
  // Tone amplitudes are held fixed; only the circuit parameters move.
  s.eta[0] = coupling_strength(net, modes[0], modes[1], spec.tone_amplitudes[0] * constants::kPhi0);
  s.eta[1] = coupling_strength(net, modes[0], modes[2], spec.tone_amplitudes[1] * constants::kPhi0);
  return s;
}

SensitivityPoint spread(const Snapshot& plus, const Snapshot& minus, double delta) {
  SensitivityPoint p;
  p.perturbation = delta;
  for (std::size_t m = 0; m < 3; ++m) p.delta_omega[m] = 0.5 * std::abs(plus.omega[m] - minus.omega[m]);
  for (std::size_t m = 0; m < 2; ++m) p.delta_eta[m] = 0.5 * std::abs(plus.eta[m] - minus.eta[m]);
  return p;
}

void check_delta(double delta) {
  if (!(delta >= 0.0) || !(delta < 1e-2)) throw ParameterError("perturbation must lie in [0, 1e-2)");
}

SensitivityReport summarize(std::string name, std::vector<SensitivityPoint> pts,
                            const NoiseSpec& spec, double source) {
  SensitivityReport r;
  r.parameter = std::move(name);
  r.eta_reference = spec.eta_reference;
  r.source_amplitude = source;
  r.omega_min = r.eta_min = INFINITY;
  for (const auto& p : pts) {
    for (double w : p.delta_omega) {
      r.omega_min = std::min(r.omega_min, w);
      r.omega_max = std::max(r.omega_max, w);
    }
    for (double e : p.delta_eta) {
      r.eta_min = std::min(r.eta_min, e);
      r.eta_max = std::max(r.eta_max, e);
    }
  }
  r.points = std::move(pts);
  return r;
}

}  // namespace

void NoiseSpec::validate() const {
  for (const auto& range : {delta_phi_range, delta_ic_range})
    if (!(range[0] > 0.0 && range[0] < range[1] && range[1] < 1e-2))
      throw ParameterError("noise ranges need 0 < low < high < 1e-2");
  if (!(eta_reference > 0.0)) throw ParameterError("eta reference must be positive");
}

SensitivityPoint flux_shift(const TLRNetwork& net, const NoiseSpec& spec, double delta) {
  check_delta(delta);
  TLRNetwork up = net, down = net;
  up.squid.Phi_dc += delta * constants::kPhi0;
  down.squid.Phi_dc -= delta * constants::kPhi0;
  return spread(snapshot(up, spec), snapshot(down, spec), delta);
}

SensitivityPoint critical_current_shift(const TLRNetwork& net, const NoiseSpec& spec, double delta) {
  check_delta(delta);
  TLRNetwork up = net, down = net;
  up.squid.I_J0 *= 1.0 + delta;
  down.squid.I_J0 *= 1.0 - delta;
  return spread(snapshot(up, spec), snapshot(down, spec), delta);
}

SensitivityReport flux_sensitivity(const TLRNetwork& net, const NoiseSpec& spec) {
  spec.validate();
  std::vector<SensitivityPoint> pts;
  for (double d : spec.delta_phi_range) pts.push_back(flux_shift(net, spec, d));
  return summarize("flux", std::move(pts), spec, spec.flux_amp);
}

SensitivityReport critical_current_sensitivity(const TLRNetwork& net, const NoiseSpec& spec) {
  spec.validate();
  std::vector<SensitivityPoint> pts;
  for (double d : spec.delta_ic_range) pts.push_back(critical_current_shift(net, spec, d));
  return summarize("critical_current", std::move(pts), spec, spec.current_amp);
}

void to_json(nlohmann::json& j, const SensitivityReport& r) {
  const double mhz = 1.0 / (2.0 * M_PI * 1e6);
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json dw = nlohmann::json::array(), de = nlohmann::json::array();
    for (double w : p.delta_omega) dw.push_back(w * mhz);
    for (double e : p.delta_eta) de.push_back(e * mhz);
    pts.push_back({{"perturbation", p.perturbation},
                   {"delta_omega_mhz", dw},
                   {"delta_eta_mhz", de},
                   {"delta_omega_over_eta2", std::vector<double>{p.delta_omega[0] / r.eta_reference,
                                                                 p.delta_omega[1] / r.eta_reference,
                                                                 p.delta_omega[2] / r.eta_reference}},
                   {"delta_eta_over_eta2", std::vector<double>{p.delta_eta[0] / r.eta_reference,
                                                               p.delta_eta[1] / r.eta_reference}}});
  }
  j = {{"parameter", r.parameter},
       {"source_amplitude", r.source_amplitude},
       {"eta2_reference_mhz", r.eta_reference * mhz},
       {"delta_omega_range_mhz", {r.omega_min * mhz, r.omega_max * mhz}},
       {"delta_eta_range_mhz", {r.eta_min * mhz, r.eta_max * mhz}},
       {"points", pts}};
}

}  // namespace hqc
