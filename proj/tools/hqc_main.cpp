// hqc: holonomic-gate and circuit simulations from the command line.
//
//   hqc run --config scenario.toml --out results/
//   hqc simulate --gate not --kappa 0 --gamma 0 --gamma-phi 0
//   hqc two-qubit | eigenmodes | coupling | noise | sweep --config sweep.toml

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hqc/cli/config.hpp"
#include "hqc/cli/runner.hpp"
#include "hqc/errors.hpp"

using namespace hqc::cli;

namespace {

struct CommonArgs {
  std::string config;
  std::string out = "out";
  Overrides overrides;
  std::string correction;
};

void add_common(CLI::App* sub, CommonArgs& a, bool gate_flags) {
  sub->add_option("--config", a.config, "Scenario file (.toml or .json)");
  sub->add_option("--out", a.out, "Output directory")->capture_default_str();
  if (gate_flags) {
    sub->add_option("--gate", a.overrides.gate, "Single-qubit gate")
        ->check(CLI::IsMember({"hadamard", "not", "custom"}));
    sub->add_option("--theta", a.overrides.theta, "Gate angle theta (rad)");
    sub->add_option("--phi", a.overrides.phi, "Gate phase phi (rad)");
    sub->add_option("--vartheta", a.overrides.vartheta, "Two-qubit gate angle (rad)");
    sub->add_option("--varphi", a.overrides.varphi, "Two-qubit gate phase (rad)");
  }
  sub->add_option("--kappa", a.overrides.kappa, "TLR decay rate / 2pi (kHz)");
  sub->add_option("--gamma", a.overrides.gamma, "Transmon relaxation rate / 2pi (kHz)");
  sub->add_option("--gamma-phi", a.overrides.gamma_phi, "Transmon dephasing rate / 2pi (kHz)");
  sub->add_option("--dt", a.overrides.dt, "Integrator step (ns)");
  sub->add_option("--quadrature-n", a.overrides.quadrature_n, "Quadrature nodes");
  sub->add_option("--fock-cutoff", a.overrides.fock_cutoff, "Fock cutoff per TLR (1..3)");
  sub->add_option("--with-correction", a.correction, "Fast-oscillating correction term")
      ->check(CLI::IsMember({"on", "off"}));
  sub->add_option("--threads", a.overrides.threads, "Worker threads");
}

int execute(const CommonArgs& a, std::optional<Mode> forced) {
  ScenarioConfig cfg;
  if (!a.config.empty()) cfg = load_config(a.config);
  if (forced) cfg.mode = *forced;
  Overrides o = a.overrides;
  if (!a.correction.empty()) o.with_correction = a.correction == "on";
  cfg = apply_overrides(cfg, o);
  if (cfg.mode == Mode::sweep && cfg.sweep.axes.empty())
    throw ConfigError("sweep: the config declares no swept parameters");

  const RunOutput out = run_scenario(cfg);
  for (const auto& w : out.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  write_outputs(out, a.out);
  for (const auto& line : out.summary) std::printf("%s\n", line.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gates on a circuit-QED lattice: dynamics, eigenmodes, couplings"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    std::optional<Mode> mode;
    bool gate_flags;
  };
  const Entry entries[] = {
      {"run", "Run the scenario named by the config's mode", std::nullopt, true},
      {"simulate", "Single-qubit gate under the master equation", Mode::single_gate, true},
      {"two-qubit", "Two-qubit gate under the master equation", Mode::two_qubit, true},
      {"eigenmodes", "Normal modes of the three-TLR network", Mode::eigenmodes, false},
      {"coupling", "Parametric hopping strengths and plasma guard", Mode::coupling, false},
      {"noise", "Quasistatic 1/f noise budget", Mode::noise, false},
      {"sweep", "Grid over one or two config parameters", Mode::sweep, true},
  };
  std::vector<CommonArgs> args(std::size(entries));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    subs.push_back(app.add_subcommand(entries[i].name, entries[i].help));
    add_common(subs.back(), args[i], entries[i].gate_flags);
  }
  subs[0]->needs(subs[0]->get_option("--config"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return execute(args[i], entries[i].mode);
    } catch (const ConfigError& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return 2;
    } catch (const hqc::Error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 2;
}
