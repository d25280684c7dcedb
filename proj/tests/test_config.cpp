#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "hqc/cli/config.hpp"
#include "hqc/cli/toml_lite.hpp"

using namespace hqc;
using namespace hqc::cli;

namespace {

constexpr double kPi = std::numbers::pi;

std::string error_of(const std::string& text, bool toml) {
  try {
    parse_config(text, toml, "cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Toml, ScalarsTablesAndArrays) {
  const auto doc = parse_toml(R"(# comment
mode = "single-gate"
flag = true
count = 12
[gate]
kind = 'not'   # trailing comment
theta = 1.5e-1
[circuit]
lengths_mm = [
  9.16,
  8.46, 8.2,
]
sub.key = -3
inline = { a = 1, b = "x" }
)");
  const auto& j = doc.root;
  EXPECT_EQ(j["mode"], "single-gate");
  EXPECT_EQ(j["flag"], true);
  EXPECT_EQ(j["count"], 12);
  EXPECT_EQ(j["gate"]["kind"], "not");
  EXPECT_DOUBLE_EQ(j["gate"]["theta"].get<double>(), 0.15);
  EXPECT_EQ(j["circuit"]["lengths_mm"].size(), 3u);
  EXPECT_EQ(j["circuit"]["sub"]["key"], -3);
  EXPECT_EQ(j["circuit"]["inline"]["b"], "x");
  EXPECT_EQ(doc.lines.at("gate.theta"), 7);
  EXPECT_EQ(doc.lines.at("circuit.lengths_mm"), 9);
}

TEST(Toml, EscapesAndUnderscores) {
  const auto doc = parse_toml("s = \"a\\tb\\\"c\"\nn = 1_000\nf = +2.5\n");
  EXPECT_EQ(doc.root["s"], "a\tb\"c");
  EXPECT_EQ(doc.root["n"], 1000);
  EXPECT_DOUBLE_EQ(doc.root["f"].get<double>(), 2.5);
}

TEST(Toml, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_toml(text);
    } catch (const TomlError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("a = 1\nb = \n"), 2);
  EXPECT_EQ(line_of("a = 1\na = 2\n"), 2);
  EXPECT_EQ(line_of("[t]\nx = 1\n[t]\n"), 3);
  EXPECT_EQ(line_of("\n\n[[arr]]\n"), 3);
  EXPECT_EQ(line_of("x = \"open\n"), 1);
  // An unterminated array is reported where the input ends.
  EXPECT_EQ(line_of("x = [1, 2\n"), 2);
  EXPECT_EQ(line_of("x = inf\n"), 1);
}

TEST(Config, DefaultsAreValid) {
  const ScenarioConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  const auto p = cfg.single_params();
  EXPECT_NEAR(p.omega_q, 2 * kPi * 6e9, 1e-3);
  EXPECT_NEAR(p.g, 2 * kPi * 25e6, 1e-6);
  EXPECT_NEAR(cfg.rates().kappa, 2 * kPi * 1e4, 1e-9);
  EXPECT_DOUBLE_EQ(cfg.gate.resolved_theta(), kPi / 4);
  const auto net = cfg.network();
  EXPECT_NEAR(net.lengths[0], 9.16e-3, 1e-15);
  EXPECT_NEAR(net.squid.I_J0, 29.5e-6, 1e-18);
  EXPECT_NEAR(net.squid.Phi_dc / constants::kPhi0, 0.33, 1e-15);
  const auto modes = cfg.coupler_modes();
  EXPECT_NEAR(modes[1], 2 * kPi * 7.25e9, 1e-3);
}

TEST(Config, TwoQubitDriveFromHoppings) {
  ScenarioConfig cfg;
  const auto d = cfg.two_qubit_drive();
  EXPECT_NEAR(d.eta[0], 2 * kPi * 4.14e6, 1e-6);
  EXPECT_NEAR(d.eta[1], 2 * kPi * 10e6, 1e-6);
  EXPECT_NEAR(d.vartheta, 2 * std::atan2(4.14, 10.0), 1e-12);
  cfg.gate.vartheta = 1.0;
  cfg.gate.varphi = 0.3;
  const auto d2 = cfg.two_qubit_drive();
  EXPECT_NEAR(d2.vartheta, 1.0, 1e-12);
  EXPECT_NEAR(std::remainder(d2.varphi - 0.3, 2 * kPi), 0.0, 1e-12);
}

TEST(Config, TomlAndJsonAgree) {
  const auto a = parse_config(R"(mode = "single-gate"
[gate]
kind = "custom"
theta = 1.2
phi = 0.4
[noise]
kappa_khz = 0
[numerics]
with_correction = "off"
)",
                              true, "a.toml");
  const auto b = parse_config(R"({"mode": "single-gate",
 "gate": {"kind": "custom", "theta": 1.2, "phi": 0.4},
 "noise": {"kappa_khz": 0},
 "numerics": {"with_correction": false}})",
                              false, "b.json");
  EXPECT_EQ(config_to_json(a), config_to_json(b));
  EXPECT_DOUBLE_EQ(a.gate.resolved_theta(), 1.2);
  EXPECT_FALSE(a.numerics.with_correction);
}

TEST(Config, JsonRoundTrip) {
  ScenarioConfig cfg;
  cfg.mode = Mode::sweep;
  cfg.sweep.scenario = Mode::coupling;
  cfg.sweep.axes = {{"circuit.tone23_phi0", {0.001, 0.002}}};
  cfg.circuit.tone24_ghz = 0.8;
  const auto j = config_to_json(cfg);
  const auto back = config_from_json(j);
  EXPECT_EQ(config_to_json(back), j);
  EXPECT_EQ(back.sweep.axes[0].values.size(), 2u);
  EXPECT_EQ(*back.circuit.tone24_ghz, 0.8);
}

TEST(Config, UnitRoundTripThroughText) {
  // Values written in file units re-parse to the same rad/s to 1e-12.
  ScenarioConfig cfg;
  cfg.single.omega_c2_ghz = 6.7512345678901;
  cfg.noise.gamma_khz = 12.345678901234;
  const ScenarioConfig back = parse_config(config_to_json(cfg).dump(), false, "rt");
  EXPECT_NEAR(back.single_params().omega_c[1] / cfg.single_params().omega_c[1], 1.0, 1e-12);
  EXPECT_NEAR(back.rates().gamma / cfg.rates().gamma, 1.0, 1e-12);
}

TEST(Config, UnknownKeyNamesPathAndLine) {
  const std::string msg = error_of("mode = \"noise\"\n[gate]\nkind = \"not\"\nthetaa = 1\n", true);
  EXPECT_NE(msg.find("cfg:4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("gate.thetaa"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown key"), std::string::npos) << msg;
}

TEST(Config, ValueErrorsNameLine) {
  const std::string msg = error_of("mode = \"single-gate\"\n\n[noise]\nkappa_khz = -3\n", true);
  EXPECT_NE(msg.find("cfg:4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("noise.kappa_khz"), std::string::npos) << msg;
  const std::string js = error_of("{\n \"mode\": \"single-gate\",\n \"numerics\": {\"quadrature_n\": 4}\n}",
                                  false);
  EXPECT_NE(js.find("cfg:3"), std::string::npos) << js;
  EXPECT_NE(js.find("numerics.quadrature_n"), std::string::npos) << js;
}

TEST(Config, TypeAndSyntaxErrors) {
  EXPECT_NE(error_of("[gate]\ntheta = \"x\"\n", true).find("expected a number"), std::string::npos);
  EXPECT_NE(error_of("mode = \"warp\"\n", true).find("mode"), std::string::npos);
  EXPECT_NE(error_of("[gate\n", true).find("cfg:1"), std::string::npos);
  EXPECT_NE(error_of("{\"mode\": }", false).find("cfg"), std::string::npos);
  EXPECT_NE(error_of("[numerics]\nfock_cutoff = 1.5\n", true).find("integer"), std::string::npos);
  EXPECT_NE(error_of("[gate]\nkind = \"custom\"\ntheta = 4\n", true).find("gate.theta"),
            std::string::npos);
}

TEST(Config, SweepAxes) {
  const auto cfg = parse_config(R"(mode = "sweep"
[sweep]
scenario = "single-gate"
parameters = [
  { path = "gate.theta", start = 0.2, stop = 1.6, count = 8 },
  { path = "noise.kappa_khz", values = [0, 10, 20] },
]
)",
                                true, "s.toml");
  ASSERT_EQ(cfg.sweep.axes.size(), 2u);
  EXPECT_EQ(cfg.sweep.axes[0].values.size(), 8u);
  EXPECT_DOUBLE_EQ(cfg.sweep.axes[0].values.front(), 0.2);
  EXPECT_DOUBLE_EQ(cfg.sweep.axes[0].values.back(), 1.6);
  EXPECT_EQ(cfg.sweep.axes[1].path, "noise.kappa_khz");
  EXPECT_NE(error_of("mode = \"sweep\"\n[sweep]\nscenario = \"sweep\"\n"
                     "parameters = [{path = \"gate.theta\", values = [1]}]\n",
                     true)
                .find("sweep.scenario"),
            std::string::npos);
  EXPECT_NE(error_of("mode = \"sweep\"\n[sweep]\nparameters = [{path = \"gate.theta\"}]\n", true)
                .find("sweep.parameters.0"),
            std::string::npos);
}

TEST(Config, WithValue) {
  ScenarioConfig cfg;
  const auto a = with_value(cfg, "noise.kappa_khz", 20.0);
  EXPECT_DOUBLE_EQ(a.noise.kappa_khz, 20.0);
  const auto b = with_value(cfg, "circuit.lengths_mm.1", 8.5);
  EXPECT_DOUBLE_EQ(b.circuit.lengths_mm[1], 8.5);
  EXPECT_THROW(with_value(cfg, "noise.nope", 1.0), ConfigError);
  EXPECT_THROW(with_value(cfg, "noise.kappa_khz", -1.0), ConfigError);
}

TEST(Config, LoadByExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "hqc_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.toml") << "mode = \"eigenmodes\"\n";
    std::ofstream(dir / "a.json") << "{\"mode\": \"coupling\"}";
    std::ofstream(dir / "a.yaml") << "mode: noise\n";
  }
  EXPECT_EQ(load_config(dir / "a.toml").mode, Mode::eigenmodes);
  EXPECT_EQ(load_config(dir / "a.json").mode, Mode::coupling);
  EXPECT_THROW(load_config(dir / "a.yaml"), ConfigError);
  EXPECT_THROW(load_config(dir / "missing.toml"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Config, ModeNames) {
  for (Mode m : {Mode::single_gate, Mode::two_qubit, Mode::eigenmodes, Mode::coupling, Mode::noise,
                 Mode::sweep})
    EXPECT_EQ(mode_from_string(to_string(m)), m);
}
