#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hqc/circuit_em.hpp"
#include "hqc/errors.hpp"

using namespace hqc;
using namespace hqc::constants;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGHz = 2.0 * kPi * 1e9;

const std::vector<Eigenmode>& table_modes() {
  static const std::vector<Eigenmode> modes = solve_eigenmodes(TLRNetwork::table_one());
  return modes;
}

}  // namespace

TEST(Squid, DerivedQuantities) {
  const auto s = SQUIDParams::table_one();
  const double phi0 = kHbar / (2 * kElementaryCharge);
  const double ej = phi0 * s.I_J0 * std::cos(kPi * 0.33);
  EXPECT_NEAR(s.E_J0(), phi0 * s.I_J0, 1e-12 * s.E_J0());
  EXPECT_NEAR(s.E_J(), ej, 1e-12 * ej);
  EXPECT_NEAR(s.L_J(), phi0 * phi0 / ej, 1e-12 * s.L_J());
  EXPECT_NEAR(s.I_J(), ej / phi0, 1e-12 * s.I_J());
  const double ec = kElementaryCharge * kElementaryCharge / (2 * s.C_J);
  EXPECT_NEAR(s.plasma_frequency(), std::sqrt(8 * ec * ej) / kHbar, 1e-9 * s.plasma_frequency());
  // L_J ~ 22 pH for the nominal bias.
  EXPECT_NEAR(s.L_J() * 1e12, 21.9, 0.1);
}

TEST(Squid, Validation) {
  auto s = SQUIDParams::table_one();
  EXPECT_NO_THROW(s.validate());
  s.Phi_dc = 0.5 * kPhi0;
  EXPECT_THROW(s.validate(), ParameterError);
  EXPECT_LT(s.plasma_frequency(), 1e-6 * SQUIDParams::table_one().plasma_frequency());
  s.Phi_dc = 0.6 * kPhi0;
  EXPECT_EQ(s.plasma_frequency(), 0.0);
  s = SQUIDParams::table_one();
  s.C_J = 0.0;
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(Network, Validation) {
  auto net = TLRNetwork::table_one();
  EXPECT_NO_THROW(net.validate());
  EXPECT_TRUE(net.warnings().empty());
  EXPECT_NEAR(net.v(), 1.0 / std::sqrt(net.l * net.c), 1.0);
  net.lengths[1] = net.lengths[0];
  EXPECT_THROW(net.validate(), ParameterError);
  net = TLRNetwork::table_one();
  net.c = -1.0;
  EXPECT_THROW(net.validate(), ParameterError);
  net = TLRNetwork::table_one();
  net.squid.I_J0 *= 1e-2;
  EXPECT_FALSE(net.warnings().empty());
}

TEST(CharacteristicEquation, SmallKLimit) {
  const auto net = TLRNetwork::table_one();
  const double lim = char_det_small_k_limit(net);
  for (double k : {1e-3, 1e-2}) {
    const double ratio = char_det(net, k) / (k * k * k);
    EXPECT_NEAR(ratio / lim, 1.0, 1e-3) << k;
  }
  const double lsum = net.l * net.l * net.l * net.lengths[0] * net.lengths[1] * net.lengths[2];
  EXPECT_GT(lim, lsum);
}

TEST(CharacteristicEquation, OneRootPerMidpointBracket) {
  const auto net = TLRNetwork::table_one();
  std::array<double, 3> k0;
  for (int a = 0; a < 3; ++a) k0[a] = kPi / net.lengths[a];
  std::sort(k0.begin(), k0.end());
  const std::array<double, 4> edges{0.8 * k0[0], 0.5 * (k0[0] + k0[1]), 0.5 * (k0[1] + k0[2]),
                                    1.1 * k0[2]};
  for (int b = 0; b < 3; ++b) {
    const auto roots = char_det_roots(net, edges[b], edges[b + 1], 2000, 1e-13);
    ASSERT_EQ(roots.size(), 1u) << "bracket " << b;
    const double k = roots[0];
    const double scale = std::abs(char_det(net, k * (1 + 1e-6)) - char_det(net, k * (1 - 1e-6)));
    EXPECT_LT(std::abs(char_det(net, k)), 1e-4 * scale);
  }
}

TEST(Eigenmodes, TableOneFrequencies) {
  const auto& m = table_modes();
  ASSERT_EQ(m.size(), 3u);
  const std::array<double, 3> quoted{6.75, 7.25, 7.5};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(m[i].index, i + 2);
    EXPECT_EQ(m[i].dominant_tlr, static_cast<std::size_t>(i));
    EXPECT_NEAR(m[i].omega / kGHz, quoted[i], 0.01 * quoted[i]);
    EXPECT_NEAR(m[i].omega, m[i].k * TLRNetwork::table_one().v(), 1e-6 * m[i].omega);
  }
  EXPECT_LT(m[0].omega, m[1].omega);
  EXPECT_LT(m[1].omega, m[2].omega);
}

TEST(Eigenmodes, SatisfyBoundaryConditions) {
  const auto net = TLRNetwork::table_one();
  for (const auto& mode : table_modes()) {
    const Eigen::Vector3d c(mode.amplitudes[0], mode.amplitudes[1], mode.amplitudes[2]);
    const Eigen::Matrix3d a = char_matrix(net, mode.k);
    EXPECT_LT((a * c).norm(), 1e-9 * a.norm() * c.norm());
    // Common node flux.
    const double f0 = mode.end_value(0, net.lengths[0]);
    for (std::size_t t = 1; t < 3; ++t) EXPECT_NEAR(mode.end_value(t, net.lengths[t]), f0, 1e-9 * c.norm());
    EXPECT_NEAR(mode.profile(1, 0.0), 0.0, 1e-15);
  }
}

TEST(Eigenmodes, Orthonormal) {
  const auto net = TLRNetwork::table_one();
  const auto& m = table_modes();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(mode_overlap(net, m[i], m[j]), i == j ? 1.0 : 0.0, 1e-10) << i << j;
}

TEST(Eigenmodes, OverlapMatchesQuadrature) {
  const auto net = TLRNetwork::table_one();
  const auto& m = table_modes();
  double s = 0.0;
  const int n = 20000;
  for (std::size_t t = 0; t < 3; ++t) {
    const double h = net.lengths[t] / n;
    for (int k = 0; k <= n; ++k) {
      const double w = (k == 0 || k == n) ? 0.5 : 1.0;
      s += w * h * m[0].profile(t, k * h) * m[1].profile(t, k * h);
    }
  }
  s += net.squid.C_J / net.c * m[0].end_value(0, net.lengths[0]) * m[1].end_value(0, net.lengths[0]);
  EXPECT_NEAR(s, mode_overlap(net, m[0], m[1]), 1e-8);
}

TEST(Eigenmodes, DominantWeight) {
  for (const auto& mode : table_modes()) {
    EXPECT_GT(mode.tlr_weights[mode.dominant_tlr], 0.95);
    double sum = 0.0;
    for (double w : mode.tlr_weights) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Eigenmodes, ZeroPointFlux) {
  const auto net = TLRNetwork::table_one();
  for (const auto& mode : table_modes()) {
    const double f = std::abs(mode.end_value(0, net.lengths[0]));
    EXPECT_NEAR(mode.zero_point_flux, f * std::sqrt(kHbar / (2 * mode.omega * net.c)),
                1e-12 * mode.zero_point_flux);
    EXPECT_GT(mode.zero_point_flux / kPhi0Reduced, 1e-3);
    EXPECT_LT(mode.zero_point_flux / kPhi0Reduced, 5e-3);
  }
}

TEST(Eigenmodes, ShortedJunctionGivesHalfWaveLines) {
  auto net = TLRNetwork::table_one();
  net.squid.I_J0 *= 1e6;
  const auto m = solve_eigenmodes(net);
  for (int i = 0; i < 3; ++i) {
    const double ref = kPi * net.v() / net.lengths[i];
    EXPECT_NEAR(m[i].omega / ref, 1.0, 1e-6);
    EXPECT_GT(m[i].tlr_weights[i], 0.999);
  }
}

TEST(Eigenmodes, FailureCarriesDiagnostics) {
  ModeSolverOptions opt;
  opt.bracket_low = 1.05;
  opt.bracket_high = 1.06;
  try {
    solve_eigenmodes(TLRNetwork::table_one(), opt);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("expected 3 eigenmodes"), std::string::npos) << e.what();
  }
}

TEST(Eigenmodes, ProfileCsv) {
  const auto net = TLRNetwork::table_one();
  std::ostringstream out;
  write_mode_profiles_csv(out, net, table_modes(), 11);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find("\r\n")), "tlr,x,mode_2,mode_3,mode_4");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 34);
}

TEST(Coupling, StrengthFormula) {
  const auto net = TLRNetwork::table_one();
  const auto& m = table_modes();
  const double amp = 0.005 * kPhi0;
  const double phi0 = kPhi0Reduced;
  const double ref = net.squid.E_J0() * std::sin(kPi * 0.33) * amp * m[0].zero_point_flux *
                     m[1].zero_point_flux / (4 * phi0 * phi0 * phi0 * kHbar);
  EXPECT_NEAR(coupling_strength(net, m[0], m[1], amp), ref, 1e-9 * ref);
  EXPECT_DOUBLE_EQ(coupling_strength(net, m[0], m[1], amp), coupling_strength(net, m[1], m[0], amp));
}

TEST(Coupling, LinearInToneAmplitude) {
  const auto net = TLRNetwork::table_one();
  const auto& m = table_modes();
  const double e1 = coupling_strength(net, m[0], m[2], 0.001 * kPhi0);
  for (double s : {2.0, 5.0, 15.0})
    EXPECT_NEAR(coupling_strength(net, m[0], m[2], s * 0.001 * kPhi0), s * e1, 1e-12 * s * e1);
  EXPECT_EQ(coupling_strength(net, m[0], m[2], 0.0), 0.0);
}

TEST(Coupling, ResonantPairSelection) {
  const auto net = TLRNetwork::table_one();
  const auto& m = table_modes();
  const auto drive = TwoToneDrive::table_one(m);
  const auto c = two_tone_couplings(net, m, drive);
  EXPECT_EQ(c[0].mode_low, 0u);
  EXPECT_EQ(c[0].mode_high, 1u);
  EXPECT_EQ(c[1].mode_low, 0u);
  EXPECT_EQ(c[1].mode_high, 2u);
  EXPECT_NEAR(c[0].detuning, 0.0, 1e-3);
  EXPECT_GT(c[1].eta, c[0].eta);
  const auto c34 =
      parametric_coupling(net, m, Tone{0.002 * kPhi0, m[2].omega - m[1].omega, 0.4});
  EXPECT_EQ(c34.mode_low, 1u);
  EXPECT_EQ(c34.mode_high, 2u);
  EXPECT_DOUBLE_EQ(c34.phase, 0.4);
}

TEST(Coupling, ValidityGuards) {
  const auto net = TLRNetwork::table_one();
  const auto& m = table_modes();
  const double w23 = m[1].omega - m[0].omega;
  EXPECT_THROW(parametric_coupling(net, m, Tone{0.04 * kPhi0, w23, 0.0}), ValidityError);
  EXPECT_THROW(parametric_coupling(net, m, Tone{0.005 * kPhi0, w23 + 2 * kPi * 1e6, 0.0}),
               ValidityError);
  EXPECT_THROW(parametric_coupling(net, m, Tone{0.005 * kPhi0, 2 * net.squid.plasma_frequency(), 0.0}),
               ValidityError);
  EXPECT_NO_THROW(parametric_coupling(net, m, Tone{0.005 * kPhi0, w23, 0.0}));
}

TEST(Plasma, GuardRatios) {
  const auto s = SQUIDParams::table_one();
  const std::array<double, 2> tones{0.5 * kGHz, 0.8 * kGHz};
  const auto r = plasma_guard(s, tones);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.max_ratio, tones[1] / s.plasma_frequency(), 1e-15);
  const std::array<double, 1> fast{0.2 * s.plasma_frequency()};
  EXPECT_FALSE(plasma_guard(s, fast).passed);
  auto dead = s;
  dead.Phi_dc = 0.5 * kPhi0;
  EXPECT_FALSE(plasma_guard(dead, tones).passed);
}
