#include "hqc/circuit_em.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "hqc/csv.hpp"
#include "hqc/errors.hpp"

namespace hqc {

using constants::kElementaryCharge;
using constants::kHbar;
using constants::kPhi0;
using constants::kPhi0Reduced;

double SQUIDParams::E_J0() const { return kPhi0Reduced * I_J0; }

double SQUIDParams::E_J() const { return E_J0() * std::cos(std::numbers::pi * Phi_dc / kPhi0); }

double SQUIDParams::I_J() const { return E_J() / kPhi0Reduced; }

double SQUIDParams::L_J() const { return kPhi0Reduced * kPhi0Reduced / E_J(); }

double SQUIDParams::E_C() const { return kElementaryCharge * kElementaryCharge / (2.0 * C_J); }

double SQUIDParams::plasma_frequency() const {
  const double ej = E_J();
  if (!(ej > 0.0)) return 0.0;
  return std::sqrt(8.0 * E_C() * ej) / kHbar;
}

void SQUIDParams::validate() const {
  if (!(C_J > 0.0)) throw ParameterError("junction capacitance must be positive");
  if (!(I_J0 > 0.0)) throw ParameterError("critical current must be positive");
  if (!(E_J() > 1e-6 * E_J0()))
    throw ParameterError("dc flux bias leaves no Josephson energy (|Phi_dc| too close to Phi0/2)");
}

SQUIDParams SQUIDParams::table_one() { return {0.5e-12, 29.5e-6, 0.33 * kPhi0}; }

double TLRNetwork::v() const { return 1.0 / std::sqrt(l * c); }

std::vector<std::string> TLRNetwork::warnings() const {
  std::vector<std::string> out;
  const double min_line = l * *std::min_element(lengths.begin(), lengths.end());
  if (squid.L_J() > 0.05 * min_line) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "SQUID inductance %.3g H exceeds 5%% of the smallest line inductance %.3g H",
                  squid.L_J(), min_line);
    out.emplace_back(buf);
  }
  return out;
}

void TLRNetwork::validate() const {
  if (!(l > 0.0) || !(c > 0.0)) throw ParameterError("l and c must be positive");
  for (double len : lengths)
    if (!(len > 0.0)) throw ParameterError("TLR lengths must be positive");
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b)
      if (std::abs(lengths[a] - lengths[b]) <= 1e-9 * std::max(lengths[a], lengths[b]))
        throw ParameterError("two TLRs have equal lengths; their modes would be degenerate");
  squid.validate();
}

TLRNetwork TLRNetwork::table_one() {
  return {4.1e-7, 1.6e-10, {9.16e-3, 8.46e-3, 8.2e-3}, SQUIDParams::table_one()};
}

double Eigenmode::profile(std::size_t tlr, double x) const {
  return amplitudes.at(tlr) * std::sin(k * x);
}

double Eigenmode::end_value(std::size_t tlr, double length) const { return profile(tlr, length); }

Eigen::Matrix3d char_matrix(const TLRNetwork& net, double k) {
  const double lj = net.squid.L_J();
  const double d = net.l - net.squid.C_J * lj * k * k / net.c;
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      m(a, b) = lj * k * std::cos(k * net.lengths[b]);
      if (a == b) m(a, b) += d * std::sin(k * net.lengths[a]);
    }
  return m;
}

double char_det(const TLRNetwork& net, double k) { return char_matrix(net, k).determinant(); }

double char_det_small_k_limit(const TLRNetwork& net) {
  const auto& L = net.lengths;
  const double lj = net.squid.L_J();
  const double l = net.l;
  return l * l * l * L[0] * L[1] * L[2] + lj * l * l * (L[1] * L[2] + L[0] * L[2] + L[0] * L[1]);
}

std::vector<double> char_det_roots(const TLRNetwork& net, double k_low, double k_high,
                                   std::size_t scan_points, double rel_tol) {
  if (!(k_low > 0.0) || !(k_high > k_low)) throw ParameterError("invalid k scan interval");
  if (scan_points < 2) throw ParameterError("scan needs at least two points");
  std::vector<double> roots;
  const double step = (k_high - k_low) / static_cast<double>(scan_points);
  double ka = k_low;
  double fa = char_det(net, ka);
  for (std::size_t i = 1; i <= scan_points; ++i) {
    const double kb = k_low + static_cast<double>(i) * step;
    const double fb = char_det(net, kb);
    if (fa == 0.0) {
      roots.push_back(ka);
    } else if (std::signbit(fa) != std::signbit(fb) && fb != 0.0) {
      double lo = ka, hi = kb, flo = fa;
      while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = char_det(net, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    ka = kb;
    fa = fb;
  }
  return roots;
}

namespace {

// int_0^L sin(a x) sin(b x) dx
double sin_overlap(double a, double b, double L) {
  const double s = a + b;
  const double d = a - b;
  const double plus = std::sin(s * L) / (2.0 * s);
  if (std::abs(d) * L < 1e-6) {
    // sin(dL)/(2d) -> L/2 (1 - (dL)^2/6)
    return 0.5 * L * (1.0 - d * d * L * L / 6.0) - plus;
  }
  return std::sin(d * L) / (2.0 * d) - plus;
}

Eigenmode build_mode(const TLRNetwork& net, double k) {
  const Eigen::Matrix3d m = char_matrix(net, k);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
  Eigen::Vector3d cvec = svd.matrixV().col(2);

  Eigenmode mode;
  mode.k = k;
  mode.omega = net.v() * k;
  double line_norm = 0.0;
  std::array<double, 3> line{};
  for (int a = 0; a < 3; ++a) {
    line[a] = cvec(a) * cvec(a) * sin_overlap(k, k, net.lengths[a]);
    line_norm += line[a];
  }
  // All end values agree for a true root; average them for the node term.
  double end = 0.0;
  for (int a = 0; a < 3; ++a) end += cvec(a) * std::sin(k * net.lengths[a]);
  end /= 3.0;
  const double norm = line_norm + net.squid.C_J / net.c * end * end;
  double scale = 1.0 / std::sqrt(norm);
  if (end < 0.0) scale = -scale;
  for (int a = 0; a < 3; ++a) {
    mode.amplitudes[a] = scale * cvec(a);
    mode.tlr_weights[a] = line[a] / line_norm;
  }
  mode.dominant_tlr = static_cast<std::size_t>(
      std::max_element(mode.tlr_weights.begin(), mode.tlr_weights.end()) -
      mode.tlr_weights.begin());
  mode.index = static_cast<int>(mode.dominant_tlr) + 2;
  const double f_node = mode.end_value(0, net.lengths[0]);
  mode.zero_point_flux = f_node * std::sqrt(kHbar / (2.0 * mode.omega * net.c));
  return mode;
}

}  // namespace

std::vector<Eigenmode> solve_eigenmodes(const TLRNetwork& net, const ModeSolverOptions& opt) {
  net.validate();
  std::vector<double> roots;
  std::string diag;
  for (std::size_t a = 0; a < 3; ++a) {
    const double k0 = std::numbers::pi / net.lengths[a];
    const auto found = char_det_roots(net, opt.bracket_low * k0, opt.bracket_high * k0,
                                      opt.scan_points, opt.rel_tol);
    char buf[96];
    std::snprintf(buf, sizeof buf, " TLR%zu bracket [%.6g, %.6g] 1/m: %zu sign change(s);", a + 2,
                  opt.bracket_low * k0, opt.bracket_high * k0, found.size());
    diag += buf;
    // Brackets of neighbouring lines overlap, so the same root can be seen twice.
    for (double r : found) {
      const bool seen = std::any_of(roots.begin(), roots.end(),
                                    [&](double q) { return std::abs(q - r) <= 1e-9 * r; });
      if (!seen) roots.push_back(r);
    }
  }
  if (roots.size() != 3)
    throw SolverError("expected 3 eigenmodes, found " + std::to_string(roots.size()) + ":" + diag);
  std::sort(roots.begin(), roots.end());

  std::vector<Eigenmode> modes;
  for (double k : roots) modes.push_back(build_mode(net, k));
  std::sort(modes.begin(), modes.end(),
            [](const Eigenmode& x, const Eigenmode& y) { return x.dominant_tlr < y.dominant_tlr; });
  for (std::size_t i = 0; i < 3; ++i)
    if (modes[i].dominant_tlr != i)
      throw SolverError("eigenmodes are not in one-to-one correspondence with the TLRs:" + diag);
  return modes;
}

double mode_overlap(const TLRNetwork& net, const Eigenmode& a, const Eigenmode& b) {
  double s = 0.0;
  for (std::size_t t = 0; t < 3; ++t)
    s += a.amplitudes[t] * b.amplitudes[t] * sin_overlap(a.k, b.k, net.lengths[t]);
  const double fa = a.end_value(0, net.lengths[0]);
  const double fb = b.end_value(0, net.lengths[0]);
  return s + net.squid.C_J / net.c * fa * fb;
}

void write_mode_profiles_csv(std::ostream& out, const TLRNetwork& net,
                             std::span<const Eigenmode> modes, std::size_t points) {
  if (points < 2) throw ParameterError("need at least two samples per line");
  csv::Writer w(out);
  std::vector<std::string> head{"tlr", "x"};
  for (const auto& m : modes) head.push_back("mode_" + std::to_string(m.index));
  w.header(head);
  std::vector<double> row(head.size());
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t i = 0; i < points; ++i) {
      const double x = net.lengths[t] * static_cast<double>(i) / static_cast<double>(points - 1);
      row[0] = static_cast<double>(t + 2);
      row[1] = x;
      for (std::size_t m = 0; m < modes.size(); ++m) row[m + 2] = modes[m].profile(t, x);
      w.row(row);
    }
  }
}

double coupling_strength(const TLRNetwork& net, const Eigenmode& a, const Eigenmode& b,
                         double tone_amplitude) {
  const double phi0 = kPhi0Reduced;
  const double pref = net.squid.E_J0() * std::sin(net.squid.Phi_dc / (2.0 * phi0)) /
                      (4.0 * phi0 * phi0 * phi0);
  // Cross term 2 phi^a phi^b of the square, times the co-rotating half of the cosine.
  return pref * tone_amplitude * a.zero_point_flux * b.zero_point_flux / kHbar;
}

ParametricCoupling parametric_coupling(const TLRNetwork& net, std::span<const Eigenmode> modes,
                                       const Tone& tone, double resonance_tol) {
  if (std::abs(tone.amplitude) >= 0.1 * std::abs(net.squid.Phi_dc))
    throw ValidityError("tone amplitude is not small against the dc flux bias");
  const double wp = net.squid.plasma_frequency();
  if (!(std::abs(tone.omega) < wp)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "tone at %.4g rad/s reaches the SQUID plasma frequency %.4g rad/s",
                  tone.omega, wp);
    throw ValidityError(buf);
  }
  ParametricCoupling best;
  double best_err = INFINITY;
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = 0; j < modes.size(); ++j) {
      if (!(modes[i].omega < modes[j].omega)) continue;
      const double det = tone.omega - (modes[j].omega - modes[i].omega);
      if (std::abs(det) < best_err) {
        best_err = std::abs(det);
        best.mode_low = i;
        best.mode_high = j;
        best.detuning = det;
      }
    }
  if (!(best_err <= resonance_tol)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "tone is %.4g rad/s away from the nearest mode splitting",
                  best_err);
    throw ValidityError(buf);
  }
  best.eta = coupling_strength(net, modes[best.mode_low], modes[best.mode_high], tone.amplitude);
  best.phase = tone.phase;
  return best;
}

TwoToneDrive TwoToneDrive::table_one(std::span<const Eigenmode> modes) {
  if (modes.size() != 3) throw ParameterError("expected three modes");
  TwoToneDrive d;
  d.hop23 = {0.005 * kPhi0, modes[1].omega - modes[0].omega, 0.0};
  d.hop24 = {0.015 * kPhi0, modes[2].omega - modes[0].omega, 0.0};
  return d;
}

std::array<ParametricCoupling, 2> two_tone_couplings(const TLRNetwork& net,
                                                     std::span<const Eigenmode> modes,
                                                     const TwoToneDrive& drive) {
  return {parametric_coupling(net, modes, drive.hop23), parametric_coupling(net, modes, drive.hop24)};
}

PlasmaReport plasma_guard(const SQUIDParams& squid, std::span<const double> freqs) {
  PlasmaReport r;
  r.omega_p = squid.plasma_frequency();
  r.tone_frequencies.assign(freqs.begin(), freqs.end());
  for (double w : freqs) {
    const double ratio = r.omega_p > 0.0 ? std::abs(w) / r.omega_p : INFINITY;
    r.ratios.push_back(ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  r.passed = r.omega_p > 0.0 && r.max_ratio < r.threshold;
  return r;
}

}  // namespace hqc
