#pragma once

namespace hqc {

/// Bessel function of the first kind J_m(x) for integer order m >= 0 and
/// |x| <= 50. Absolute error <= 1e-10 over that range.
double bessel_j(int order, double x);

/// J_m(x) for any integer m, using J_{-m} = (-1)^m J_m.
double bessel_j_signed(int order, double x);

/// Root of J0(x) - J1(x) in (1, 2): the modulation index at which the carrier
/// and first sideband carry equal weight (about 1.4347).
double solve_equal_bessel();

/// Modulation index alpha in (0, 2.4) with J1(alpha)/J0(alpha) = tan(theta/2).
/// Throws ParameterError unless theta lies in (0, pi) and the root stays
/// below the first zero of J0.
double solve_alpha_for_theta(double theta);

}  // namespace hqc
