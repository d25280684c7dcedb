#include "hqc/bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hqc/errors.hpp"

namespace hqc {

namespace {

constexpr double kSeriesLimit = 8.0;

// Ascending power series; accurate while the largest term stays modest.
double bessel_series(int m, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= m; ++k) term *= half / k;
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + m));
    sum += term;
    if (term == 0.0 || std::abs(term) < 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's downward recurrence normalised by J0 + 2 sum J_{2k} = 1.
double bessel_miller(int m, double x) {
  const double ax = std::abs(x);
  int start = static_cast<int>(std::max<double>(m, ax)) + 60;
  start += start % 2;
  double next = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k
  double norm = 0.0;
  double wanted = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = 2.0 * k / ax * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == m) wanted = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      next *= 1e-250;
      cur *= 1e-250;
      norm *= 1e-250;
      wanted *= 1e-250;
    }
  }
  norm += cur;  // J0
  double value = wanted / norm;
  if (x < 0.0 && m % 2 == 1) value = -value;
  return value;
}

double bisect(auto&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0) throw ParameterError("bessel_j: order must be non-negative");
  if (!(std::abs(x) <= 50.0)) throw ParameterError("bessel_j: |x| must not exceed 50");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (std::abs(x) <= kSeriesLimit) return bessel_series(order, x);
  return bessel_miller(order, x);
}

double bessel_j_signed(int order, double x) {
  if (order >= 0) return bessel_j(order, x);
  const double v = bessel_j(-order, x);
  return (order % 2 == 0) ? v : -v;
}

double solve_equal_bessel() {
  return bisect([](double x) { return bessel_j(0, x) - bessel_j(1, x); }, 1.0, 2.0, 1e-14);
}

double solve_alpha_for_theta(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw ParameterError("solve_alpha_for_theta: theta must lie in (0, pi), got " +
                         std::to_string(theta));
  }
  constexpr double kUpper = 2.4;
  const double target = std::tan(0.5 * theta);
  auto f = [target](double x) { return bessel_j(1, x) / bessel_j(0, x) - target; };
  if (f(kUpper) < 0.0) {
    throw ParameterError("solve_alpha_for_theta: theta " + std::to_string(theta) +
                         " needs alpha beyond the first zero of J0");
  }
  return bisect(f, 0.0, kUpper, 1e-14);
}

}  // namespace hqc
