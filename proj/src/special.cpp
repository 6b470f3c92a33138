#include "photam/special.hpp"

#include <cmath>
#include <limits>

#include "photam/errors.hpp"

namespace photam {

namespace {

const double kTwoOverSqrtPi = 1.1283791670955125738961589031;

// erf through the positive-term confluent series
//   erf(x) = (2/sqrt(pi)) e^{-x^2} sum_n (2x^2)^n x / (2n+1)!!
// (no alternating cancellation); used for |x| <= 2.5.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return kTwoOverSqrtPi * std::exp(-x2) * sum;
}

// erfc via the Laplace continued fraction
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x+) (1/2)/(x+) (1)/(x+) (3/2)/(x+) ...
// evaluated by the modified Lentz method; used for x >= 2.
double erfc_cf(double x) {
  const double tiny = 1e-300;
  double c = 1.0 / tiny;
  double d = 1.0 / x;
  double h = d;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / std::sqrt(M_PI) * h;
}

}  // namespace

double erf_local(double x) {
  const double ax = std::abs(x);
  double r;
  if (ax <= 2.5)
    r = erf_series(ax);
  else if (ax >= 27.0)
    r = 1.0;  // erfc underflows double
  else
    r = 1.0 - erfc_cf(ax);
  return x < 0.0 ? -r : r;
}

double f_of_a(double a) {
  if (!(a > 0.0)) throw NonPositiveA();
  const double sa = std::sqrt(a);
  const double expo = -1.0 / (4.0 * a);
  const double etail = expo < -745.0 ? 0.0 : std::exp(expo);
  return (1.0 - 2.0 * a) * erf_local(1.0 / (2.0 * sa)) + 2.0 * sa * etail / std::sqrt(M_PI);
}

double f_half_crossing() {
  double lo = 0.3, hi = 0.6;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f_of_a(mid) > 0.5)
      lo = mid;  // f decreasing in a
    else
      hi = mid;
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace photam
