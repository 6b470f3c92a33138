#ifndef PHOTAM_SPECIAL_HPP
#define PHOTAM_SPECIAL_HPP

namespace photam {

/// Error function, implemented locally (Maclaurin series for |x| <= 2, the
/// Laplace continued fraction for erfc beyond), accurate to ~1e-15.
double erf_local(double x);

/// f(a) = (1 - 2a) erf(1/(2 sqrt(a))) + 2 sqrt(a) e^{-1/(4a)} / sqrt(pi).
/// Mean of S_z (and S'_z) on the circularly polarized Gaussian state.
/// Throws NonPositiveA for a <= 0.
double f_of_a(double a);

/// Location of the crossing f(a) = 1/2, found by bisection.
double f_half_crossing();

}  // namespace photam

#endif
