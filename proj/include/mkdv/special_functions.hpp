#pragma once

#include <complex>

namespace mkdv {

/// log Gamma(z) for Re z > 0 by a Lanczos rational approximation
/// (g = 607/128, 14 terms). The imaginary part is the continuous branch
/// that vanishes on the positive real axis.
std::complex<double> log_gamma(std::complex<double> z);

/// Im log Gamma(i nu) for nu > 0, continuous in nu, tending to -pi/2 as nu -> 0+.
/// Agrees with the principal argument of Gamma(i nu) modulo 2 pi.
double arg_gamma_imag(double nu);

/// The same angle reduced to (-pi, pi].
double arg_gamma_imag_principal(double nu);

/// Reduces an angle to (-pi, pi].
double wrap_angle(double a);

struct AiryValue {
    double ai;
    double dai;
};

/// Airy function Ai and its derivative: Maclaurin series in extended
/// precision for |s| <= 8, asymptotic expansions beyond.
AiryValue airy_ai(double s);

}  // namespace mkdv
