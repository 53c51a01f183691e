#pragma once

#include "mkdv/interpolation.hpp"
#include "mkdv/scattering.hpp"

#include <functional>

namespace mkdv {

/// Stationary point z0 = sqrt(|x| / 12 t) of theta(z) = 4 t z^3 + x z.
struct PhasePoint {
    double x = 0.0;
    double t = 0.0;
    double z0 = 0.0;
    double tau = 0.0;

    double theta(double z) const { return 4.0 * t * z * z * z + x * z; }
    double dtheta(double z) const { return 12.0 * t * z * z + x; }
    /// |tau - (|x| / 12 t^{1/3})^{3/2}| / tau.
    double tau_consistency() const;
};

PhasePoint stationary_point(double x, double t);

/// nu = -log(1 - |r|^2) / (2 pi).
double nu_of(cdouble r_val);

struct PhiConfig {
    /// Geometric panels toward the logarithmic endpoint.
    int levels = 52;
    double tol = 1e-8;
};

struct PhiTerms {
    double nu = 0.0;
    double arg_gamma = 0.0;
    double arg_r = 0.0;
    /// (1/pi) integral_{-z0}^{z0} log|s - z0| d/ds log(1 - |r(s)|^2) ds
    double integral = 0.0;
    double error_estimate = 0.0;
    /// arg_gamma - pi/4 - arg_r + integral, reduced to (-pi, pi].
    double phi = 0.0;
    bool degenerate = false;
};

/// (1/pi) integral_{-z0}^{z0} log|s - z0| g(s) ds for smooth g, on panels graded
/// geometrically toward s = z0. The estimate compares 16-point Gauss panels with
/// their bisection; exceeding cfg.tol throws NumericalError.
double log_weighted_integral(const std::function<double(double)>& g, double z0, const PhiConfig& cfg = {},
                             double* error_estimate = nullptr);

/// Phase constant phi(z0). r is read through its trigonometric interpolant on a
/// uniform grid (cubic spline otherwise); the derivative of |r|^2 is spectral.
/// If r(z0) == 0 the result is flagged degenerate with nu = 0.
PhiTerms phase_phi(const ReflectionCoefficient& r, double z0, const PhiConfig& cfg = {});

struct AsymptoticParams {
    PhasePoint point;
    double nu = 0.0;
    double phi = 0.0;
    double amplitude = 0.0;
    double total_phase = 0.0;
    double y_a = 0.0;
    bool degenerate = false;
};

/// y_a = sqrt(nu / 3 t z0) cos(16 t z0^3 - nu log(192 t z0^3) + phi).
AsymptoticParams y_a_from(double nu, double z0, double t, double phi);

AsymptoticParams y_a_eval(double x, double t, const ReflectionCoefficient& r, const PhiConfig& cfg = {});

/// z = z_hat (48 t z0)^{-1/2} + branch * z0 with branch = +1 or -1.
double scale_map(double z_hat, double x, double t, int branch);
double scale_map_inverse(double z, double x, double t, int branch);

}  // namespace mkdv
