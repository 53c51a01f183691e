#include "mkdv/asymptotics.hpp"

#include "mkdv/errors.hpp"
#include "mkdv/special_functions.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace mkdv {

double PhasePoint::tau_consistency() const {
    if (tau == 0.0) return 0.0;
    const double alt = std::pow(std::abs(x) / (12.0 * std::cbrt(t)), 1.5);
    return std::abs(tau - alt) / tau;
}

PhasePoint stationary_point(double x, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("stationary_point: requires t > 0");
    if (!(x < 0.0) || !std::isfinite(x)) throw InputError("stationary_point: requires x < 0");
    PhasePoint p;
    p.x = x;
    p.t = t;
    p.z0 = std::sqrt(-x / (12.0 * t));
    p.tau = t * p.z0 * p.z0 * p.z0;
    return p;
}

double nu_of(cdouble r_val) {
    const double a2 = std::norm(r_val);
    if (!(a2 < 1.0)) throw InputError(fmt::format("nu_of: |r| = {} is not below 1", std::sqrt(a2)));
    return -std::log1p(-a2) / (2.0 * std::numbers::pi);
}

namespace {

using Gauss16 = boost::math::quadrature::gauss<double, 16>;

// sum over [a, b] of log(u) g(z0 - u) with a 16-point rule
double panel_sum(const std::function<double(double)>& g, double z0, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const auto& x = Gauss16::abscissa();
    const auto& w = Gauss16::weights();
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sign : {-1.0, 1.0}) {
            if (x[i] == 0.0 && sign < 0) continue;
            const double u = c + sign * h * x[i];
            s += w[i] * std::log(u) * g(z0 - u);
        }
    }
    return s * h;
}

}  // namespace

double log_weighted_integral(const std::function<double(double)>& g, double z0, const PhiConfig& cfg,
                             double* error_estimate) {
    if (!(z0 > 0.0)) throw InputError("log_weighted_integral: requires z0 > 0");
    // u = z0 - s runs over (0, 2 z0]; panels [2 z0 2^{-k-1}, 2 z0 2^{-k}].
    double coarse = 0.0, fine = 0.0;
    double hi = 2.0 * z0;
    for (int k = 0; k < cfg.levels; ++k) {
        const double lo = 0.5 * hi;
        coarse += panel_sum(g, z0, lo, hi);
        const double mid = 0.5 * (lo + hi);
        fine += panel_sum(g, z0, lo, mid) + panel_sum(g, z0, mid, hi);
        hi = lo;
    }
    // The omitted piece [0, hi] is bounded by hi (|log hi| + 1) max|g|.
    const double g0 = std::abs(g(z0));
    const double tail = hi * (std::abs(std::log(hi)) + 1.0) * g0;
    const double err = (std::abs(fine - coarse) + tail) / std::numbers::pi;
    if (error_estimate) *error_estimate = err;
    if (!(err <= cfg.tol) || !std::isfinite(fine))
        throw NumericalError(fmt::format("phase integral did not converge: estimate {:.3e} > {:.3e}", err, cfg.tol));
    return fine / std::numbers::pi;
}

PhiTerms phase_phi(const ReflectionCoefficient& r, double z0, const PhiConfig& cfg) {
    if (!(z0 > 0.0)) throw InputError("phase_phi: requires z0 > 0");
    if (r.size() < 4 || z0 >= r.zgrid.back() || -z0 <= r.zgrid.front())
        throw InputError(fmt::format("phase_phi: z0 = {} outside the reflection grid", z0));
    PhiTerms out;
    std::function<cdouble(double)> r_at;
    std::function<double(double)> dlog;
    if (r.uniform()) {
        const double dz = (r.zgrid.back() - r.zgrid.front()) / static_cast<double>(r.size() - 1);
        const TrigInterpolant ri(r.zgrid.front(), dz, r.values);
        std::vector<cdouble> mod2(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) mod2[i] = std::norm(r.values[i]);
        const TrigInterpolant mi(r.zgrid.front(), dz, mod2);
        r_at = [ri](double z) { return ri.value(z); };
        dlog = [ri, mi](double s) {
            const double m = std::norm(ri.value(s));
            return -mi.derivative(s).real() / (1.0 - m);
        };
    } else {
        const CubicSpline sp = r.spline();
        r_at = [sp](double z) { return sp(z); };
        dlog = [sp](double s) {
            const double h = 1e-5;
            const double mp = std::norm(sp(s + h)), mm = std::norm(sp(s - h));
            return -(mp - mm) / (2.0 * h) / (1.0 - std::norm(sp(s)));
        };
    }
    const cdouble r0 = r_at(z0);
    if (std::abs(r0) == 0.0) {
        out.degenerate = true;
        return out;
    }
    out.nu = nu_of(r0);
    out.arg_gamma = arg_gamma_imag(out.nu);
    out.arg_r = std::arg(r0);
    out.integral = log_weighted_integral(dlog, z0, cfg, &out.error_estimate);
    out.phi = wrap_angle(out.arg_gamma - 0.25 * std::numbers::pi - out.arg_r + out.integral);
    return out;
}

AsymptoticParams y_a_from(double nu, double z0, double t, double phi) {
    AsymptoticParams a;
    a.nu = nu;
    a.phi = phi;
    a.amplitude = std::sqrt(nu / (3.0 * t * z0));
    const double tz3 = t * z0 * z0 * z0;
    a.total_phase = 16.0 * tz3 - nu * std::log(192.0 * tz3) + phi;
    a.y_a = a.amplitude * std::cos(a.total_phase);
    return a;
}

AsymptoticParams y_a_eval(double x, double t, const ReflectionCoefficient& r, const PhiConfig& cfg) {
    const PhasePoint p = stationary_point(x, t);
    const PhiTerms ph = phase_phi(r, p.z0, cfg);
    AsymptoticParams a;
    if (ph.degenerate) {
        a.degenerate = true;
    } else {
        a = y_a_from(ph.nu, p.z0, t, ph.phi);
    }
    a.point = p;
    return a;
}

double scale_map(double z_hat, double x, double t, int branch) {
    const PhasePoint p = stationary_point(x, t);
    if (branch != 1 && branch != -1) throw InputError("scale_map: branch must be +1 or -1");
    return z_hat / std::sqrt(48.0 * t * p.z0) + branch * p.z0;
}

double scale_map_inverse(double z, double x, double t, int branch) {
    const PhasePoint p = stationary_point(x, t);
    if (branch != 1 && branch != -1) throw InputError("scale_map_inverse: branch must be +1 or -1");
    return (z - branch * p.z0) * std::sqrt(48.0 * t * p.z0);
}

}  // namespace mkdv
