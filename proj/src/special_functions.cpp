#include "mkdv/special_functions.hpp"

#include "mkdv/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace mkdv {

namespace {

constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,  -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

constexpr long double kAiry0 = 0.355028053887817239260063186004183176L;   // Ai(0)
constexpr long double kAiryP0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)
constexpr double kAirySwitch = 8.0;

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw InputError("log_gamma: requires Re z > 0");
    const std::complex<double> tmp = z + 5.24218750000000000;
    std::complex<double> ser = 0.999999999999997092;
    std::complex<double> y = z;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return (z + 0.5) * std::log(tmp) - tmp + std::log(2.5066282746310005 * ser / z);
}

double arg_gamma_imag(double nu) {
    if (!(nu > 0.0)) throw InputError("arg_gamma_imag: requires nu > 0");
    // Gamma(i nu) = Gamma(1 + i nu) / (i nu); arg(i nu) = pi/2.
    return log_gamma({1.0, nu}).imag() - 0.5 * std::numbers::pi;
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

double arg_gamma_imag_principal(double nu) { return wrap_angle(arg_gamma_imag(nu)); }

AiryValue airy_ai(double s) {
    if (s > 1.0 && s <= kAirySwitch) {
        // Ai(s) = sqrt(s/3) K_{1/3}(zeta) / pi avoids the series cancellation.
        const double zeta = 2.0 / 3.0 * s * std::sqrt(s);
        const double ai = std::sqrt(s / 3.0) * std::cyl_bessel_k(1.0 / 3.0, zeta) / std::numbers::pi;
        const double dai = -s / (std::sqrt(3.0) * std::numbers::pi) * std::cyl_bessel_k(2.0 / 3.0, zeta);
        return {ai, dai};
    }
    if (std::abs(s) <= kAirySwitch) {
        using ld = long double;
        const ld x = s;
        const ld x3 = x * x * x;
        ld f = 1, fp = 0, g = x, gp = 1;
        ld tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
        fp = tfp;
        for (int k = 0; k < 200; ++k) {
            const ld kk = k;
            tf *= x3 / ((3 * kk + 2) * (3 * kk + 3));
            tg *= x3 / ((3 * kk + 3) * (3 * kk + 4));
            tgp *= x3 / ((3 * kk + 3) * (3 * kk + 1));
            if (k > 0) tfp *= x3 / ((3 * kk + 2) * (3 * kk));
            f += tf;
            g += tg;
            gp += tgp;
            if (k > 0) fp += tfp;
            const ld mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
            if (mag < 1e-22L * (std::fabs(f) + std::fabs(g) + 1e-300L) && k > 2) break;
        }
        const ld c1 = kAiry0, c2 = kAiryP0;
        return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
    }
    const double x = std::abs(s);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double x14 = std::sqrt(std::sqrt(x));
    // u_k, v_k coefficients of the Airy asymptotic series.
    std::array<double, 64> u{}, v{};
    u[0] = v[0] = 1.0;
    for (int k = 1; k < 64; ++k) {
        const double kk = k;
        u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
        v[k] = -(6 * kk + 1) / (6 * kk - 1) * u[k];
    }
    if (s > 0) {
        double su = 0, sv = 0, zk = 1, prev = INFINITY;
        for (int k = 0; k < 64; ++k) {
            const double tu = u[k] / zk;
            if (std::abs(tu) > prev) break;
            prev = std::abs(tu);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            su += sign * tu;
            sv += sign * v[k] / zk;
            zk *= zeta;
        }
        const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
        return {e / x14 * su, -e * x14 * sv};
    }
    // Oscillatory side, s = -x.
    double pu = 0, qu = 0, pv = 0, qv = 0, prev = INFINITY;
    double zk = 1;
    for (int k = 0; k < 63; k += 2) {
        const double t0 = u[k] / zk;
        const double t1 = u[k + 1] / (zk * zeta);
        if (std::abs(t0) > prev) break;
        prev = std::abs(t1);
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        pu += sign * t0;
        qu += sign * t1;
        pv += sign * v[k] / zk;
        qv += sign * v[k + 1] / (zk * zeta);
        zk *= zeta * zeta;
    }
    const double ph = zeta - 0.25 * std::numbers::pi;
    const double c = std::cos(ph), sn = std::sin(ph);
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    return {norm / x14 * (c * pu + sn * qu), norm * x14 * (sn * pv - c * qv)};
}

}  // namespace mkdv
