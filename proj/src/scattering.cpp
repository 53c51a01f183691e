#include "mkdv/scattering.hpp"

#include "mkdv/errors.hpp"
#include "mkdv/fft.hpp"
#include "mkdv/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mkdv {

double ReflectionCoefficient::sup_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

double ReflectionCoefficient::symmetry_residual() const {
    const std::size_t n = values.size();
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(values[i] + std::conj(values[n - 1 - i])));
    return res;
}

double ReflectionCoefficient::edge_ratio() const {
    const double sup = sup_abs();
    if (sup == 0.0 || values.empty()) return 0.0;
    return std::max(std::abs(values.front()), std::abs(values.back())) / sup;
}

bool ReflectionCoefficient::uniform() const {
    if (zgrid.size() < 3) return false;
    const double dz = (zgrid.back() - zgrid.front()) / static_cast<double>(zgrid.size() - 1);
    for (std::size_t i = 1; i < zgrid.size(); ++i) {
        if (std::abs(zgrid[i] - zgrid[i - 1] - dz) > 1e-9 * dz) return false;
    }
    return true;
}

void ReflectionCoefficient::check_invariants(double tol_sym) const {
    const double sup = sup_abs();
    if (!(sup < 1.0)) {
        throw NumericalError(fmt::format("sup|r| = {:.6f} >= 1: convention or accuracy failure", sup));
    }
    const double sym = symmetry_residual();
    if (!(sym <= tol_sym)) {
        throw NumericalError(fmt::format("reflection symmetry residual {:.3e} exceeds {:.1e}", sym, tol_sym));
    }
}

CubicSpline ReflectionCoefficient::spline() const { return CubicSpline(zgrid, values); }

TrigInterpolant ReflectionCoefficient::trig_interpolant() const {
    if (!uniform()) throw InputError("spectral interpolation of r requires a uniform z grid");
    const double dz = (zgrid.back() - zgrid.front()) / static_cast<double>(zgrid.size() - 1);
    return TrigInterpolant(zgrid.front(), dz, values);
}

std::vector<double> uniform_zgrid(double z_max, std::size_t n) {
    if (n < 3 || !(z_max > 0.0)) throw InputError("z grid needs n >= 3 and z_max > 0");
    std::vector<double> z(n);
    const double dz = 2.0 * z_max / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        // Mirror the lower half exactly so the grid is symmetric bit-for-bit.
        const std::size_t j = std::min(i, n - 1 - i);
        const double zj = -z_max + static_cast<double>(j) * dz;
        z[i] = (i == j) ? zj : -zj;
    }
    if (n % 2 == 1) z[n / 2] = 0.0;
    return z;
}

void validate_symmetric_grid(std::span<const double> zgrid) {
    const std::size_t n = zgrid.size();
    if (n == 0) throw InputError("empty z grid");
    const double scale = std::max(std::abs(zgrid.front()), std::abs(zgrid.back()));
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(zgrid[i] > zgrid[i - 1])) throw InputError("z grid must be strictly increasing");
        if (std::abs(zgrid[i] + zgrid[n - 1 - i]) > 1e-14 * std::max(1.0, scale)) {
            throw InputError("z grid must be symmetric about 0");
        }
    }
}

namespace {

/// Band-limited interpolation of the periodic samples onto a grid 2^level finer.
std::vector<double> upsample(const SampledPotential& y0, int level) {
    const std::size_t n = y0.size();
    const std::size_t m = n << level;
    std::vector<double> out(m + 1);
    if (level == 0) {
        std::copy(y0.values.begin(), y0.values.end(), out.begin());
    } else {
        RealFft coarse(n);
        std::copy(y0.values.begin(), y0.values.end(), coarse.real_data().begin());
        coarse.forward();
        RealFft fine(m);
        auto dst = fine.spectrum();
        std::fill(dst.begin(), dst.end(), cdouble(0.0));
        const auto src = coarse.spectrum();
        const double scale = 1.0 / static_cast<double>(n);
        for (std::size_t k = 0; k <= n / 2; ++k) dst[k] = src[k] * scale;
        if (n % 2 == 0) dst[n / 2] *= 0.5;  // Nyquist mode splits between +-n/2
        fine.inverse();
        const auto r = fine.real_data();
        std::copy(r.begin(), r.end(), out.begin());
    }
    out[m] = out[0];  // periodic closure
    return out;
}

struct JostEnd {
    cdouble a;
    cdouble b;
};

/// RK4 for the conjugated Jost column (m1, n2):
///   m1' =  i y e^{ 2 i z x} n2,   n2' = -i y e^{-2 i z x} m1,
/// from (1, 0) at the left end. Uses samples y[0], y[stride], ... with the
/// RK4 midpoint at y[j + stride/2]; e[] holds e^{2 i z x_j} on the fine grid.
JostEnd integrate_jost(const std::vector<double>& y, const std::vector<cdouble>& e, std::size_t stride,
                       double step) {
    const cdouble I(0.0, 1.0);
    cdouble m1 = 1.0, n2 = 0.0;
    const std::size_t half = stride / 2;
    const double h2 = 0.5 * step;
    const double h6 = step / 6.0;
    auto rhs = [&](std::size_t j, cdouble p, cdouble q, cdouble& dp, cdouble& dq) {
        const cdouble iy = I * y[j];
        dp = iy * e[j] * q;
        dq = -iy * std::conj(e[j]) * p;
    };
    for (std::size_t j = 0; j + stride < y.size(); j += stride) {
        cdouble k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q;
        rhs(j, m1, n2, k1p, k1q);
        rhs(j + half, m1 + h2 * k1p, n2 + h2 * k1q, k2p, k2q);
        rhs(j + half, m1 + h2 * k2p, n2 + h2 * k2q, k3p, k3q);
        rhs(j + stride, m1 + step * k3p, n2 + step * k3q, k4p, k4q);
        m1 += h6 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        n2 += h6 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    }
    return {m1, n2};
}

void phase_table(double z, double x0, double h, std::vector<cdouble>& e) {
    const cdouble rot = std::polar(1.0, 2.0 * z * h);
    for (std::size_t j = 0; j < e.size(); ++j) {
        if ((j & 255) == 0) {
            e[j] = std::polar(1.0, 2.0 * z * (x0 + static_cast<double>(j) * h));
        } else {
            e[j] = e[j - 1] * rot;
        }
    }
}

}  // namespace

ReflectionCoefficient forward_scatter(const SampledPotential& y0, std::span<const double> zgrid,
                                      const ScatterConfig& cfg, ScatterDiagnostics* diag) {
    y0.validate(cfg.edge_rel);
    validate_symmetric_grid(zgrid);

    ReflectionCoefficient r;
    r.zgrid.assign(zgrid.begin(), zgrid.end());
    r.values.assign(zgrid.size(), 0.0);
    r.potential_hash = potential_hash(y0);
    if (y0.max_abs() == 0.0) {
        if (diag) *diag = {};
        return r;
    }

    const double z_abs_max = std::max(std::abs(zgrid.front()), std::abs(zgrid.back()));
    // Initial level: at least 2 (so the coarse stride-4 pass exists) and a
    // fine RK4 step that turns the phase e^{2izx} by at most ~0.5 rad.
    int level = 2;
    while (2.0 * z_abs_max * 2.0 * y0.spacing / std::ldexp(1.0, level) > 0.5 && level < 12) ++level;

    const double length = y0.length();
    const double tol = cfg.tol_per_length * length;
    std::vector<cdouble> fine(zgrid.size()), coarse(zgrid.size());
    std::vector<double> defect(zgrid.size());

    for (int attempt = 0; attempt <= cfg.max_refinements; ++attempt, ++level) {
        const std::vector<double> y = upsample(y0, level);
        const double h = y0.spacing / std::ldexp(1.0, level);
        parallel_for(
            zgrid.size(),
            [&](std::size_t i) {
                std::vector<cdouble> e(y.size());
                phase_table(zgrid[i], y0.grid_start, h, e);
                const JostEnd f = integrate_jost(y, e, 2, 2.0 * h);
                const JostEnd c = integrate_jost(y, e, 4, 4.0 * h);
                fine[i] = f.b / f.a;
                coarse[i] = c.b / c.a;
                defect[i] = std::abs(std::norm(f.a) - std::norm(f.b) - 1.0);
            },
            cfg.threads);
        double err = 0.0;
        for (std::size_t i = 0; i < zgrid.size(); ++i) err = std::max(err, std::abs(fine[i] - coarse[i]) / 15.0);
        if (err <= tol || attempt == cfg.max_refinements) {
            if (err > tol) {
                throw NumericalError(fmt::format(
                    "forward scattering did not reach tolerance {:.1e}: Richardson estimate {:.3e} at step {:.3e}",
                    tol, err, 2.0 * h));
            }
            for (std::size_t i = 0; i < zgrid.size(); ++i) r.values[i] = fine[i] + (fine[i] - coarse[i]) / 15.0;
            if (diag) {
                diag->upsample_level = level;
                diag->step = 2.0 * h;
                diag->richardson_error = err;
                diag->determinant_defect = *std::max_element(defect.begin(), defect.end());
            }
            break;
        }
    }
    r.check_invariants(cfg.tol_sym);
    return r;
}

ReflectionCoefficient born_approximation(const SampledPotential& y0, std::span<const double> zgrid) {
    y0.validate();
    validate_symmetric_grid(zgrid);
    ReflectionCoefficient r;
    r.zgrid.assign(zgrid.begin(), zgrid.end());
    r.values.resize(zgrid.size());
    r.potential_hash = potential_hash(y0);
    std::vector<cdouble> e(y0.size());
    for (std::size_t i = 0; i < zgrid.size(); ++i) {
        phase_table(-zgrid[i], y0.grid_start, y0.spacing, e);
        cdouble acc = 0.0;
        for (std::size_t j = 0; j < y0.size(); ++j) acc += y0.values[j] * e[j];
        r.values[i] = cdouble(0.0, -1.0) * acc * y0.spacing;
    }
    return r;
}

ReflectionCoefficient forward_scatter_auto(const SampledPotential& y0, std::size_t n, const ScatterConfig& cfg,
                                           ScatterDiagnostics* diag) {
    y0.validate(cfg.edge_rel);
    // Locate the decay edge cheaply with the Born transform, then verify on
    // the nonlinear coefficient and extend if needed.
    const double nyquist_z = std::numbers::pi / (2.0 * y0.spacing);
    double z_max = 2.0;
    {
        std::vector<double> probe = uniform_zgrid(std::min(nyquist_z, 60.0), 1201);
        const ReflectionCoefficient born = born_approximation(y0, probe);
        const double sup = born.sup_abs();
        if (sup > 0.0) {
            for (std::size_t i = probe.size() / 2; i < probe.size(); ++i) {
                if (std::abs(born.values[i]) > 1e-11 * sup) z_max = std::max(z_max, probe[i] * 1.05);
            }
        }
    }
    for (int attempt = 0; attempt < 8; ++attempt) {
        ReflectionCoefficient r = forward_scatter(y0, uniform_zgrid(z_max, n), cfg, diag);
        if (r.edge_ratio() < 1e-10) return r;
        z_max *= 1.25;
    }
    throw NumericalError("reflection coefficient does not decay to 1e-10 * sup|r| within the resolvable band");
}

}  // namespace mkdv
