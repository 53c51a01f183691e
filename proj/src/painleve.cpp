#include "mkdv/painleve.hpp"

#include "mkdv/errors.hpp"
#include "mkdv/special_functions.hpp"

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include <array>
#include <cmath>

namespace mkdv {

namespace {

using State = std::array<double, 2>;

struct BlowUp {
    double s;
};

}  // namespace

double PainleveProfile::operator()(double s) const {
    if (!contains(s)) {
        throw InputError(fmt::format("Painleve profile covers [{}, {}], requested s = {}", s_min(), s_max(), s));
    }
    const double ds = sgrid[0] - sgrid[1];
    auto i = static_cast<std::size_t>((sgrid[0] - s) / ds);
    if (i + 1 >= sgrid.size()) i = sgrid.size() - 2;
    // Hermite cubic on [s_{i+1}, s_i] in the descending grid.
    const double a = sgrid[i + 1], h = sgrid[i] - a;
    const double u = (s - a) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * p[i + 1] + h10 * h * dp[i + 1] + h01 * p[i] + h11 * h * dp[i];
}

double PainleveProfile::residual_at(std::size_t i) const {
    const double ds = sgrid[0] - sgrid[1];
    const double d2 = (-p[i - 2] + 16 * p[i - 1] - 30 * p[i] + 16 * p[i + 1] - p[i + 2]) / (12 * ds * ds);
    return d2 - sgrid[i] * p[i] - 2 * p[i] * p[i] * p[i];
}

double pii_default_s_max(double k) {
    double s = 2.0;
    while (std::abs(k) * airy_ai(s).ai >= 1e-10 && s < 40.0) s += 0.25;
    return s;
}

PainleveProfile solve_pii(double k, double s_min, double s_max, const PiiConfig& cfg) {
    if (!(std::abs(k) < 1.0)) throw InputError(fmt::format("solve_pii: |k| = {} is outside the Ablowitz-Segur range", std::abs(k)));
    if (!(s_min < s_max) || !std::isfinite(s_min) || !std::isfinite(s_max)) throw InputError("solve_pii: requires s_min < s_max");
    if (!(cfg.ds > 0.0)) throw InputError("solve_pii: requires ds > 0");
    const AiryValue seed = airy_ai(s_max);
    if (!(std::abs(k * seed.ai) < 1e-10))
        throw InputError(fmt::format("solve_pii: |k Ai(s_max)| = {:.3e} is not below 1e-10", std::abs(k * seed.ai)));

    PainleveProfile prof;
    prof.k = k;
    const auto steps = static_cast<std::size_t>(std::ceil((s_max - s_min) / cfg.ds - 1e-9));
    const double ds = (s_max - s_min) / static_cast<double>(steps);
    prof.sgrid.resize(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) prof.sgrid[i] = s_max - ds * static_cast<double>(i);
    prof.sgrid.back() = s_min;

    namespace ode = boost::numeric::odeint;
    auto rhs = [](const State& y, State& dy, double s) {
        dy[0] = y[1];
        dy[1] = s * y[0] + 2.0 * y[0] * y[0] * y[0];
    };
    State y = {k * seed.ai, k * seed.dai};
    const double bound = cfg.blowup;
    auto observe = [&](const State& st, double s) {
        if (!std::isfinite(st[0]) || std::abs(st[0]) > bound) throw BlowUp{s};
        prof.p.push_back(st[0]);
        prof.dp.push_back(st[1]);
    };
    auto stepper = ode::make_dense_output(cfg.abs_tol, cfg.rel_tol, ode::runge_kutta_dopri5<State>());
    try {
        ode::integrate_times(stepper, rhs, y, prof.sgrid.begin(), prof.sgrid.end(), -ds, observe);
    } catch (const BlowUp& b) {
        throw NumericalError(fmt::format("Painleve II solution with k = {} blows up near s = {}", k, b.s));
    }
    if (prof.p.size() != prof.sgrid.size()) throw NumericalError("solve_pii: integration stopped early");
    prof.seed_defect = std::abs(prof.p.front() - k * seed.ai);
    for (std::size_t i = 2; i + 2 < prof.p.size(); ++i)
        prof.residual_norm = std::max(prof.residual_norm, std::abs(prof.residual_at(i)));
    return prof;
}

double similarity_variable(double x, double t) {
    if (!(t > 0.0)) throw InputError("similarity form requires t > 0");
    return x / std::cbrt(3.0 * t);
}

double similarity_eval(double x, double t, const PainleveProfile& profile) {
    const double s = similarity_variable(x, t);
    if (!profile.contains(s)) {
        throw InputError(fmt::format("similarity_eval: s = {} outside the profile [{}, {}]; extend the profile to cover it",
                                     s, profile.s_min(), profile.s_max()));
    }
    return profile(s) / std::cbrt(3.0 * t);
}

double similarity_eval_tail(double x, double t, const PainleveProfile& profile) {
    const double s = similarity_variable(x, t);
    if (!profile.sgrid.empty() && s > profile.s_max()) return profile.k * airy_ai(s).ai / std::cbrt(3.0 * t);
    return similarity_eval(x, t, profile);
}

}  // namespace mkdv
