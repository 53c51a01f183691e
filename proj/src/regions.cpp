#include "mkdv/regions.hpp"

#include "mkdv/asymptotics.hpp"
#include "mkdv/errors.hpp"
#include "mkdv/special_functions.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <limits>

namespace mkdv {

namespace {

constexpr std::array<std::string_view, 6> kNames = {"I", "II", "III", "IV", "V", "VI"};

}  // namespace

std::string_view region_name(Region r) { return kNames[static_cast<std::size_t>(r) - 1]; }

Region parse_region(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<Region>(i + 1);
    throw InputError(fmt::format("unknown region '{}'", name));
}

void RegionConfig::validate() const {
    for (double v : {M, C, tau_lo, tau_hi, c, t_min}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("region thresholds must be positive and finite");
    }
    if (!(tau_lo < tau_hi)) throw InputError("region thresholds require tau_lo < tau_hi");
}

double tau_of(double x, double t) { return std::pow(std::abs(x) / (12.0 * std::cbrt(t)), 1.5); }

Region classify(double x, double t, const RegionConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(x) || !std::isfinite(t)) throw InputError("classify: non-finite (x, t)");
    if (t < cfg.t_min) throw InputError(fmt::format("classify: t = {} is below t_min = {}", t, cfg.t_min));
    if (x >= cfg.c * t) return Region::VI;
    if (std::abs(x) <= cfg.C * std::cbrt(t)) return Region::IV;
    if (x > 0.0) return Region::V;
    if (tau_of(x, t) <= cfg.tau_hi) return Region::III;
    if (x > -cfg.M * t) return Region::II;
    return Region::I;
}

ErrorDescriptor error_descriptor(Region r) {
    switch (r) {
        case Region::I:
            return {"O((-x)^{-j} + (-x)^{-3/4} C_j(-x/t))", "any j; C_j rapidly decreasing, not explicit"};
        case Region::II:
            return {"(t z0)^{-1/2} O(tau^{-1/4})", ""};
        case Region::III:
            return {"O(tau^{2/3} / t^{2/3})", ""};
        case Region::IV:
            return {"O(t^{-2/3})", ""};
        case Region::V:
            return {"O(t^{-j} + t^{-2/3} exp(-12 eta tau^{2/3}))", "any j; some eta > 0, not explicit"};
        case Region::VI:
            return {"O((x+t)^{-j})", "any j"};
    }
    return {};
}

double descriptor_scale(Region r, double x, double t) {
    const double tau = tau_of(x, t);
    switch (r) {
        case Region::II: {
            const double z0 = std::sqrt(std::abs(x) / (12.0 * t));
            return std::pow(t * z0, -0.5) * std::pow(tau, -0.25);
        }
        case Region::III:
            return std::pow(tau, 2.0 / 3.0) * std::pow(t, -2.0 / 3.0);
        case Region::IV:
            return std::pow(t, -2.0 / 3.0);
        default:
            return std::numeric_limits<double>::quiet_NaN();
    }
}

namespace {


}  // namespace

AsymptoticPrediction predict(double x, double t, const ReflectionCoefficient& r, const PainleveProfile& profile,
                             const RegionConfig& cfg) {
    AsymptoticPrediction out;
    out.region = classify(x, t, cfg);
    out.error = error_descriptor(out.region);
    out.scale = descriptor_scale(out.region, x, t);
    switch (out.region) {
        case Region::I:
        case Region::II:
            out.value = y_a_eval(x, t, r).y_a;
            break;
        case Region::III:
        case Region::IV:
        case Region::V:
            out.value = similarity_eval_tail(x, t, profile);
            break;
        case Region::VI:
            out.value = 0.0;
            break;
    }
    if (!std::isfinite(out.value)) throw NumericalError(fmt::format("prediction at ({}, {}) is not finite", x, t));
    return out;
}

double default_pii_parameter(const ReflectionCoefficient& r) {
    const cdouble r0 = r.uniform() ? r.trig_interpolant().value(0.0) : r.spline()(0.0);
    return (cdouble(0.0, 1.0) * r0).real();
}

std::vector<OverlapSample> overlap_ii_iii(double t, const ReflectionCoefficient& r, const PainleveProfile& profile,
                                          const RegionConfig& cfg, std::size_t samples) {
    cfg.validate();
    if (samples < 2) throw InputError("overlap_ii_iii: needs at least two samples");
    std::vector<OverlapSample> out;
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau = cfg.tau_lo * std::pow(cfg.tau_hi / cfg.tau_lo, static_cast<double>(i) / (samples - 1.0));
        // tau = t z0^3 and x = -12 t z0^2
        const double z0 = std::cbrt(tau / t);
        const double x = -12.0 * t * z0 * z0;
        OverlapSample s;
        s.x = x;
        s.tau = tau;
        s.y_a = y_a_eval(x, t, r).y_a;
        s.similarity = similarity_eval_tail(x, t, profile);
        s.difference = std::abs(s.y_a - s.similarity);
        s.scale_ii = descriptor_scale(Region::II, x, t);
        s.scale_iii = descriptor_scale(Region::III, x, t);
        out.push_back(s);
    }
    return out;
}

}  // namespace mkdv
