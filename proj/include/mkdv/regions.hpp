#pragma once

#include "mkdv/painleve.hpp"
#include "mkdv/scattering.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mkdv {

enum class Region { I = 1, II, III, IV, V, VI };

std::string_view region_name(Region r);
Region parse_region(std::string_view name);

struct RegionConfig {
    /// Region I: x <= -M t.
    double M = 1.0;
    /// Regions III/IV similarity half-width: |x| <= C t^{1/3}.
    double C = 1.0;
    /// tau band [tau_lo, tau_hi] where the II and III forms are compared; tau_hi separates II from III.
    double tau_lo = 1.0;
    double tau_hi = 10.0;
    /// Region VI: x >= c t.
    double c = 1.0;
    double t_min = 1.0;

    /// Throws InputError unless all thresholds are positive and tau_lo < tau_hi.
    void validate() const;
};

/// tau = (|x| / 12 t^{1/3})^{3/2}, which equals t z0^3 for x < 0.
double tau_of(double x, double t);

/// Ordered rule chain, first match wins: VI (x >= c t), IV (|x| <= C t^{1/3}),
/// V (0 < x < c t), III (x < 0, tau <= tau_hi), II (x > -M t), I.
Region classify(double x, double t, const RegionConfig& cfg = {});

struct ErrorDescriptor {
    std::string order;
    /// Non-constructive constants in the bound.
    std::string notes;
};

ErrorDescriptor error_descriptor(Region r);

/// Size of the constructive part of the error bound at (x, t): II, III and IV;
/// NaN for regions whose bound involves an arbitrary order j.
double descriptor_scale(Region r, double x, double t);

struct AsymptoticPrediction {
    Region region = Region::VI;
    double value = 0.0;
    ErrorDescriptor error;
    double scale = 0.0;
};

/// Leading-order value for the classified region: y_a (I, II), the similarity
/// form (III, IV, V) and 0 (VI). For s beyond the profile's s_max the similarity
/// form uses the Airy tail k Ai(s), which agrees with p there to 1e-10.
AsymptoticPrediction predict(double x, double t, const ReflectionCoefficient& r, const PainleveProfile& profile,
                             const RegionConfig& cfg = {});

/// Default Painleve parameter from the linear limit, k = i r(0) (real by symmetry).
double default_pii_parameter(const ReflectionCoefficient& r);

struct OverlapSample {
    double x = 0.0;
    double tau = 0.0;
    double y_a = 0.0;
    double similarity = 0.0;
    double difference = 0.0;
    double scale_ii = 0.0;
    double scale_iii = 0.0;
};

/// Compares the II and III forms along x < 0 at fixed t for tau in [tau_lo, tau_hi].
std::vector<OverlapSample> overlap_ii_iii(double t, const ReflectionCoefficient& r, const PainleveProfile& profile,
                                          const RegionConfig& cfg = {}, std::size_t samples = 16);

}  // namespace mkdv
