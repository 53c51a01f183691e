#include "mkdv/asymptotics.hpp"
#include "mkdv/errors.hpp"
#include "mkdv/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace mkdv;

namespace {

constexpr double kPi = std::numbers::pi;

// r(z) = i sqrt(f(z)) e^{i alpha} sampled on a uniform grid.
ReflectionCoefficient synthetic(const std::function<double(double)>& f, double alpha = 0.0, double z_max = 10.0,
                                std::size_t n = 2049) {
    ReflectionCoefficient r;
    r.zgrid = uniform_zgrid(z_max, n);
    for (double z : r.zgrid) r.values.push_back(cdouble(0.0, std::sqrt(f(z))) * std::polar(1.0, alpha));
    return r;
}

// Smooth plateau: 1 on |z| <= 2, 0 beyond |z| = 4.
double plateau(double z) {
    auto h = [](double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); };
    const double u = (4.0 - std::abs(z)) / 2.0;
    return h(u) / (h(u) + h(1.0 - u));
}

}  // namespace

TEST_CASE("stationary point examples") {
    const PhasePoint a = stationary_point(-12.0, 1.0);
    CHECK(a.z0 == 1.0);
    CHECK(a.tau == 1.0);
    const PhasePoint b = stationary_point(-48.0, 1.0);
    CHECK(b.z0 == 2.0);
    CHECK(b.tau == 8.0);
    for (double x : {-0.3, -7.0, -150.0}) {
        for (double t : {0.5, 3.0, 80.0}) {
            const PhasePoint p = stationary_point(x, t);
            CHECK(std::abs(p.dtheta(p.z0)) <= 1e-12 * std::abs(x));
            CHECK(p.tau_consistency() <= 1e-12);
        }
    }
    CHECK_THROWS_AS(stationary_point(0.0, 1.0), InputError);
    CHECK_THROWS_AS(stationary_point(1.0, 1.0), InputError);
}

TEST_CASE("nu examples") {
    CHECK(nu_of(0.0) == 0.0);
    CHECK(std::abs(nu_of(std::sqrt(1.0 - std::exp(-2.0 * kPi))) - 1.0) <= 1e-13);
    CHECK(std::abs(nu_of(std::sqrt(0.5)) - std::log(2.0) / (2.0 * kPi)) <= 1e-15);
    CHECK(std::abs(nu_of(std::sqrt(0.5)) - 0.1103178) <= 1e-7);
    CHECK_THROWS_AS(nu_of(1.0), InputError);
}

TEST_CASE("log-weighted integral of a constant") {
    for (double z0 : {0.3, 1.0, 2.5}) {
        const double ref = (2.0 * z0 * std::log(2.0 * z0) - 2.0 * z0) / kPi;
        CHECK(std::abs(log_weighted_integral([](double) { return 1.0; }, z0) - ref) <= 1e-12);
    }
}

TEST_CASE("constant modulus: the integral term vanishes") {
    const auto r = synthetic([](double z) { return 0.5 * plateau(z); }, 0.0, 8.0, 2049);
    const PhiTerms p = phase_phi(r, 1.0);
    CHECK(std::abs(p.integral) <= 1e-8);
    const double expect = wrap_angle(arg_gamma_imag(p.nu) - kPi / 4.0 - kPi / 2.0);
    CHECK(std::abs(wrap_angle(p.phi - expect)) <= 1e-8);
    CHECK(std::abs(p.nu - nu_of(std::sqrt(0.5))) <= 1e-12);
}

TEST_CASE("bump integrals match the tanh-sinh oracle") {
    struct Bump {
        std::function<double(double)> f;
        double z0, ref;
    };
    const Bump bumps[] = {
        {[](double s) { return 0.5 * std::exp(-s * s); }, 1.0, -0.24060377163072274279},
        {[](double s) { return 0.9 * std::exp(-2.0 * s * s); }, 0.7, -0.72803721197040430529},
        {[](double s) { return 0.6 / std::pow(std::cosh(1.5 * s), 2); }, 1.5, -0.23419812570127835217},
    };
    for (const auto& b : bumps) {
        const PhiTerms p = phase_phi(synthetic(b.f, 0.0, 30.0, 4097), b.z0);
        CAPTURE(b.z0);
        CHECK(std::abs(p.integral - b.ref) <= 1e-8);
        CHECK(p.error_estimate <= 1e-8);
    }
}

TEST_CASE("a constant phase on r shifts phi by -alpha") {
    auto f = [](double s) { return 0.5 * std::exp(-s * s); };
    const PhiTerms a = phase_phi(synthetic(f), 1.0);
    for (double alpha : {0.3, -1.1, 2.9}) {
        const PhiTerms b = phase_phi(synthetic(f, alpha), 1.0);
        CHECK(std::abs(wrap_angle(b.phi - a.phi + alpha)) <= 1e-12);
    }
}

TEST_CASE("y_a examples") {
    const AsymptoticParams p = y_a_from(1.0, 1.0, 1.0, 0.0);
    CHECK(std::abs(p.y_a - std::sqrt(1.0 / 3.0) * std::cos(16.0 - std::log(192.0))) <= 1e-15);
    const double a1 = y_a_from(0.2, 0.8, 5.0, 0.4).amplitude;
    const double a4 = y_a_from(0.2, 0.8, 20.0, 0.4).amplitude;
    CHECK(std::abs(a4 / a1 - 0.5) <= 1e-15);
    ReflectionCoefficient zero;
    zero.zgrid = uniform_zgrid(4.0, 65);
    zero.values.assign(zero.zgrid.size(), 0.0);
    const AsymptoticParams d = y_a_eval(-12.0, 1.0, zero);
    CHECK(d.degenerate);
    CHECK(d.y_a == 0.0);
}

TEST_CASE("scale map examples") {
    CHECK(scale_map(0.0, -12.0, 1.0, 1) == 1.0);
    CHECK(std::abs(scale_map(std::sqrt(48.0), -12.0, 1.0, 1) - 2.0) <= 1e-15);
    for (double zh : {-3.0, 0.25, 7.0}) {
        for (int branch : {-1, 1}) {
            CHECK(std::abs(scale_map_inverse(scale_map(zh, -30.0, 4.0, branch), -30.0, 4.0, branch) - zh) <= 1e-14);
        }
    }
    CHECK_THROWS_AS(scale_map(1.0, 0.0, 1.0, 1), InputError);
}
