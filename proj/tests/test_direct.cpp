#include "mkdv/errors.hpp"
#include "mkdv/mkdv_direct.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mkdv;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("zero data stays zero") {
    const auto y0 = sample_preset({"zero", 0.0, 1.0, 0.0}, -32.0, 0.125, 512);
    const Trajectory tr = evolve(y0, 1.0);
    for (double v : tr.fields.back()) CHECK(v == 0.0);
    for (double v : linear_evolve(y0, 1.0)) CHECK(v == 0.0);
}

TEST_CASE("small data follows the linear Fourier oracle") {
    // (1/pi) int_0^inf pi sech(pi k / 2) cos(k x + k^3) dk, mpmath quadrature
    const double xs[] = {-6, -3, -1, 0, 1, 3};
    const double ref[] = {-0.0074375119058663510373, 0.28358042768609777344, 0.78197390170665286443,
                          0.67180447271184490964,   0.46435864605902946654, 0.14115669083513376909};
    const double amp = 1e-3;
    const auto y0 = sample_preset({"sech", amp, 1.0, 0.0}, -256.0, 0.0625, 8192);
    DirectConfig cfg;
    cfg.dt = 0.01;
    const Trajectory tr = evolve(y0, 1.0, cfg);
    const auto ys = tr.sample(tr.times.size() - 1, xs);
    SampledPotential lin = y0;
    lin.values = linear_evolve(y0, 1.0);
    for (std::size_t i = 0; i < 6; ++i) {
        CAPTURE(xs[i]);
        CHECK(std::abs(ys[i] - amp * ref[i]) <= 1e-6);
    }
    Trajectory lt = tr;
    lt.fields.back() = lin.values;
    const auto yl = lt.sample(lt.times.size() - 1, xs);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(yl[i] - amp * ref[i]) <= 1e-12);
}

TEST_CASE("single Fourier mode rotates as sin(kx + k^3 t)") {
    const std::size_t n = 256;
    const double period = 2.0 * std::numbers::pi * 4.0, h = period / n, k = 3.0 / 4.0 * 2.0;
    SampledPotential y0;
    y0.grid_start = 0.0;
    y0.spacing = h;
    for (std::size_t j = 0; j < n; ++j) y0.values.push_back(std::sin(k * j * h));
    const double t = 0.7;
    const auto y = linear_evolve(y0, t);
    double err = 0.0, l2a = 0.0, l2b = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        err = std::max(err, std::abs(y[j] - std::sin(k * j * h + k * k * k * t)));
        l2a += y0.values[j] * y0.values[j];
        l2b += y[j] * y[j];
    }
    CHECK(err <= 1e-13);
    CHECK(std::abs(l2b / l2a - 1.0) <= 1e-14);
}

TEST_CASE("mass and L2 are conserved") {
    const auto y0 = sample_preset({"sech", 0.8, 1.0, 0.0}, -128.0, 0.125, 2048);
    DirectConfig cfg;
    cfg.dt = 0.0025;
    const Trajectory tr = evolve(y0, 5.0, cfg);
    CHECK(tr.mass_drift() <= 1e-9);
    CHECK(tr.l2_drift() <= 1e-9);
    CHECK(std::abs(field_l2(y0.values, y0.spacing) - tr.l2norm.front()) <= 1e-15);
}

TEST_CASE("time stepping converges at fourth order") {
    const auto y0 = sample_preset({"sech", 0.3, 1.0, 0.0}, -32.0, 0.125, 512);
    std::vector<std::vector<double>> sol;
    for (double dt : {0.02, 0.01, 0.005}) {
        DirectConfig cfg;
        cfg.dt = dt;
        sol.push_back(evolve(y0, 1.0, cfg).fields.back());
    }
    const double e1 = sup_diff(sol[0], sol[1]), e2 = sup_diff(sol[1], sol[2]);
    CAPTURE(e1);
    CAPTURE(e2);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.5);
    CHECK(order <= 5.5);
}

TEST_CASE("x-reflection reverses time") {
    const std::size_t n = 2048;
    const auto y0 = sample_preset({"gaussian", 0.7, 3.0, 0.5}, -256.0, 0.25, n);
    DirectConfig cfg;
    cfg.dt = 0.005;
    auto reflect = [n](const std::vector<double>& y) {
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j) out[(n - j) % n] = y[j];
        return out;
    };
    cfg.input_edge_rel = 1e-8;
    SampledPotential mid = y0;
    mid.values = reflect(evolve(y0, 0.5, cfg).fields.back());
    const auto back = reflect(evolve(mid, 0.5, cfg).fields.back());
    CHECK(sup_diff(back, y0.values) <= 1e-9);
}

TEST_CASE("snapshot times are hit exactly and edges are monitored") {
    const auto y0 = sample_preset({"sech", 0.3, 1.0, 0.0}, -32.0, 0.125, 512);
    DirectConfig cfg;
    cfg.snapshot_times = {0.3, 1.7};
    const Trajectory tr = evolve(y0, 3.0, cfg);
    REQUIRE(tr.times.size() == 4);
    CHECK(tr.times[1] == 0.3);
    CHECK(tr.times[2] == 1.7);
    CHECK(tr.times[3] == 3.0);
    CHECK(tr.domain_limited);
}

TEST_CASE("invalid inputs are rejected") {
    const auto y0 = sample_preset({"sech", 0.3, 1.0, 0.0}, -32.0, 0.125, 500);
    CHECK_THROWS_AS(evolve(y0, 1.0), InputError);
    const auto ok = sample_preset({"sech", 0.3, 1.0, 0.0}, -32.0, 0.125, 512);
    CHECK_THROWS_AS(evolve(ok, -1.0), InputError);
}
