#include "mkdv/errors.hpp"
#include "mkdv/scattering.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace mkdv;

namespace {

SampledPotential sech(double amp, double half_width = 40.0, std::size_t n = 1024) {
    return sample_preset_symmetric({"sech", amp, 1.0, 0.0}, half_width, n);
}

struct ZsRef {
    double amp, z;
    cdouble r;
};

// r = b/a of amp*sech(x) from an independent DOP853 Jost integration.
const ZsRef kZs[] = {
    {0.3, 0.0, {0, -0.736358599516365}},
    {0.3, 0.5, {-0.0825879267929338, -0.389258119458118}},
    {0.3, 1.0, {-0.00958127252953683, -0.0929837469148894}},
    {0.3, -1.0, {0.00958127252953683, -0.0929837469148894}},
    {0.7, 0.0, {0, -0.9757006726149}},
    {0.7, 0.5, {-0.697827585703533, -0.521583437568768}},
    {0.7, 1.0, {-0.205829164717606, -0.293648585229711}},
    {0.7, -1.0, {0.205829164717606, -0.293648585229711}},
};

}  // namespace

TEST_CASE("zero potential has zero reflection") {
    const auto y0 = sample_preset_symmetric({"zero", 0.0, 1.0, 0.0}, 20.0, 256);
    const auto grid = uniform_zgrid(5.0, 101);
    const auto r = forward_scatter(y0, grid);
    CHECK(r.sup_abs() == 0.0);
    CHECK(born_approximation(y0, grid).sup_abs() == 0.0);
}

TEST_CASE("forward scattering matches an independent Jost integration") {
    for (double amp : {0.3, 0.7}) {
        std::vector<double> zs;
        for (const auto& ref : kZs)
            if (ref.amp == amp) zs.push_back(ref.z);
        std::sort(zs.begin(), zs.end());
        std::vector<double> grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
        const auto r = forward_scatter(sech(amp), grid);
        for (const auto& ref : kZs) {
            if (ref.amp != amp) continue;
            const auto it = std::find(grid.begin(), grid.end(), ref.z);
            REQUIRE(it != grid.end());
            CAPTURE(amp);
            CAPTURE(ref.z);
            CHECK(std::abs(r.values[it - grid.begin()] - ref.r) <= 1e-8);
        }
    }
}

TEST_CASE("Born transform of sech has modulus eps pi sech(pi z)") {
    const double eps = 0.01;
    const auto grid = uniform_zgrid(4.0, 81);
    const auto born = born_approximation(sech(eps), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ref = eps * std::numbers::pi / std::cosh(std::numbers::pi * grid[i]);
        CHECK(std::abs(std::abs(born.values[i]) - ref) <= 1e-12);
        // convention constant: b = -i integral y e^{-2 i z x} dx
        CHECK(std::abs(born.values[i] - cdouble(0.0, -ref)) <= 1e-12);
    }
}

TEST_CASE("small-amplitude reflection agrees with Born to relative O(eps)") {
    for (double eps : {0.01, 0.001}) {
        const auto grid = uniform_zgrid(3.0, 61);
        const auto r = forward_scatter(sech(eps), grid);
        const auto born = born_approximation(sech(eps), grid);
        double rel = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            rel = std::max(rel, std::abs(r.values[i] - born.values[i]) / std::abs(born.values[i]));
        CAPTURE(eps);
        CHECK(rel <= 2.0 * eps);
        CHECK(rel >= 0.01 * eps * eps);
    }
}

TEST_CASE("Born transform is linear") {
    const auto grid = uniform_zgrid(3.0, 31);
    const auto a = born_approximation(sample_preset_symmetric({"gaussian", 0.2, 1.3, 0.4}, 30.0, 512), grid);
    const auto b = born_approximation(sample_preset_symmetric({"gaussian", -0.7, 1.3, 0.4}, 30.0, 512), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(b.values[i] * 0.2 + a.values[i] * 0.7) <= 1e-15);
}

TEST_CASE("symmetry and sup bound hold for every preset") {
    const std::vector<PresetSpec> presets = {
        {"sech", 0.5, 1.0, 0.0}, {"gaussian", 0.8, 1.5, 1.0}, {"sech2", 1.2, 0.7, -0.5}, {"sech", 2.0, 1.0, 0.3}};
    for (const auto& p : presets) {
        CAPTURE(p.name);
        const auto r = forward_scatter_auto(sample_preset_symmetric(p, 40.0, 1024), 257);
        CHECK(r.symmetry_residual() <= 1e-8);
        CHECK(r.sup_abs() < 1.0);
        CHECK_NOTHROW(r.check_invariants());
    }
}

TEST_CASE("reflection is stable under grid halving") {
    const auto grid = uniform_zgrid(2.0, 21);
    const auto fine = forward_scatter(sech(0.4, 40.0, 2048), grid);
    const auto coarse = forward_scatter(sech(0.4, 40.0, 1024), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(fine.values[i] - coarse.values[i]) <= 1e-9);
}

TEST_CASE("Jost determinant |a|^2 - |b|^2 = 1 improves with the tolerance") {
    ScatterDiagnostics loose, tight;
    ScatterConfig cfg;
    forward_scatter(sech(0.5), uniform_zgrid(3.0, 41), cfg, &loose);
    cfg.tol_per_length = 1e-13;
    forward_scatter(sech(0.5), uniform_zgrid(3.0, 41), cfg, &tight);
    CHECK(loose.determinant_defect <= 1e-6);
    CHECK(tight.determinant_defect <= 1e-9);
    CHECK(tight.richardson_error <= 1e-13 * 80.0);
}

TEST_CASE("non-decaying potential is rejected") {
    const auto y0 = sample_preset_symmetric({"sech", 0.3, 8.0, 0.0}, 10.0, 256);
    CHECK_THROWS_AS(forward_scatter(y0, uniform_zgrid(2.0, 11)), InputError);
    CHECK_THROWS_AS(validate_symmetric_grid(std::vector<double>{-1.0, 0.0, 2.0}), InputError);
}

TEST_CASE("CSV potentials round trip through the reader") {
    const auto path = std::filesystem::temp_directory_path() / "mkdv_test_potential.csv";
    const auto y0 = sech(0.2, 20.0, 256);
    {
        std::ofstream f(path);
        f << "x,y0\n";
        f.precision(17);
        for (std::size_t j = 0; j < y0.size(); ++j) f << y0.x(j) << ',' << y0.values[j] << '\n';
    }
    const auto back = read_potential_csv(path);
    std::filesystem::remove(path);
    REQUIRE(back.size() == y0.size());
    CHECK(std::abs(back.spacing - y0.spacing) <= 1e-12);
    for (std::size_t j = 0; j < y0.size(); ++j) CHECK(back.values[j] == y0.values[j]);
}
