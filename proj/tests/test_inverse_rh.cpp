#include "mkdv/errors.hpp"
#include "mkdv/inverse_rh.hpp"

#include <doctest.h>

#include <cmath>

using namespace mkdv;

namespace {

ReflectionCoefficient reflection_of(const PresetSpec& p, std::size_t n = 1025) {
    return forward_scatter_auto(sample_preset_symmetric(p, 40.0, 1024), n);
}

double sup_w(const JumpData& j) {
    double m = 0.0;
    for (std::size_t i = 0; i < j.size(); ++i) m = std::max({m, std::abs(j.rho_plus(i)), std::abs(j.rho_minus(i))});
    return m;
}

double max_diff(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

TEST_CASE("zero reflection gives the identity jump and mu = I") {
    const auto r = reflection_of({"zero", 0.0, 1.0, 0.0}, 257);
    const PanelGrid g = make_rh_grid(r, -3.0, 1.0);
    const JumpData j = build_oscillatory_jump(r, -3.0, 1.0, g);
    for (std::size_t i = 0; i < j.size(); ++i) {
        CHECK(j.v[i] == Mat2::Identity());
        CHECK(j.w_plus[i] == Mat2::Zero());
        CHECK(j.w_minus[i] == Mat2::Zero());
    }
    const MuSolution mu = solve_mu(j);
    for (const Mat2& m : mu.mu) CHECK(m == Mat2::Identity());
    CHECK(solve_rh_at(r, -3.0, 1.0).y == 0.0);
}

TEST_CASE("jump factorization invariants") {
    const auto r = reflection_of({"sech", 0.7, 1.0, 0.0});
    const PanelGrid g = make_rh_grid(r, -5.0, 2.0);
    const JumpData j = build_oscillatory_jump(r, -5.0, 2.0, g);
    CHECK(j.invariant_defect() <= 1e-14);
    for (std::size_t i = 0; i < j.size(); ++i) {
        CHECK(std::abs(j.v[i].determinant() - 1.0) <= 1e-14);
        const cdouble e = std::exp(cdouble(0.0, 2.0 * j.theta[i]));
        CHECK(std::abs(j.rho_plus(i) - j.r[i] * e) <= 1e-15);
        CHECK(std::abs(j.rho_minus(i) + std::conj(j.r[i]) / e) <= 1e-15);
    }
}

TEST_CASE("stationary points of the phase") {
    const double t = 3.0, x = -12.0 * t;
    const auto r = reflection_of({"sech", 0.2, 1.0, 0.0}, 257);
    for (double z : {-1.0, 1.0}) CHECK(12.0 * t * z * z + x == 0.0);
    const PanelGrid g = make_rh_grid(r, x, t);
    bool has_plus = false, has_minus = false;
    for (double b : g.breakpoints()) {
        has_plus |= b == 1.0;
        has_minus |= b == -1.0;
    }
    CHECK(has_plus);
    CHECK(has_minus);
}

TEST_CASE("small jumps: mu agrees with the first Neumann term to O(w^2)") {
    double previous = 0.0, previous_w = 0.0;
    for (double eps : {2e-4, 1e-4}) {
        const auto r = reflection_of({"sech", eps, 1.0, 0.0});
        const PanelGrid g = make_rh_grid(r, -2.0, 0.5);
        const JumpData j = build_oscillatory_jump(r, -2.0, 0.5, g);
        const double w = sup_w(j);
        REQUIRE(w <= 1e-3);
        const MuSolution mu = solve_mu(j);
        const double d = max_diff(mu.mu, neumann_first(j));
        CAPTURE(eps);
        CHECK(d <= 10.0 * w * w);
        if (previous > 0.0) {
            const double order = std::log(previous / d) / std::log(previous_w / w);
            CHECK(order >= 1.8);
            CHECK(order <= 2.2);
        }
        previous = d;
        previous_w = w;
    }
}

TEST_CASE("returned mu satisfies the discrete equation") {
    const auto r = reflection_of({"sech", 0.6, 1.0, 0.0});
    for (double t : {0.0, 1.0}) {
        const PanelGrid g = make_rh_grid(r, -1.5, t);
        const JumpData j = build_oscillatory_jump(r, -1.5, t, g);
        const MuSolution mu = solve_mu(j);
        const CauchyOperator op(g);
        CHECK(mu.residual_norm <= 1e-10);
        CHECK(mu_residual(j, op, mu.mu) <= 1e-10);
        CHECK(mu.edge_defect <= 1e-8);
    }
}

TEST_CASE("iterative and dense solves agree") {
    const auto r = reflection_of({"sech", 0.5, 1.0, 0.0});
    RhConfig dense, iterative;
    dense.dense_limit = 1u << 30;
    iterative.dense_limit = 0;
    const RhPoint a = solve_rh_at(r, -1.0, 0.1, dense);
    const RhPoint b = solve_rh_at(r, -1.0, 0.1, iterative);
    CHECK(a.method != b.method);
    CHECK(std::abs(a.y - b.y) <= 1e-9);
}

TEST_CASE("round trip at t = 0 reproduces small sech data") {
    const PresetSpec p{"sech", 0.01, 1.0, 0.0};
    const auto r = reflection_of(p);
    for (double x : {-4.0, -1.0, 0.0, 0.5, 3.0}) {
        const RhPoint pt = solve_rh_at(r, x, 0.0);
        CAPTURE(x);
        CHECK(std::abs(pt.y - preset_value(p, x)) <= 1e-4);
        CHECK(std::abs(pt.imag_residue) <= 1e-8);
    }
}

TEST_CASE("commutator ignores the diagonal of the moment") {
    const auto r = reflection_of({"sech", 0.4, 1.0, 0.0});
    const PanelGrid g = make_rh_grid(r, -1.0, 0.5);
    const JumpData j = build_oscillatory_jump(r, -1.0, 0.5, g);
    const Reconstruction rec = reconstruct_y(solve_mu(j), j);
    Mat2 off = rec.moment;
    off(0, 0) = 0.0;
    off(1, 1) = 0.0;
    const cdouble a = commutator21(rec.moment), b = commutator21(off);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
    CHECK(rec.y == a.real());
}

TEST_CASE("under-resolved grids and budget overruns are rejected") {
    const auto r = reflection_of({"sech", 0.3, 1.0, 0.0});
    const JumpData coarse = build_oscillatory_jump(r, -10.0, 10.0, PanelGrid({-4.0, 0.0, 4.0}));
    CHECK_THROWS_AS(solve_mu(coarse), InputError);
    RhConfig tight;
    tight.max_nodes = 100;
    CHECK_THROWS_AS(make_rh_grid(r, -10.0, 10.0, tight), InputError);
    std::vector<double> zs = {-1.0, 0.0, 1.0};
    ReflectionCoefficient bad;
    bad.zgrid = zs;
    bad.values = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(build_oscillatory_jump(bad, -1.0, 1.0, PanelGrid({-1.0, 1.0})), InputError);
}
