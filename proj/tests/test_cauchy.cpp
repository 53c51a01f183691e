#include "mkdv/cauchy.hpp"

#include <doctest.h>

#include <cmath>

using namespace mkdv;

namespace {

PanelGrid uniform_panels(double a, double b, std::size_t panels) {
    std::vector<double> br(panels + 1);
    for (std::size_t p = 0; p <= panels; ++p) br[p] = a + (b - a) * static_cast<double>(p) / static_cast<double>(panels);
    return PanelGrid(br);
}

}  // namespace

TEST_CASE("principal value of polynomials on [-1, 1]") {
    const PanelGrid g = uniform_panels(-1.0, 1.0, 4);
    const CauchyOperator op(g);
    std::vector<cdouble> one(g.size(), 1.0), sq(g.size()), out1(g.size()), out2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) sq[i] = g.nodes()[i] * g.nodes()[i];
    op.apply_pv(one, out1);
    op.apply_pv(sq, out2);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double z = g.nodes()[i];
        const double l = std::log((1.0 - z) / (1.0 + z));
        CHECK(std::abs(out1[i] - l) <= 1e-12);
        CHECK(std::abs(out2[i] - (2.0 * z + z * z * l)) <= 1e-12);
    }
}

TEST_CASE("C+ - C- is the identity") {
    const PanelGrid g = uniform_panels(-3.0, 3.0, 12);
    const CauchyOperator op(g);
    std::vector<cdouble> f(g.size()), p(g.size()), m(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = {std::exp(-g.nodes()[i] * g.nodes()[i]), std::sin(g.nodes()[i])};
    op.apply_plus(f, p);
    op.apply_minus(f, m);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(p[i] - m[i] - f[i]) <= 1e-14);
}

TEST_CASE("treecode far field agrees with the dense operator") {
    std::vector<double> br;
    for (int p = 0; p <= 200; ++p) br.push_back(-5.0 + 10.0 * std::pow(p / 200.0, 1.3));
    const PanelGrid g(br);
    REQUIRE(g.size() > CauchyOperator::kTreeThreshold);
    const CauchyOperator tree(g, true);
    const CauchyOperator direct(g, false);
    std::vector<cdouble> f(g.size()), a(g.size()), b(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = g.nodes()[i];
        f[i] = {std::cos(3.0 * s) / (1.0 + s * s), std::exp(-0.2 * s * s)};
    }
    tree.apply_pv(f, a);
    direct.apply_pv(f, b);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    CHECK(diff <= 1e-12 * scale);
}

TEST_CASE("dense matrix reproduces apply_pv") {
    const PanelGrid g = uniform_panels(-2.0, 2.0, 6);
    const CauchyOperator op(g);
    const Eigen::MatrixXd P = op.dense_pv();
    std::vector<cdouble> f(g.size()), out(g.size());
    Eigen::VectorXcd fv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) fv[i] = f[i] = {g.nodes()[i], 1.0 - g.nodes()[i] * g.nodes()[i]};
    op.apply_pv(f, out);
    const Eigen::VectorXcd ref = P.cast<cdouble>() * fv;
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(ref[i] - out[i]) <= 1e-13);
}

TEST_CASE("off-support integral of a constant") {
    const PanelGrid g = uniform_panels(-1.0, 1.0, 3);
    const CauchyOperator op(g);
    std::vector<cdouble> one(g.size(), 1.0);
    for (double z : {1.5, -4.0, 100.0}) CHECK(std::abs(op.integral_off_support(one, z) - std::log(std::abs((1.0 - z) / (1.0 + z)))) <= 1e-13);
}
