#include "mkdv/inverse_rh.hpp"

#include "mkdv/errors.hpp"
#include "mkdv/gmres.hpp"
#include "mkdv/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace mkdv {

namespace {

constexpr std::size_t kP = PanelGrid::kOrder;
const cdouble kInv2PiI(0.0, -0.5 / std::numbers::pi);  // 1 / (2 pi i)

double dtheta(double z, double x, double t) { return 12.0 * t * z * z + x; }

// max |2 theta'| on [a, b]; theta' is convex so the maximum sits at an end
double max_freq(double a, double b, double x, double t) {
    return 2.0 * std::max(std::abs(dtheta(a, x, t)), std::abs(dtheta(b, x, t)));
}

bool panel_ok(double a, double b, double x, double t, const RhConfig& cfg) {
    const double len = b - a;
    return len <= cfg.max_panel && len * max_freq(a, b, x, t) <= cfg.phase_per_panel;
}

std::size_t count_panels(double a, double b, double x, double t, const RhConfig& cfg, std::size_t cap) {
    if (panel_ok(a, b, x, t, cfg)) return 1;
    const double m = 0.5 * (a + b);
    const std::size_t left = count_panels(a, m, x, t, cfg, cap);
    if (left > cap) return left;
    return left + count_panels(m, b, x, t, cfg, cap);
}

void split_panels(double a, double b, double x, double t, const RhConfig& cfg, std::vector<double>& out) {
    if (panel_ok(a, b, x, t, cfg)) {
        out.push_back(b);
        return;
    }
    const double m = 0.5 * (a + b);
    split_panels(a, m, x, t, cfg, out);
    split_panels(m, b, x, t, cfg, out);
}

// Truncation point: smallest native grid point beyond which the neglected
// contribution (2/pi) min(int |r|, max|r| / min|theta'|) stays below tol.
double choose_cutoff(const ReflectionCoefficient& r, double x, double t, double tol, double* estimate) {
    const auto& z = r.zgrid;
    const std::size_t n = z.size();
    std::size_t j0 = 0;
    while (j0 < n && z[j0] < 0.0) ++j0;
    double integral = 0.0, sup = 0.0;
    double best = z.back();
    double best_est = 0.0;
    for (std::size_t j = n; j-- > j0;) {
        const double a = std::abs(r.values[j]);
        if (j + 1 < n) integral += 0.5 * (z[j + 1] - z[j]) * (a + std::abs(r.values[j + 1]));
        sup = std::max(sup, a);
        double dmin = 0.0;
        if (t > 0.0) {
            if (12.0 * t * z[j] * z[j] + x > 0.0) dmin = 12.0 * t * z[j] * z[j] + x;
        } else {
            dmin = std::abs(x);
        }
        double est = integral;
        if (dmin > 0.0) est = std::min(est, sup / dmin);
        est *= 2.0 / std::numbers::pi;
        if (est > tol) break;
        best = z[j];
        best_est = est;
    }
    if (estimate) *estimate = best_est;
    return std::max(best, 0.5);
}

}  // namespace

double JumpData::invariant_defect() const {
    double d = 0.0;
    const Mat2 id = Mat2::Identity();
    for (std::size_t i = 0; i < size(); ++i) {
        d = std::max(d, std::abs(v[i].determinant() - 1.0));
        d = std::max(d, (v[i] - b_minus[i].inverse() * b_plus[i]).cwiseAbs().maxCoeff());
        d = std::max(d, (w_plus[i] - (b_plus[i] - id)).cwiseAbs().maxCoeff());
        d = std::max(d, (w_minus[i] - (id - b_minus[i])).cwiseAbs().maxCoeff());
        d = std::max({d, std::abs(w_plus[i](0, 0)), std::abs(w_plus[i](1, 1)), std::abs(w_plus[i](0, 1))});
        d = std::max({d, std::abs(w_minus[i](0, 0)), std::abs(w_minus[i](1, 1)), std::abs(w_minus[i](1, 0))});
    }
    return d;
}

PanelGrid make_rh_grid(const ReflectionCoefficient& r, double x, double t, const RhConfig& cfg,
                       RhGridInfo* info) {
    if (!(t >= 0.0) || !std::isfinite(t) || !std::isfinite(x)) throw InputError("make_rh_grid: requires finite x and t >= 0");
    if (r.size() < 2) throw InputError("make_rh_grid: empty reflection coefficient");
    double est = 0.0;
    const double cutoff = choose_cutoff(r, x, t, cfg.tail_tol, &est);

    std::vector<double> anchors = {0.0, cutoff};
    if (cfg.refine_stationary && t > 0.0 && x < 0.0) {
        const double z0 = std::sqrt(-x / (12.0 * t));
        const double scale = 1.0 / std::sqrt(48.0 * t * z0);
        for (double zh : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) {
            const double z = z0 + zh * scale;
            if (z > 0.0 && z < cutoff) anchors.push_back(z);
        }
    }
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

    const std::size_t cap = cfg.max_nodes / (2 * kP) + 1;
    std::size_t panels = 0;
    for (std::size_t k = 0; k + 1 < anchors.size(); ++k)
        panels += count_panels(anchors[k], anchors[k + 1], x, t, cfg, cap);
    const std::size_t nodes = 2 * panels * kP;
    if (info) *info = {cutoff, est, nodes};
    if (nodes > cfg.max_nodes) {
        throw InputError(fmt::format("RH grid at (x, t) = ({}, {}) needs at least {} nodes, budget is {}", x, t,
                                     panels > cap ? fmt::format(">{}", nodes) : fmt::format("{}", nodes),
                                     cfg.max_nodes));
    }
    std::vector<double> pos = {0.0};
    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) split_panels(anchors[k], anchors[k + 1], x, t, cfg, pos);
    std::vector<double> breaks;
    breaks.reserve(2 * pos.size() - 1);
    for (std::size_t k = pos.size(); k-- > 1;) breaks.push_back(-pos[k]);
    breaks.insert(breaks.end(), pos.begin(), pos.end());
    return PanelGrid(std::move(breaks));
}

JumpData build_oscillatory_jump(const ReflectionCoefficient& r, double x, double t, const PanelGrid& grid) {
    JumpData j;
    j.grid = grid;
    j.x = x;
    j.t = t;
    const std::size_t n = grid.size();
    j.theta.resize(n);
    j.r.resize(n);
    j.v.resize(n);
    j.b_plus.resize(n);
    j.b_minus.resize(n);
    j.w_plus.resize(n);
    j.w_minus.resize(n);
    const CubicSpline sp = r.spline();
    const Mat2 id = Mat2::Identity();
    for (std::size_t i = 0; i < n; ++i) {
        const double z = grid.nodes()[i];
        const cdouble rv = sp(z);
        if (!(std::abs(rv) < 1.0))
            throw InputError(fmt::format("build_oscillatory_jump: |r({})| = {} is not below 1", z, std::abs(rv)));
        const double th = 4.0 * t * z * z * z + x * z;
        const cdouble e = std::polar(1.0, 2.0 * th);
        const cdouble lower = rv * e;
        const cdouble upper = std::conj(lower);
        j.theta[i] = th;
        j.r[i] = rv;
        j.b_plus[i] << 1.0, 0.0, lower, 1.0;
        j.b_minus[i] << 1.0, upper, 0.0, 1.0;
        j.v[i] << 1.0 - std::norm(rv), -upper, lower, 1.0;
        j.w_plus[i] = j.b_plus[i] - id;
        j.w_minus[i] = id - j.b_minus[i];
    }
    return j;
}

double mu_residual(const JumpData& jump, const CauchyOperator& op, std::span<const Mat2> mu) {
    const std::size_t n = jump.size();
    // mu w_- has only a second column, mu w_+ only a first column.
    std::vector<cdouble> a(n), b(n), c(n), d(n), pa(n), pb(n), pc(n), pd(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = mu[i](0, 0) * jump.rho_minus(i);
        b[i] = mu[i](1, 0) * jump.rho_minus(i);
        c[i] = mu[i](0, 1) * jump.rho_plus(i);
        d[i] = mu[i](1, 1) * jump.rho_plus(i);
    }
    op.apply_pv2(a, b, pa, pb);
    op.apply_pv2(c, d, pc, pd);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Mat2 rhs = Mat2::Identity();
        rhs(0, 1) += 0.5 * a[i] + kInv2PiI * pa[i];
        rhs(1, 1) += 0.5 * b[i] + kInv2PiI * pb[i];
        rhs(0, 0) += -0.5 * c[i] + kInv2PiI * pc[i];
        rhs(1, 0) += -0.5 * d[i] + kInv2PiI * pd[i];
        res = std::max(res, (mu[i] - rhs).cwiseAbs().maxCoeff());
    }
    return res;
}

std::vector<Mat2> neumann_first(const JumpData& jump) {
    const std::size_t n = jump.size();
    const CauchyOperator op(jump.grid);
    std::vector<cdouble> f(n), g(n), pf(n), pg(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = jump.rho_minus(i);
        g[i] = jump.rho_plus(i);
    }
    op.apply_pv2(f, g, pf, pg);
    std::vector<Mat2> out(n, Mat2::Identity());
    for (std::size_t i = 0; i < n; ++i) {
        out[i](0, 1) = 0.5 * f[i] + kInv2PiI * pf[i];
        out[i](1, 0) = -0.5 * g[i] + kInv2PiI * pg[i];
    }
    return out;
}

namespace {

void check_resolution(const JumpData& jump, const RhConfig& cfg) {
    const PanelGrid& g = jump.grid;
    std::size_t required = 0;
    bool ok = true;
    for (std::size_t p = 0; p < g.panel_count(); ++p) {
        const double a = g.panel_start(p), b = g.panel_end(p);
        const double freq = max_freq(a, b, jump.x, jump.t);
        const double wavelength = 2.0 * std::numbers::pi / std::max(freq, 1e-300);
        const double gap = g.max_node_gap(p);
        if (gap > wavelength / 8.0) ok = false;
        required += kP * static_cast<std::size_t>(std::ceil(std::max(1.0, gap / (wavelength / 8.0))));
    }
    if (!ok) {
        throw InputError(fmt::format("RH grid under-resolves the oscillation at (x, t) = ({}, {}): {} nodes, need about {}",
                                     jump.x, jump.t, g.size(), required));
    }
    (void)cfg;
}

}  // namespace

MuSolution solve_mu(const JumpData& jump, const RhConfig& cfg) {
    check_resolution(jump, cfg);
    const std::size_t n = jump.size();
    const CauchyOperator op(jump.grid);
    std::vector<cdouble> rp(n), rm(n);
    for (std::size_t i = 0; i < n; ++i) {
        rp[i] = jump.rho_plus(i);
        rm[i] = jump.rho_minus(i);
    }
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd sol(2 * nn, 2);
    MuSolution out;
    out.grid = jump.grid;

    if (2 * n <= cfg.dense_limit) {
        const Eigen::MatrixXd pv = op.dense_pv();
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * nn, 2 * nn);
        for (Eigen::Index j = 0; j < nn; ++j) {
            for (Eigen::Index i = 0; i < nn; ++i) {
                const cdouble p = kInv2PiI * pv(i, j);
                m(i, nn + j) = -p * rp[j];
                m(nn + i, j) = -p * rm[j];
            }
            m(j, nn + j) += 0.5 * rp[j];
            m(nn + j, j) -= 0.5 * rm[j];
        }
        Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(2 * nn, 2);
        rhs.col(0).head(nn).setOnes();
        rhs.col(1).tail(nn).setOnes();
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
        const double rc = lu.rcond();
        out.condition_estimate = rc > 0 ? 1.0 / rc : INFINITY;
        sol = lu.solve(rhs);
        out.method = "dense";
        if (!sol.allFinite())
            throw NumericalError(fmt::format("dense RH solve failed, condition estimate {:.3e}", out.condition_estimate));
    } else {
        std::vector<cdouble> f(n), g(n), pf(n), pg(n);
        auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& res) {
            for (std::size_t i = 0; i < n; ++i) {
                f[i] = rp[i] * in(nn + static_cast<Eigen::Index>(i));
                g[i] = rm[i] * in(static_cast<Eigen::Index>(i));
            }
            op.apply_pv2(f, g, pf, pg);
            res.resize(2 * nn);
            for (std::size_t i = 0; i < n; ++i) {
                const auto ii = static_cast<Eigen::Index>(i);
                res(ii) = in(ii) - (-0.5 * f[i] + kInv2PiI * pf[i]);
                res(nn + ii) = in(nn + ii) - (0.5 * g[i] + kInv2PiI * pg[i]);
            }
        };
        out.method = "gmres";
        for (int row = 0; row < 2; ++row) {
            Eigen::VectorXcd b = Eigen::VectorXcd::Zero(2 * nn);
            (row == 0 ? b.head(nn) : b.tail(nn)).setOnes();
            Eigen::VectorXcd xk = b;
            const GmresResult gr = gmres(apply, b, xk, cfg.solver_tol, cfg.gmres_restart, cfg.gmres_max_iter);
            out.iterations += gr.iterations;
            out.condition_estimate = std::max(out.condition_estimate, gr.condition_estimate);
            if (!gr.converged) {
                throw NumericalError(fmt::format(
                    "GMRES did not converge at (x, t) = ({}, {}): residual {:.3e} after {} iterations, "
                    "condition estimate {:.3e}",
                    jump.x, jump.t, gr.residual, gr.iterations, gr.condition_estimate));
            }
            sol.col(row) = xk;
        }
    }
    out.mu.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        out.mu[i] << sol(ii, 0), sol(nn + ii, 0), sol(ii, 1), sol(nn + ii, 1);
    }
    out.residual_norm = mu_residual(jump, op, out.mu);
    if (!(out.residual_norm <= 10.0 * cfg.solver_tol))
        throw NumericalError(fmt::format("RH residual {:.3e} above tolerance, condition estimate {:.3e}",
                                         out.residual_norm, out.condition_estimate));

    // mu = m off the support: I + C(mu w)(z).
    std::vector<std::vector<cdouble>> dens(4, std::vector<cdouble>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Mat2 f = out.mu[i] * (jump.w_plus[i] + jump.w_minus[i]);
        dens[0][i] = f(0, 0);
        dens[1][i] = f(0, 1);
        dens[2][i] = f(1, 0);
        dens[3][i] = f(1, 1);
    }
    const double cutoff = jump.grid.breakpoints().back();
    for (double scale = 1.5; scale < 1.5e12; scale *= 4.0) {
        for (double sign : {-1.0, 1.0}) {
            const double z = sign * scale * cutoff;
            Mat2 m = Mat2::Identity();
            m(0, 0) += kInv2PiI * op.integral_off_support(dens[0], z);
            m(0, 1) += kInv2PiI * op.integral_off_support(dens[1], z);
            m(1, 0) += kInv2PiI * op.integral_off_support(dens[2], z);
            m(1, 1) += kInv2PiI * op.integral_off_support(dens[3], z);
            out.tail_z.push_back(z);
            out.tail_mu.push_back(m);
        }
    }
    const std::size_t k = out.tail_mu.size();
    out.edge_defect = std::max((out.tail_mu[k - 1] - Mat2::Identity()).cwiseAbs().maxCoeff(),
                               (out.tail_mu[k - 2] - Mat2::Identity()).cwiseAbs().maxCoeff());
    return out;
}

cdouble commutator21(const Mat2& moment) {
    const Mat2 c = sigma3() * moment - moment * sigma3();
    return c(1, 0);
}

Reconstruction reconstruct_y(const MuSolution& mu, const JumpData& jump, bool check_residue) {
    if (mu.mu.size() != jump.size()) throw InputError("reconstruct_y: grid mismatch");
    Reconstruction rec;
    const auto w = jump.grid.weights();
    for (std::size_t i = 0; i < jump.size(); ++i) rec.moment += w[i] * (mu.mu[i] * (jump.w_plus[i] + jump.w_minus[i]));
    rec.moment *= kInv2PiI;
    const cdouble y = commutator21(rec.moment);
    rec.y = y.real();
    rec.imag_residue = std::abs(y.imag());
    if (check_residue && !(rec.imag_residue <= 1e-8 * (1.0 + std::abs(rec.y)))) {
        throw NumericalError(fmt::format("reconstructed y({}, {}) has imaginary residue {:.3e}", jump.x, jump.t,
                                         rec.imag_residue));
    }
    return rec;
}

RhPoint solve_rh_at(const ReflectionCoefficient& r, double x, double t, const RhConfig& cfg) {
    const PanelGrid grid = make_rh_grid(r, x, t, cfg);
    const JumpData jump = build_oscillatory_jump(r, x, t, grid);
    const MuSolution mu = solve_mu(jump, cfg);
    const Reconstruction rec = reconstruct_y(mu, jump);
    return {x, t, rec.y, mu.residual_norm, rec.imag_residue, grid.size(), mu.edge_defect, mu.method};
}

std::vector<RhPoint> solve_rh_many(const ReflectionCoefficient& r, std::span<const double> xs, double t,
                                   const RhConfig& cfg) {
    std::vector<RhPoint> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = solve_rh_at(r, xs[i], t, cfg); }, cfg.threads);
    return out;
}

}  // namespace mkdv
