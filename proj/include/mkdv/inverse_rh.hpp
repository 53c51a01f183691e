#pragma once

#include "mkdv/cauchy.hpp"
#include "mkdv/scattering.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace mkdv {

using Mat2 = Eigen::Matrix2cd;

inline const Mat2& sigma3() {
    static const Mat2 s = (Mat2() << 1.0, 0.0, 0.0, -1.0).finished();
    return s;
}

struct RhConfig {
    /// Bound on the neglected part of the jump beyond the truncation point Z.
    double tail_tol = 1e-10;
    double max_panel = 0.25;
    /// Largest phase swing len * max|2 theta'| allowed in one panel.
    double phase_per_panel = 6.0;
    /// Gauss-Legendre panels of width ~ (48 t z0)^{-1/2} around +-z0.
    bool refine_stationary = true;
    std::size_t max_nodes = 40000;
    /// Dense LU when the number of complex unknowns (2 N) is at most this.
    std::size_t dense_limit = 4000;
    double solver_tol = 1e-10;
    int gmres_restart = 60;
    int gmres_max_iter = 600;
    unsigned threads = 0;
};

/// Oscillatory jump data on a panel grid. Entries are the conjugated ones:
/// v = exp(-i theta sigma3) v0 exp(i theta sigma3), theta = 4 t z^3 + x z.
struct JumpData {
    PanelGrid grid;
    double x = 0.0;
    double t = 0.0;
    std::vector<double> theta;
    std::vector<cdouble> r;
    std::vector<Mat2> v, b_plus, b_minus, w_plus, w_minus;

    std::size_t size() const { return theta.size(); }
    /// (w_plus)_21 = r e^{2 i theta}
    cdouble rho_plus(std::size_t i) const { return w_plus[i](1, 0); }
    /// (w_minus)_12 = -conj(r) e^{-2 i theta}
    cdouble rho_minus(std::size_t i) const { return w_minus[i](0, 1); }

    /// max over nodes of |det v - 1|, ||v - b_-^{-1} b_+|| and the triangular-shape defect.
    double invariant_defect() const;
};

struct RhGridInfo {
    double cutoff = 0.0;          // truncation point Z
    double tail_estimate = 0.0;   // bound on the neglected contribution
    std::size_t required_nodes = 0;
};

/// Panel breakpoints on [-Z, Z] resolving the phase and, for x < 0 < t, the
/// neighbourhoods of the stationary points. Throws InputError when the node
/// budget is exceeded, quoting the required count.
PanelGrid make_rh_grid(const ReflectionCoefficient& r, double x, double t, const RhConfig& cfg = {},
                       RhGridInfo* info = nullptr);

/// Jump matrices at the nodes of grid; r is read through its cubic spline.
JumpData build_oscillatory_jump(const ReflectionCoefficient& r, double x, double t, const PanelGrid& grid);

struct MuSolution {
    PanelGrid grid;
    std::vector<Mat2> mu;
    /// max-norm residual of mu - I - C_+(mu w_-) - C_-(mu w_+) at the nodes
    double residual_norm = 0.0;
    std::string method;
    int iterations = 0;
    double condition_estimate = 0.0;
    /// Off-support evaluation points |z| = Z 2^k out to ~1e12 Z, and max |mu - I| at the outermost pair.
    std::vector<double> tail_z;
    std::vector<Mat2> tail_mu;
    double edge_defect = 0.0;
};

/// Solves mu = I + C_+(mu w_-) + C_-(mu w_+) by collocation at the grid nodes.
MuSolution solve_mu(const JumpData& jump, const RhConfig& cfg = {});

/// Max-norm residual of the discrete equation for a given mu.
double mu_residual(const JumpData& jump, const CauchyOperator& op, std::span<const Mat2> mu);

/// One-term Neumann approximation I + C_+(w_-) + C_-(w_+).
std::vector<Mat2> neumann_first(const JumpData& jump);

struct Reconstruction {
    double y = 0.0;
    double imag_residue = 0.0;
    /// integral mu w dz / (2 pi i)
    Mat2 moment = Mat2::Zero();
};

/// y = ([sigma3, integral mu (w_+ + w_-) dz / 2 pi i])_21. Throws NumericalError if the
/// imaginary residue exceeds 1e-8 (1 + |y|).
Reconstruction reconstruct_y(const MuSolution& mu, const JumpData& jump, bool check_residue = true);

/// Same commutator from a given moment matrix.
cdouble commutator21(const Mat2& moment);

struct RhPoint {
    double x = 0.0;
    double t = 0.0;
    double y = 0.0;
    double residual_norm = 0.0;
    double imag_residue = 0.0;
    std::size_t nodes = 0;
    double edge_defect = 0.0;
    std::string method;
};

RhPoint solve_rh_at(const ReflectionCoefficient& r, double x, double t, const RhConfig& cfg = {});

/// Independent points in parallel, results in input order.
std::vector<RhPoint> solve_rh_many(const ReflectionCoefficient& r, std::span<const double> xs, double t,
                                   const RhConfig& cfg = {});

}  // namespace mkdv
