#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mkdv {

using cdouble = std::complex<double>;

/// Composite Gauss-Legendre grid on [breakpoints.front(), breakpoints.back()].
class PanelGrid {
public:
    static constexpr std::size_t kOrder = 16;

    PanelGrid() = default;
    explicit PanelGrid(std::vector<double> breakpoints);

    std::size_t panel_count() const { return breaks_.empty() ? 0 : breaks_.size() - 1; }
    std::size_t size() const { return nodes_.size(); }
    double panel_start(std::size_t p) const { return breaks_[p]; }
    double panel_end(std::size_t p) const { return breaks_[p + 1]; }
    std::size_t panel_of(std::size_t node) const { return node / kOrder; }

    std::span<const double> breakpoints() const { return breaks_; }
    std::span<const double> nodes() const { return nodes_; }
    /// Physical quadrature weights.
    std::span<const double> weights() const { return weights_; }

    /// Largest gap between consecutive nodes inside panel p.
    double max_node_gap(std::size_t p) const;

private:
    std::vector<double> breaks_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Reference Gauss-Legendre rule of order PanelGrid::kOrder on [-1, 1].
struct ReferencePanel {
    std::array<double, PanelGrid::kOrder> nodes;
    std::array<double, PanelGrid::kOrder> weights;
    std::array<double, PanelGrid::kOrder> bary;  // barycentric weights
    static const ReferencePanel& get();
};

/// Weights W_j with integral_{-1}^{1} P(u)/(u - zeta) du = sum_j W_j P(u_j) for
/// every polynomial P of degree < kOrder interpolated at the reference nodes,
/// for real zeta outside [-1, 1].
std::array<double, PanelGrid::kOrder> cauchy_weights_outside(double zeta);

/// Principal-value weights for zeta equal to reference node i.
std::array<double, PanelGrid::kOrder> cauchy_weights_at_node(std::size_t i);

/// Principal-value Cauchy integral on a PanelGrid,
///   (P f)_i = p.v. integral f(s) / (s - z_i) ds,
/// with f represented panel-wise by its degree-15 interpolant. Panels close to
/// a target use exact-for-the-interpolant weights; distant panels use the
/// Gauss rule directly. The boundary values of the Cauchy transform
/// C f(z) = (2 pi i)^{-1} integral f(s)/(s - z) ds are C_pm f = +-f/2 + P f / (2 pi i).
///
/// Above kTreeThreshold nodes the far field is summed by a treecode: source
/// boxes well separated from the target are replaced by Chebyshev proxy
/// charges, which keeps the cost near O(N log N) per application.
class CauchyOperator {
public:
    static constexpr std::size_t kTreeThreshold = 2048;

    explicit CauchyOperator(const PanelGrid& grid, bool use_tree = true);

    const PanelGrid& grid() const { return grid_; }

    void apply_pv(std::span<const cdouble> f, std::span<cdouble> out) const;
    /// Two densities in one sweep over the far field.
    void apply_pv2(std::span<const cdouble> f, std::span<const cdouble> g, std::span<cdouble> out_f,
                   std::span<cdouble> out_g) const;

    void apply_plus(std::span<const cdouble> f, std::span<cdouble> out) const;
    void apply_minus(std::span<const cdouble> f, std::span<cdouble> out) const;

    /// Dense real matrix of P.
    Eigen::MatrixXd dense_pv() const;

    /// integral f(s)/(s - z) ds for real z outside the grid's support.
    cdouble integral_off_support(std::span<const cdouble> f, double z) const;

private:
    struct Box {
        Eigen::Index begin = 0;
        Eigen::Index end = 0;
        double lo = 0.0;
        double hi = 0.0;
        int left = -1;
        int right = -1;
    };
    // out(i, c) = sum_j K_ij in(j, c) where in holds real and imaginary parts as columns.
    void apply_columns(const Eigen::ArrayXXd& raw, Eigen::ArrayXXd& out) const;
    int build_tree(Eigen::Index begin, Eigen::Index end);

    struct Near {
        std::size_t first_panel;
        std::size_t last_panel;
        std::size_t offset;  // into near_weights_
    };
    PanelGrid grid_;
    std::vector<Near> near_;
    std::vector<double> near_weights_;
    std::vector<Box> boxes_;
    std::vector<Eigen::MatrixXd> box_interp_;  // node -> Chebyshev proxy weights per box
    std::vector<Eigen::ArrayXd> box_proxy_;    // Chebyshev points per box
};

}  // namespace mkdv
