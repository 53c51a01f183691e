#pragma once

#include "mkdv/potential.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mkdv {

struct DirectConfig {
    /// Fixed step; 0 selects dt from the nonlinear stability bound, capped by dt_max.
    double dt = 0.0;
    double dt_max = 0.02;
    /// Largest allowed dt * 6 max(y^2) k_max; RK4 is stable up to ~2.8.
    double cfl = 1.0;
    int max_halvings = 6;
    bool dealias = true;
    /// Edge level above which a snapshot marks the run as domain-limited.
    double edge_tol = 1e-8;
    /// Edge decay demanded of the input; relax it to restart from an evolved field.
    double input_edge_rel = 1e-12;
    /// Stored times in (0, t_end]; t = 0 and t_end are always stored.
    std::vector<double> snapshot_times;
};

struct Trajectory {
    double grid_start = 0.0;
    double spacing = 0.0;
    std::size_t n = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> fields;
    std::vector<double> mass;    // integral y dx
    std::vector<double> l2norm;  // integral y^2 dx
    std::vector<double> edge_max;
    bool domain_limited = false;
    double dt = 0.0;
    int halvings = 0;
    std::size_t steps = 0;

    double x(std::size_t j) const { return grid_start + static_cast<double>(j) * spacing; }
    double half_width() const { return 0.5 * spacing * static_cast<double>(n); }
    /// Index of the stored time closest to t.
    std::size_t index_of(double t) const;
    /// max_k |m_k - m_0| / |m_0|, or absolute when m_0 == 0.
    double mass_drift() const;
    double l2_drift() const;
    /// Trigonometric interpolation of snapshot k at arbitrary x.
    std::vector<double> sample(std::size_t k, std::span<const double> xs) const;
};

/// Integrating-factor pseudo-spectral solver for y_t - 6 y^2 y_x + y_xxx = 0 on
/// the periodic extension of y0's grid. In Fourier space
///   d/dt yhat = i k^3 yhat + 2 i k FFT(y^3),
/// the linear part is propagated exactly and the nonlinear term by RK4 (Lawson).
/// A step that pushes the nonlinear stability number above cfg.cfl, or produces
/// non-finite values, is retried with dt halved up to cfg.max_halvings times.
Trajectory evolve(const SampledPotential& y0, double t_end, const DirectConfig& cfg = {});

/// Exact solution of y_t + y_xxx = 0 on the periodic grid: yhat(k, t) = e^{i k^3 t} yhat(k, 0).
std::vector<double> linear_evolve(const SampledPotential& y0, double t);

/// Integrals over one period by the trapezoid rule (spectrally exact).
double field_mass(std::span<const double> y, double h);
double field_l2(std::span<const double> y, double h);

}  // namespace mkdv
