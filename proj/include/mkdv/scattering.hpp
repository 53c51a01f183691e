#pragma once

#include "mkdv/interpolation.hpp"
#include "mkdv/potential.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mkdv {

/// Sign/normalization convention of the reflection coefficient.
///
/// Jost system psi_x = (-i z sigma3 + Q) psi with Q = [[0, i y], [-i y, 0]],
/// scattering matrix [[a, conj b], [b, conj a]], r = b / a. With this choice
/// the Riemann-Hilbert jump is [[1-|r|^2, -conj r], [r, 1]] conjugated by
/// exp(-i (x z + 4 t z^3) sigma3), and r(z) = -conj(r(-z)).
inline constexpr const char* kConventionTag = "zs-defocusing/Q=[[0,iy],[-iy,0]]/r=b/a";

struct ReflectionCoefficient {
    std::vector<double> zgrid;
    std::vector<cdouble> values;
    std::uint64_t potential_hash = 0;
    std::string convention = kConventionTag;

    std::size_t size() const { return zgrid.size(); }
    double sup_abs() const;
    /// max_z |r(z) + conj(r(-z))| over the (symmetric) grid.
    double symmetry_residual() const;
    /// max(|r(z_min)|, |r(z_max)|) / sup|r|; zero for r == 0.
    double edge_ratio() const;
    bool uniform() const;

    /// Throws NumericalError if sup|r| >= 1 or the symmetry residual exceeds tol_sym.
    void check_invariants(double tol_sym = 1e-8) const;

    CubicSpline spline() const;
    /// Requires a uniform grid.
    TrigInterpolant trig_interpolant() const;
};

struct ScatterConfig {
    /// Richardson error bound per unit length of the integration interval.
    double tol_per_length = 1e-10;
    /// Upsampling levels tried beyond the initial one before giving up.
    int max_refinements = 6;
    double edge_rel = 1e-12;
    double tol_sym = 1e-8;
    unsigned threads = 0;
};

struct ScatterDiagnostics {
    int upsample_level = 0;
    double step = 0.0;
    double richardson_error = 0.0;
    /// max_z ||a|^2 - |b|^2 - 1|, conserved exactly by the Jost system.
    double determinant_defect = 0.0;
};

/// Symmetric uniform grid of n points on [-z_max, z_max].
std::vector<double> uniform_zgrid(double z_max, std::size_t n = 1025);

/// Throws InputError unless zgrid is increasing and symmetric about 0.
void validate_symmetric_grid(std::span<const double> zgrid);

/// Reflection coefficient of a real decaying potential: integrates the
/// conjugated Jost system with fixed-step RK4 on spectrally upsampled data and
/// controls the error by Richardson step halving.
ReflectionCoefficient forward_scatter(const SampledPotential& y0, std::span<const double> zgrid,
                                      const ScatterConfig& cfg = {}, ScatterDiagnostics* diag = nullptr);

/// First-order (Born) approximation r(z) ~ -i * integral y0(x) exp(-2 i z x) dx,
/// evaluated by the trapezoid rule on the periodic sample grid.
ReflectionCoefficient born_approximation(const SampledPotential& y0, std::span<const double> zgrid);

/// forward_scatter on uniform_zgrid(z_max, n) with z_max grown until
/// |r(+-z_max)| < 1e-10 * sup|r|.
ReflectionCoefficient forward_scatter_auto(const SampledPotential& y0, std::size_t n = 1025,
                                           const ScatterConfig& cfg = {}, ScatterDiagnostics* diag = nullptr);

}  // namespace mkdv
