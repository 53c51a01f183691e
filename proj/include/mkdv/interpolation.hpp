#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mkdv {

using cdouble = std::complex<double>;

/// Natural cubic spline through complex samples on a strictly increasing grid.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::span<const double> x, std::span<const cdouble> y);

    /// Value at t; outside the grid the end cubic is not extrapolated, the
    /// spline returns zero (samples are assumed to have decayed there).
    cdouble operator()(double t) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_;
    std::vector<cdouble> y_;
    std::vector<cdouble> m_;  // second derivatives
};

/// Trigonometric interpolant of samples on a uniform grid, treated as one
/// period of length N*dz. Spectrally accurate for smooth data that decays
/// to round-off at both ends of the grid.
class TrigInterpolant {
public:
    TrigInterpolant() = default;
    TrigInterpolant(double z_start, double dz, std::span<const cdouble> samples);

    cdouble value(double z) const;
    cdouble derivative(double z) const;

private:
    cdouble sum(double z, bool differentiate) const;

    double z_start_ = 0.0;
    double period_ = 1.0;
    std::vector<cdouble> coeff_;  // index k <-> wavenumber k - kmax
    int kmax_ = 0;
    bool even_ = false;
};

}  // namespace mkdv
