#include "mkdv/interpolation.hpp"

#include "mkdv/errors.hpp"
#include "mkdv/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mkdv {

CubicSpline::CubicSpline(std::span<const double> x, std::span<const cdouble> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) throw InputError("cubic spline needs at least 3 matching samples");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) throw InputError("cubic spline abscissae must increase strictly");
    }
    // Tridiagonal solve for interior second derivatives (natural ends).
    std::vector<double> c(n, 0.0);
    std::vector<cdouble> d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        const double a = h0 / 6.0;
        const double b = (h0 + h1) / 3.0;
        const double cc = h1 / 6.0;
        const cdouble rhs = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        const double denom = b - a * c[i - 1];
        c[i] = cc / denom;
        d[i] = (rhs - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
    }
}

cdouble CubicSpline::operator()(double t) const {
    if (t < x_.front() || t > x_.back()) return 0.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) i = 1;
    if (i >= x_.size()) i = x_.size() - 1;
    const double h = x_[i] - x_[i - 1];
    const double a = (x_[i] - t) / h;
    const double b = (t - x_[i - 1]) / h;
    return a * y_[i - 1] + b * y_[i] + ((a * a * a - a) * m_[i - 1] + (b * b * b - b) * m_[i]) * (h * h / 6.0);
}

TrigInterpolant::TrigInterpolant(double z_start, double dz, std::span<const cdouble> samples)
    : z_start_(z_start), period_(dz * static_cast<double>(samples.size())) {
    const std::size_t n = samples.size();
    if (n < 4) throw InputError("trigonometric interpolation needs at least 4 samples");
    ComplexFft fft(n);
    std::copy(samples.begin(), samples.end(), fft.data().begin());
    fft.forward();
    const auto spec = fft.data();
    even_ = (n % 2 == 0);
    kmax_ = static_cast<int>(n / 2);
    coeff_.assign(2 * static_cast<std::size_t>(kmax_) + 1, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int k = -kmax_; k <= kmax_; ++k) {
        const std::size_t idx = static_cast<std::size_t>((k % static_cast<int>(n) + static_cast<int>(n)) % static_cast<int>(n));
        cdouble c = spec[idx] * inv_n;
        if (even_ && (k == kmax_ || k == -kmax_)) c *= 0.5;  // split the Nyquist mode symmetrically
        coeff_[static_cast<std::size_t>(k + kmax_)] = c;
    }
}

cdouble TrigInterpolant::sum(double z, bool differentiate) const {
    const double w = 2.0 * std::numbers::pi / period_;
    const double u = w * (z - z_start_);
    const cdouble step = std::polar(1.0, u);
    // Start at wavenumber -kmax and rotate upward; resynchronize periodically.
    cdouble acc = 0.0;
    cdouble e = std::polar(1.0, -static_cast<double>(kmax_) * u);
    for (int k = -kmax_; k <= kmax_; ++k) {
        if (((k + kmax_) & 63) == 0) e = std::polar(1.0, static_cast<double>(k) * u);
        cdouble c = coeff_[static_cast<std::size_t>(k + kmax_)];
        if (differentiate) c *= cdouble(0.0, w * static_cast<double>(k));
        acc += c * e;
        e *= step;
    }
    return acc;
}

cdouble TrigInterpolant::value(double z) const { return sum(z, false); }
cdouble TrigInterpolant::derivative(double z) const { return sum(z, true); }

}  // namespace mkdv
