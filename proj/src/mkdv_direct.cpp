#include "mkdv/mkdv_direct.hpp"

#include "mkdv/errors.hpp"
#include "mkdv/fft.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <limits>
#include <numbers>

namespace mkdv {

namespace {

using cd = std::complex<double>;

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

double edge_level(std::span<const double> y) {
    const std::size_t n = y.size();
    const std::size_t m = std::max<std::size_t>(1, n / 20);
    double e = 0.0;
    for (std::size_t j = 0; j < m; ++j) e = std::max({e, std::abs(y[j]), std::abs(y[n - 1 - j])});
    return e;
}

class Stepper {
public:
    Stepper(std::size_t n, double period, bool dealias)
        : n_(n), fft_(n), k_(n / 2 + 1), mask_(n / 2 + 1, 1.0) {
        for (std::size_t m = 0; m <= n / 2; ++m) {
            k_[m] = 2.0 * std::numbers::pi * static_cast<double>(m) / period;
            if (m == n / 2) mask_[m] = 0.0;
            if (dealias && 3 * m > n) mask_[m] = 0.0;  // keep |m| <= n/3
        }
        kmax_ = 0.0;
        for (std::size_t m = 0; m <= n / 2; ++m)
            if (mask_[m] != 0.0) kmax_ = k_[m];
    }

    double kmax() const { return kmax_; }

    // out = 2 i k FFT(y^3) with y = IFFT(in); also reports max|y|.
    void nonlinear(const std::vector<cd>& in, std::vector<cd>& out, double* ymax) {
        auto spec = fft_.spectrum();
        std::copy(in.begin(), in.end(), spec.begin());
        fft_.inverse();
        auto y = fft_.real_data();
        const double inv_n = 1.0 / static_cast<double>(n_);
        double mx = 0.0;
        for (double& v : y) {
            v *= inv_n;
            mx = std::max(mx, std::abs(v));
            v = v * v * v;
        }
        if (ymax) *ymax = mx;
        fft_.forward();
        out.resize(in.size());
        for (std::size_t m = 0; m < in.size(); ++m) out[m] = cd(0.0, 2.0 * k_[m] * mask_[m]) * spec[m];
    }

    // Linear propagators for a step of size dt (cached by value).
    const std::pair<std::vector<cd>, std::vector<cd>>& propagators(double dt) {
        auto it = cache_.find(dt);
        if (it != cache_.end()) return it->second;
        std::vector<cd> e(k_.size()), e2(k_.size());
        for (std::size_t m = 0; m < k_.size(); ++m) {
            // The Nyquist mode of a real field must stay real.
            const double w = (m + 1 == k_.size()) ? 0.0 : k_[m] * k_[m] * k_[m];
            e[m] = std::polar(1.0, w * dt);
            e2[m] = std::polar(1.0, 0.5 * w * dt);
        }
        if (cache_.size() > 8) cache_.clear();
        return cache_.emplace(dt, std::make_pair(std::move(e), std::move(e2))).first->second;
    }

    // One Lawson RK4 step; returns max|y| seen by the stages.
    double step(std::vector<cd>& u, double dt) {
        const auto& [e, e2] = propagators(dt);
        const std::size_t m = u.size();
        double ymax = 0.0, yk = 0.0;
        nonlinear(u, a_, &yk);
        ymax = std::max(ymax, yk);
        for (std::size_t i = 0; i < m; ++i) tmp_[i] = e2[i] * (u[i] + 0.5 * dt * a_[i]);
        nonlinear(tmp_, b_, &yk);
        ymax = std::max(ymax, yk);
        for (std::size_t i = 0; i < m; ++i) tmp_[i] = e2[i] * u[i] + 0.5 * dt * b_[i];
        nonlinear(tmp_, c_, &yk);
        ymax = std::max(ymax, yk);
        for (std::size_t i = 0; i < m; ++i) tmp_[i] = e[i] * u[i] + dt * e2[i] * c_[i];
        nonlinear(tmp_, d_, &yk);
        ymax = std::max(ymax, yk);
        for (std::size_t i = 0; i < m; ++i)
            u[i] = e[i] * u[i] + dt / 6.0 * (e[i] * a_[i] + 2.0 * e2[i] * (b_[i] + c_[i]) + d_[i]);
        return ymax;
    }

    void prepare(std::size_t m) {
        a_.resize(m);
        b_.resize(m);
        c_.resize(m);
        d_.resize(m);
        tmp_.resize(m);
    }

    std::vector<double> to_field(const std::vector<cd>& u) {
        auto spec = fft_.spectrum();
        std::copy(u.begin(), u.end(), spec.begin());
        fft_.inverse();
        std::vector<double> y(fft_.real_data().begin(), fft_.real_data().end());
        for (double& v : y) v /= static_cast<double>(n_);
        return y;
    }

    std::vector<cd> to_spectrum(std::span<const double> y) {
        std::copy(y.begin(), y.end(), fft_.real_data().begin());
        fft_.forward();
        return {fft_.spectrum().begin(), fft_.spectrum().end()};
    }

private:
    std::size_t n_;
    RealFft fft_;
    std::vector<double> k_;
    std::vector<double> mask_;
    double kmax_ = 0.0;
    std::map<double, std::pair<std::vector<cd>, std::vector<cd>>> cache_;
    std::vector<cd> a_, b_, c_, d_, tmp_;
};

}  // namespace

double field_mass(std::span<const double> y, double h) {
    double s = 0.0;
    for (double v : y) s += v;
    return s * h;
}

double field_l2(std::span<const double> y, double h) {
    double s = 0.0;
    for (double v : y) s += v * v;
    return s * h;
}

std::size_t Trajectory::index_of(double t) const {
    if (times.empty()) throw InputError("Trajectory: no stored times");
    std::size_t best = 0;
    for (std::size_t k = 1; k < times.size(); ++k)
        if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
    return best;
}

double Trajectory::mass_drift() const {
    double d = 0.0;
    const double ref = std::abs(mass.front());
    for (double m : mass) d = std::max(d, std::abs(m - mass.front()));
    return ref > 0.0 ? d / ref : d;
}

double Trajectory::l2_drift() const {
    double d = 0.0;
    const double ref = l2norm.front();
    for (double m : l2norm) d = std::max(d, std::abs(m - l2norm.front()));
    return ref > 0.0 ? d / ref : d;
}

std::vector<double> Trajectory::sample(std::size_t k, std::span<const double> xs) const {
    if (k >= fields.size()) throw InputError("Trajectory::sample: snapshot index out of range");
    RealFft fft(n);
    std::copy(fields[k].begin(), fields[k].end(), fft.real_data().begin());
    fft.forward();
    const auto spec = fft.spectrum();
    const double period = spacing * static_cast<double>(n);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double xv : xs) {
        const double u = 2.0 * std::numbers::pi * (xv - grid_start) / period;
        double s = spec[0].real();
        const cd step = std::polar(1.0, u);
        cd ph = step;
        for (std::size_t m = 1; m < n / 2; ++m) {
            s += 2.0 * (spec[m] * ph).real();
            ph *= step;
            if (m % 64 == 0) ph = std::polar(1.0, u * static_cast<double>(m + 1));
        }
        s += (spec[n / 2] * std::cos(u * static_cast<double>(n / 2))).real();
        out.push_back(s / static_cast<double>(n));
    }
    return out;
}

Trajectory evolve(const SampledPotential& y0, double t_end, const DirectConfig& cfg) {
    y0.validate(cfg.input_edge_rel);
    if (!is_pow2(y0.size())) throw InputError(fmt::format("evolve: N = {} is not a power of two", y0.size()));
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InputError("evolve: requires t_end > 0");
    if (!(cfg.cfl > 0.0) || cfg.dt < 0.0 || !(cfg.dt_max > 0.0)) throw InputError("evolve: invalid step settings");

    std::vector<double> stops;
    for (double t : cfg.snapshot_times) {
        if (!(t > 0.0) || t > t_end) throw InputError(fmt::format("evolve: snapshot time {} outside (0, {}]", t, t_end));
        stops.push_back(t);
    }
    stops.push_back(t_end);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    const std::size_t n = y0.size();
    const double h = y0.spacing;
    Stepper st(n, h * static_cast<double>(n), cfg.dealias);
    std::vector<cd> u = st.to_spectrum(y0.values);
    st.prepare(u.size());

    Trajectory tr;
    tr.grid_start = y0.grid_start;
    tr.spacing = h;
    tr.n = n;
    auto record = [&](double t, std::vector<double> field) {
        tr.times.push_back(t);
        tr.mass.push_back(field_mass(field, h));
        tr.l2norm.push_back(field_l2(field, h));
        const double e = edge_level(field);
        tr.edge_max.push_back(e);
        if (e > cfg.edge_tol) tr.domain_limited = true;
        tr.fields.push_back(std::move(field));
    };
    record(0.0, y0.values);

    const double ymax0 = std::max(y0.max_abs(), 1e-300);
    double dt = cfg.dt > 0.0 ? cfg.dt : std::min(cfg.dt_max, cfg.cfl / (6.0 * ymax0 * ymax0 * st.kmax()));
    double t = 0.0;
    for (double stop : stops) {
        while (t < stop) {
            const double remaining = stop - t;
            const auto nsteps = static_cast<std::size_t>(std::ceil(remaining / dt - 1e-9));
            const double dt_here = remaining / static_cast<double>(std::max<std::size_t>(nsteps, 1));
            std::vector<cd> saved = u;
            const double ymax = st.step(u, dt_here);
            const double stiffness = dt_here * 6.0 * ymax * ymax * st.kmax();
            bool finite = true;
            for (const cd& v : u) finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
            if (!finite || stiffness > cfg.cfl * 1.0000001) {
                if (tr.halvings >= cfg.max_halvings) {
                    throw NumericalError(fmt::format(
                        "evolve: step restriction at t = {} (dt = {}, stability number {:.3f}) after {} halvings", t,
                        dt_here, stiffness, tr.halvings));
                }
                u = std::move(saved);
                dt *= 0.5;
                ++tr.halvings;
                continue;
            }
            t = (nsteps <= 1) ? stop : t + dt_here;
            ++tr.steps;
        }
        record(stop, st.to_field(u));
    }
    tr.dt = dt;
    return tr;
}

std::vector<double> linear_evolve(const SampledPotential& y0, double t) {
    // Exact on any periodic field, so edge decay is not required here.
    y0.validate(std::numeric_limits<double>::infinity());
    const std::size_t n = y0.size();
    RealFft fft(n);
    std::copy(y0.values.begin(), y0.values.end(), fft.real_data().begin());
    fft.forward();
    auto spec = fft.spectrum();
    const double period = y0.spacing * static_cast<double>(n);
    for (std::size_t m = 0; m < spec.size(); ++m) {
        const double k = 2.0 * std::numbers::pi * static_cast<double>(m) / period;
        if (n % 2 == 0 && m == n / 2) continue;  // the Nyquist mode of a real field stays real
        spec[m] *= std::polar(1.0, k * k * k * t);
    }
    fft.inverse();
    std::vector<double> y(fft.real_data().begin(), fft.real_data().end());
    for (double& v : y) v /= static_cast<double>(n);
    return y;
}

}  // namespace mkdv
