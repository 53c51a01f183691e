#include "mkdv/potential.hpp"

#include "mkdv/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace mkdv {

double SampledPotential::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SampledPotential::edge_max() const {
    const std::size_t n = values.size();
    const std::size_t band = std::max<std::size_t>(1, n / 20);
    double m = 0.0;
    for (std::size_t j = 0; j < band && j < n; ++j) {
        m = std::max(m, std::abs(values[j]));
        m = std::max(m, std::abs(values[n - 1 - j]));
    }
    return m;
}

void SampledPotential::validate(double edge_rel) const {
    if (values.size() < 16) {
        throw InputError(fmt::format("potential needs at least 16 samples, got {}", values.size()));
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing) || !std::isfinite(grid_start)) {
        throw InputError(fmt::format("potential grid spacing must be positive and finite, got {}", spacing));
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw InputError("potential contains non-finite values");
    }
    const double peak = max_abs();
    const double edge = edge_max();
    if (peak > 0.0 && edge > edge_rel * peak) {
        throw InputError(fmt::format(
            "potential does not decay: |y0| = {:.3e} in the outer 5% of the grid exceeds {:.1e} * max|y0| = {:.3e}; "
            "enlarge the domain",
            edge, edge_rel, edge_rel * peak));
    }
}

double preset_value(const PresetSpec& spec, double x) {
    const double u = (x - spec.center) / spec.width;
    if (spec.name == "zero") return 0.0;
    if (spec.name == "gaussian") return spec.amplitude * std::exp(-u * u);
    if (spec.name == "sech") return spec.amplitude / std::cosh(u);
    if (spec.name == "sech2") {
        const double s = 1.0 / std::cosh(u);
        return spec.amplitude * s * s;
    }
    throw InputError(fmt::format("unknown potential preset '{}' (expected zero, gaussian, sech, sech2)", spec.name));
}

SampledPotential sample_preset(const PresetSpec& spec, double x_min, double spacing, std::size_t n) {
    if (!(spec.width > 0.0)) throw InputError("preset width must be positive");
    SampledPotential y0;
    y0.grid_start = x_min;
    y0.spacing = spacing;
    y0.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) y0.values[j] = preset_value(spec, y0.x(j));
    return y0;
}

SampledPotential sample_preset_symmetric(const PresetSpec& spec, double half_width, std::size_t n) {
    return sample_preset(spec, -half_width, 2.0 * half_width / static_cast<double>(n), n);
}

SampledPotential read_potential_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("cannot open potential file '{}'", path.string()));
    std::vector<double> xs, ys;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x = 0.0, y = 0.0;
        if (!(ls >> x >> y)) {
            if (xs.empty()) continue;  // header
            throw InputError(fmt::format("{}:{}: expected two numeric columns", path.string(), lineno));
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 2) throw InputError(fmt::format("'{}' holds fewer than two samples", path.string()));
    const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t j = 1; j < xs.size(); ++j) {
        if (std::abs(xs[j] - xs[j - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw InputError(fmt::format("{}: abscissae must be uniformly spaced (row {})", path.string(), j + 1));
        }
    }
    SampledPotential y0;
    y0.grid_start = xs.front();
    y0.spacing = h;
    y0.values = std::move(ys);
    return y0;
}

std::uint64_t potential_hash(const SampledPotential& y0) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof bits);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(y0.grid_start);
    mix(y0.spacing);
    for (double v : y0.values) mix(v);
    return h;
}

}  // namespace mkdv
