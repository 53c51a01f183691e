#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mkdv {

/// Real initial data y0 sampled on a uniform grid x_j = grid_start + j*spacing.
///
/// The grid is treated as one period of length N*spacing; the outer samples
/// must be negligible so that the periodic extension is smooth.
struct SampledPotential {
    double grid_start = 0.0;
    double spacing = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double x(std::size_t j) const { return grid_start + static_cast<double>(j) * spacing; }
    double length() const { return spacing * static_cast<double>(values.size()); }
    double half_width() const { return 0.5 * length(); }
    double max_abs() const;

    /// Throws InputError unless: N >= 16, spacing > 0, all values finite, and
    /// |y0| over the outer 5% of the grid is below edge_rel * max|y0|.
    void validate(double edge_rel = 1e-12) const;

    /// Largest |y0| over the outer 5% (each side) of the grid.
    double edge_max() const;
};

/// Analytic preset shapes: "zero", "gaussian", "sech", "sech2".
struct PresetSpec {
    std::string name = "sech";
    double amplitude = 0.1;
    double width = 1.0;
    double center = 0.0;
};

double preset_value(const PresetSpec& spec, double x);

/// Samples a preset on N points covering [x_min, x_min + N*h).
SampledPotential sample_preset(const PresetSpec& spec, double x_min, double spacing, std::size_t n);

/// Symmetric grid of n points on [-half_width, half_width).
SampledPotential sample_preset_symmetric(const PresetSpec& spec, double half_width, std::size_t n);

/// Reads a two-column CSV (x, y0); an optional non-numeric header line is skipped.
/// The abscissae must be uniformly spaced.
SampledPotential read_potential_csv(const std::filesystem::path& path);

/// FNV-1a hash of grid and sample bits; identifies the generating potential.
std::uint64_t potential_hash(const SampledPotential& y0);

}  // namespace mkdv
