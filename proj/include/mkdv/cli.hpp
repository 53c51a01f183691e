#pragma once

#include "mkdv/regions.hpp"

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace mkdv {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "MKDV_OUT_DIR";

struct RunConfig {
    std::string subcommand;

    // initial data
    std::string preset = "sech";
    double amplitude = 0.1;
    double width = 1.0;
    double center = 0.0;
    std::string potential_csv;
    double half_width = 40.0;
    std::size_t points = 1024;

    // scattering
    std::size_t zpoints = 1025;
    double zmax = 0.0;  // 0: grow until r has decayed

    // evaluation points
    double t = 0.0;
    std::vector<double> times;
    std::vector<double> xs;
    double x_min = -20.0;
    double x_max = 20.0;
    std::size_t x_count = 41;
    double t_min = 1.0;
    double t_max = 100.0;
    std::size_t t_count = 4;

    // direct solver
    double direct_start = -2048.0;
    double direct_spacing = 0.125;
    int direct_log2n = 15;
    double dt = 0.01;

    // Riemann-Hilbert solver
    double tail_tol = 1e-8;
    std::size_t max_nodes = 40000;

    // Painleve II
    double k = std::numeric_limits<double>::quiet_NaN();  // NaN: i r(0)
    double s_min = -40.0;
    double s_max = 0.0;  // 0: automatic

    RegionConfig regions;
    std::string output_dir;
    bool plots = true;

    /// Throws InputError for non-positive tolerances, empty grids or missing files.
    void validate() const;
};

struct RunResult {
    std::filesystem::path output_dir;
    std::vector<std::filesystem::path> files;
};

/// Executes one subcommand. Files written before an error are removed and the
/// error is rethrown.
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Parses arguments (args[0] is the program name), merges an optional flat JSON
/// config file given by --config, runs and maps errors to exit codes:
/// 0 ok, 1 input error, 2 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mkdv
