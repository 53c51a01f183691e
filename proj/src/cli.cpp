#include "mkdv/cli.hpp"

#include "mkdv/asymptotics.hpp"
#include "mkdv/errors.hpp"
#include "mkdv/inverse_rh.hpp"
#include "mkdv/mkdv_direct.hpp"
#include "mkdv/painleve.hpp"
#include "mkdv/scattering.hpp"
#include "mkdv/svg_plot.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>

namespace mkdv {

namespace fs = std::filesystem;
using json = nlohmann::json;

void RunConfig::validate() const {
    static const std::vector<std::string> subs = {"scatter", "evolve", "inverse", "asympt", "pii", "compare"};
    if (std::find(subs.begin(), subs.end(), subcommand) == subs.end())
        throw InputError(fmt::format("unknown subcommand '{}'", subcommand));
    for (double v : {width, half_width, direct_spacing, dt, tail_tol}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("widths, spacings, steps and tolerances must be positive");
    }
    if (points < 16 || zpoints < 3 || x_count < 1 || t_count < 1) throw InputError("grid sizes are too small");
    if (direct_log2n < 4 || direct_log2n > 24) throw InputError("direct_log2n must lie in [4, 24]");
    if (zmax < 0.0 || s_max < 0.0 || t < 0.0) throw InputError("zmax, s_max and t must be non-negative");
    if (x_count > 1 && !(x_min < x_max)) throw InputError("x_min must be below x_max");
    if (t_count > 1 && !(t_min < t_max)) throw InputError("t_min must be below t_max");
    if (!(t_min > 0.0)) throw InputError("t_min must be positive");
    if (!potential_csv.empty() && !fs::exists(potential_csv))
        throw InputError(fmt::format("potential file '{}' does not exist", potential_csv));
    regions.validate();
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

class Outputs {
public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

    std::ofstream open(const std::string& name) {
        const fs::path p = dir_ / name;
        files_.push_back(p);
        std::ofstream f(p, std::ios::binary);
        if (!f) throw InputError(fmt::format("cannot write '{}'", p.string()));
        return f;
    }
    void text(const std::string& name, const std::string& content) {
        auto f = open(name);
        f << content;
    }
    void remove_all() noexcept {
        for (const auto& p : files_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        files_.clear();
    }
    const fs::path& dir() const { return dir_; }
    const std::vector<fs::path>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<fs::path> files_;
};

PresetSpec preset_of(const RunConfig& c) { return {c.preset, c.amplitude, c.width, c.center}; }

SampledPotential scattering_potential(const RunConfig& c) {
    if (!c.potential_csv.empty()) return read_potential_csv(c.potential_csv);
    return sample_preset_symmetric(preset_of(c), c.half_width, c.points);
}

SampledPotential direct_potential(const RunConfig& c) {
    if (!c.potential_csv.empty()) return read_potential_csv(c.potential_csv);
    return sample_preset(preset_of(c), c.direct_start, c.direct_spacing, std::size_t{1} << c.direct_log2n);
}

ReflectionCoefficient reflection(const RunConfig& c, std::ostream& log) {
    const SampledPotential y0 = scattering_potential(c);
    ReflectionCoefficient r = c.zmax > 0.0 ? forward_scatter(y0, uniform_zgrid(c.zmax, c.zpoints))
                                           : forward_scatter_auto(y0, c.zpoints);
    r.check_invariants();
    fmt::print(log, "reflection: z_max = {:.6g}, sup|r| = {:.6g}, symmetry residual = {:.3e}\n", r.zgrid.back(),
               r.sup_abs(), r.symmetry_residual());
    return r;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n == 1) return {a};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> x_points(const RunConfig& c) { return c.xs.empty() ? linspace(c.x_min, c.x_max, c.x_count) : c.xs; }

std::vector<double> t_points(const RunConfig& c) {
    return c.times.empty() ? linspace(c.t_min, c.t_max, c.t_count) : c.times;
}

RhConfig rh_config(const RunConfig& c) {
    RhConfig rc;
    rc.tail_tol = c.tail_tol;
    rc.max_nodes = c.max_nodes;
    return rc;
}

void maybe_plot(const RunConfig& c, Outputs& out, const std::string& name, const std::string& title,
                const std::string& xl, const std::string& yl, const std::vector<PlotSeries>& s, bool log_y = false) {
    if (c.plots) out.text(name, render_svg_plot(title, xl, yl, s, log_y));
}

void cmd_scatter(const RunConfig& c, Outputs& out, std::ostream& log) {
    const ReflectionCoefficient r = reflection(c, log);
    auto f = out.open("reflection.csv");
    f << "z,re_r,im_r,abs_r\n";
    PlotSeries s{"|r(z)|", {}, {}};
    for (std::size_t i = 0; i < r.size(); ++i) {
        f << fmt::format("{},{},{},{}\n", num(r.zgrid[i]), num(r.values[i].real()), num(r.values[i].imag()),
                         num(std::abs(r.values[i])));
        s.x.push_back(r.zgrid[i]);
        s.y.push_back(std::abs(r.values[i]));
    }
    maybe_plot(c, out, "reflection.svg", "reflection coefficient", "z", "|r|", {s});
}

void cmd_evolve(const RunConfig& c, Outputs& out, std::ostream& log) {
    const SampledPotential y0 = direct_potential(c);
    DirectConfig dc;
    dc.dt = c.dt;
    double t_end = c.t;
    for (double t : c.times) t_end = std::max(t_end, t);
    if (!(t_end > 0.0)) throw InputError("evolve needs --t or --times with a positive time");
    dc.snapshot_times = c.times;
    const Trajectory tr = evolve(y0, t_end, dc);
    fmt::print(log, "evolve: N = {}, dt = {}, steps = {}, mass drift = {:.3e}, L2 drift = {:.3e}{}\n", tr.n, tr.dt,
               tr.steps, tr.mass_drift(), tr.l2_drift(), tr.domain_limited ? ", domain-limited" : "");
    std::vector<PlotSeries> series;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        auto f = out.open(fmt::format("snapshot_t{}.csv", tr.times[k]));
        f << "x,y\n";
        PlotSeries s{fmt::format("t = {}", tr.times[k]), {}, {}};
        const std::size_t stride = std::max<std::size_t>(1, tr.n / 4096);
        for (std::size_t j = 0; j < tr.n; ++j) {
            f << num(tr.x(j)) << ',' << num(tr.fields[k][j]) << '\n';
            if (j % stride == 0) {
                s.x.push_back(tr.x(j));
                s.y.push_back(tr.fields[k][j]);
            }
        }
        series.push_back(std::move(s));
    }
    auto f = out.open("conservation.csv");
    f << "t,mass,l2norm,edge_max\n";
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        f << fmt::format("{},{},{},{}\n", num(tr.times[k]), num(tr.mass[k]), num(tr.l2norm[k]), num(tr.edge_max[k]));
    maybe_plot(c, out, "snapshots.svg", "direct solver snapshots", "x", "y", series);
}

void cmd_inverse(const RunConfig& c, Outputs& out, std::ostream& log) {
    const ReflectionCoefficient r = reflection(c, log);
    const std::vector<double> xs = x_points(c);
    const auto pts = solve_rh_many(r, xs, c.t, rh_config(c));
    auto f = out.open("inverse.csv");
    f << "x,t,y_rh,residual_norm,imag_residue,nodes_used\n";
    PlotSeries s{"y_rh", {}, {}};
    for (const RhPoint& p : pts) {
        f << fmt::format("{},{},{},{},{},{}\n", num(p.x), num(p.t), num(p.y), num(p.residual_norm),
                         num(p.imag_residue), p.nodes);
        s.x.push_back(p.x);
        s.y.push_back(p.y);
    }
    maybe_plot(c, out, "inverse.svg", fmt::format("RH reconstruction, t = {}", c.t), "x", "y", {s});
}

double pii_parameter(const RunConfig& c, const ReflectionCoefficient& r) {
    return std::isnan(c.k) ? default_pii_parameter(r) : c.k;
}

PainleveProfile profile_for(const RunConfig& c, double k, double s_lo) {
    const double s_max = c.s_max > 0.0 ? c.s_max : pii_default_s_max(k);
    return solve_pii(k, std::min(c.s_min, s_lo - 0.1), s_max);
}

void cmd_asympt(const RunConfig& c, Outputs& out, std::ostream& log) {
    const ReflectionCoefficient r = reflection(c, log);
    const double k = pii_parameter(c, r);
    const std::vector<double> xs = x_points(c), ts = t_points(c);
    double s_lo = c.s_min;
    for (double t : ts) {
        for (double x : xs) {
            const Region g = classify(x, t, c.regions);
            if (g == Region::III || g == Region::IV || g == Region::V) s_lo = std::min(s_lo, similarity_variable(x, t));
        }
    }
    const PainleveProfile prof = profile_for(c, k, s_lo);
    fmt::print(log, "asympt: k = {:.12g}, profile on [{}, {}]\n", k, prof.s_min(), prof.s_max());
    auto f = out.open("asympt.csv");
    f << "x,t,region,value,error_order\n";
    auto g = out.open("oscillatory.csv");
    g << "x,t,z0,tau,nu,phi,amplitude,y_a\n";
    std::vector<PlotSeries> series;
    for (double t : ts) {
        PlotSeries s{fmt::format("t = {}", t), {}, {}};
        for (double x : xs) {
            const AsymptoticPrediction p = predict(x, t, r, prof, c.regions);
            f << fmt::format("{},{},{},{},\"{}\"\n", num(x), num(t), region_name(p.region), num(p.value), p.error.order);
            if (x < 0.0) {
                const AsymptoticParams a = y_a_eval(x, t, r);
                g << fmt::format("{},{},{},{},{},{},{},{}\n", num(x), num(t), num(a.point.z0), num(a.point.tau),
                                 num(a.nu), num(a.phi), num(a.amplitude), num(a.y_a));
            }
            s.x.push_back(x);
            s.y.push_back(p.value);
        }
        series.push_back(std::move(s));
    }
    maybe_plot(c, out, "asympt.svg", "region-dispatched leading asymptotics", "x", "y", series);
}

void cmd_pii(const RunConfig& c, Outputs& out, std::ostream& log) {
    double k = c.k;
    if (std::isnan(k)) k = default_pii_parameter(reflection(c, log));
    double s_lo = c.s_min;
    for (double t : c.times)
        for (double x : x_points(c)) s_lo = std::min(s_lo, similarity_variable(x, t));
    const PainleveProfile prof = profile_for(c, k, s_lo);
    fmt::print(log, "pii: k = {:.12g}, residual = {:.3e}, p(0) = {}\n", k, prof.residual_norm,
               prof.contains(0.0) ? num(prof(0.0)) : "n/a");
    auto f = out.open("pii.csv");
    f << "s,p,residual\n";
    PlotSeries s{fmt::format("k = {:.6g}", k), {}, {}};
    for (std::size_t i = prof.sgrid.size(); i-- > 0;) {
        const bool interior = i >= 2 && i + 2 < prof.sgrid.size();
        f << fmt::format("{},{},{}\n", num(prof.sgrid[i]), num(prof.p[i]), interior ? num(prof.residual_at(i)) : "");
        s.x.push_back(prof.sgrid[i]);
        s.y.push_back(prof.p[i]);
    }
    maybe_plot(c, out, "pii.svg", "Painleve II profile", "s", "p", {s});
    if (!c.times.empty()) {
        auto g = out.open("similarity.csv");
        g << "x,t,y_pii\n";
        for (double t : c.times)
            for (double x : x_points(c)) g << fmt::format("{},{},{}\n", num(x), num(t), num(similarity_eval_tail(x, t, prof)));
    }
}

void cmd_compare(const RunConfig& c, Outputs& out, std::ostream& log) {
    const ReflectionCoefficient r = reflection(c, log);
    const std::vector<double> xs = x_points(c);
    const SampledPotential y0 = direct_potential(c);
    Trajectory tr;
    if (c.t > 0.0) {
        DirectConfig dc;
        dc.dt = c.dt;
        tr = evolve(y0, c.t, dc);
        fmt::print(log, "direct: L2 drift = {:.3e}{}\n", tr.l2_drift(), tr.domain_limited ? ", domain-limited" : "");
    } else {
        y0.validate();
        tr.grid_start = y0.grid_start;
        tr.spacing = y0.spacing;
        tr.n = y0.size();
        tr.times = {0.0};
        tr.fields = {y0.values};
    }
    const std::vector<double> yd = tr.sample(tr.fields.size() - 1, xs);
    const auto rh = solve_rh_many(r, xs, c.t, rh_config(c));

    const bool asym = c.t >= c.regions.t_min;
    PainleveProfile prof;
    if (asym) {
        double s_lo = c.s_min;
        for (double x : xs) s_lo = std::min(s_lo, similarity_variable(x, c.t));
        prof = profile_for(c, pii_parameter(c, r), s_lo);
    }
    auto f = out.open("compare.csv");
    f << "x,t,y_direct,y_rh,y_asym,region,abs_err_rh,abs_err_asym\n";
    PlotSeries sd{"direct", {}, {}}, sr{"RH", {}, {}}, sa{"asymptotic", {}, {}};
    PlotSeries er{"|RH - direct|", {}, {}}, ea{"|asym - direct|", {}, {}};
    double max_rh = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double ya = std::nan("");
        std::string tag = "-";
        if (asym) {
            const AsymptoticPrediction p = predict(xs[i], c.t, r, prof, c.regions);
            ya = p.value;
            tag = std::string(region_name(p.region));
        }
        const double e_rh = std::abs(rh[i].y - yd[i]);
        const double e_as = std::abs(ya - yd[i]);
        max_rh = std::max(max_rh, e_rh);
        f << fmt::format("{},{},{},{},{},{},{},{}\n", num(xs[i]), num(c.t), num(yd[i]), num(rh[i].y), num(ya), tag,
                         num(e_rh), num(e_as));
        sd.x.push_back(xs[i]);
        sd.y.push_back(yd[i]);
        sr.x.push_back(xs[i]);
        sr.y.push_back(rh[i].y);
        sa.x.push_back(xs[i]);
        sa.y.push_back(ya);
        er.x.push_back(xs[i]);
        er.y.push_back(e_rh);
        ea.x.push_back(xs[i]);
        ea.y.push_back(e_as);
    }
    fmt::print(log, "compare: max |y_rh - y_direct| = {:.3e}\n", max_rh);
    maybe_plot(c, out, "compare.svg", fmt::format("direct vs RH vs asymptotic, t = {}", c.t), "x", "y",
               {sd, sr, sa});
    maybe_plot(c, out, "compare_error.svg", fmt::format("absolute errors, t = {}", c.t), "x", "error", {er, ea}, true);
}

json manifest_of(const RunConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["preset"] = c.preset;
    j["amplitude"] = c.amplitude;
    j["width"] = c.width;
    j["center"] = c.center;
    j["potential_csv"] = c.potential_csv;
    j["half_width"] = c.half_width;
    j["points"] = c.points;
    j["zpoints"] = c.zpoints;
    j["zmax"] = c.zmax;
    j["t"] = c.t;
    j["times"] = c.times;
    j["x"] = c.xs;
    j["x_min"] = c.x_min;
    j["x_max"] = c.x_max;
    j["x_count"] = c.x_count;
    j["t_min"] = c.t_min;
    j["t_max"] = c.t_max;
    j["t_count"] = c.t_count;
    j["direct_start"] = c.direct_start;
    j["direct_spacing"] = c.direct_spacing;
    j["direct_log2n"] = c.direct_log2n;
    j["dt"] = c.dt;
    j["tail_tol"] = c.tail_tol;
    j["max_nodes"] = c.max_nodes;
    j["k"] = std::isnan(c.k) ? json(nullptr) : json(c.k);
    j["s_min"] = c.s_min;
    j["s_max"] = c.s_max;
    j["ray_slope"] = c.regions.M;
    j["similarity_width"] = c.regions.C;
    j["tau_lo"] = c.regions.tau_lo;
    j["tau_hi"] = c.regions.tau_hi;
    j["right_slope"] = c.regions.c;
    j["region_t_min"] = c.regions.t_min;
    j["plots"] = c.plots;
    j["convention"] = kConventionTag;
    return j;
}

}  // namespace

RunResult run(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    fs::path dir = cfg.output_dir;
    if (dir.empty()) {
        const char* env = std::getenv(kOutputDirEnv);
        dir = (env && *env) ? fs::path(env) : fs::path("mkdv_out");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    Outputs out(dir);
    try {
        if (cfg.subcommand == "scatter") cmd_scatter(cfg, out, log);
        else if (cfg.subcommand == "evolve") cmd_evolve(cfg, out, log);
        else if (cfg.subcommand == "inverse") cmd_inverse(cfg, out, log);
        else if (cfg.subcommand == "asympt") cmd_asympt(cfg, out, log);
        else if (cfg.subcommand == "pii") cmd_pii(cfg, out, log);
        else cmd_compare(cfg, out, log);
        json m = manifest_of(cfg);
        std::vector<std::string> names;
        for (const auto& p : out.files()) names.push_back(p.filename().string());
        names.push_back("manifest.json");
        m["outputs"] = names;
        out.text("manifest.json", m.dump(2) + "\n");
    } catch (...) {
        out.remove_all();
        throw;
    }
    return {dir, out.files()};
}

namespace {

// Converts a flat JSON object into option tokens, skipping keys already given on the command line.
std::vector<std::string> config_tokens(const fs::path& path, const std::vector<std::string>& user,
                                       const std::vector<std::string>& known) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("cannot read config file '{}'", path.string()));
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(fmt::format("config file '{}': {}", path.string(), e.what()));
    }
    if (!j.is_object()) throw InputError("config file must hold a flat JSON object");
    std::vector<std::string> tokens;
    for (const auto& [key, val] : j.items()) {
        std::string opt = "--" + key;
        std::replace(opt.begin(), opt.end(), '_', '-');
        if (std::find(known.begin(), known.end(), opt) == known.end() || opt == "--config")
            throw InputError(fmt::format("config file: unknown key '{}'", key));
        const bool given = std::any_of(user.begin(), user.end(), [&](const std::string& u) {
            return u == opt || u.rfind(opt + "=", 0) == 0;
        });
        if (given) continue;
        auto scalar = [&](const json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
            if (v.is_number()) return v.dump();
            throw InputError(fmt::format("config file: key '{}' must be a scalar or a list of scalars", key));
        };
        tokens.push_back(opt);
        if (val.is_array()) {
            std::string joined;
            for (const auto& v : val) joined += (joined.empty() ? "" : ",") + scalar(v);
            tokens.push_back(joined);
        } else {
            tokens.push_back(scalar(val));
        }
    }
    return tokens;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string config_path;
    CLI::App app{"MKdV inverse-scattering and long-time asymptotics laboratory"};
    app.require_subcommand(1);
    std::vector<std::string> known;
    auto opt = [&](const std::string& name, auto& ref, const std::string& desc) {
        known.push_back(name);
        return app.add_option(name, ref, desc);
    };
    opt("--config", config_path, "flat JSON file with option values; command-line values take precedence");
    opt("--preset", cfg.preset, "initial data preset: zero, gaussian, sech, sech2")->capture_default_str();
    opt("--amplitude", cfg.amplitude, "preset amplitude")->capture_default_str();
    opt("--width", cfg.width, "preset width")->capture_default_str();
    opt("--center", cfg.center, "preset center")->capture_default_str();
    opt("--potential-csv", cfg.potential_csv, "two-column CSV (x, y0) instead of a preset");
    opt("--half-width", cfg.half_width, "half-width of the scattering sample grid")->capture_default_str();
    opt("--points", cfg.points, "samples on the scattering grid")->capture_default_str();
    opt("--zpoints", cfg.zpoints, "points of the reflection-coefficient grid")->capture_default_str();
    opt("--zmax", cfg.zmax, "reflection grid half-width (0: automatic)")->capture_default_str();
    opt("--t", cfg.t, "evaluation time")->capture_default_str();
    opt("--times", cfg.times, "list of times")->delimiter(',');
    opt("--x", cfg.xs, "list of x values (overrides the x grid)")->delimiter(',');
    opt("--x-min", cfg.x_min, "x grid start")->capture_default_str();
    opt("--x-max", cfg.x_max, "x grid end")->capture_default_str();
    opt("--x-count", cfg.x_count, "x grid size")->capture_default_str();
    opt("--t-min", cfg.t_min, "t grid start")->capture_default_str();
    opt("--t-max", cfg.t_max, "t grid end")->capture_default_str();
    opt("--t-count", cfg.t_count, "t grid size")->capture_default_str();
    opt("--direct-start", cfg.direct_start, "left end of the periodic direct-solver grid")->capture_default_str();
    opt("--direct-spacing", cfg.direct_spacing, "direct-solver grid spacing")->capture_default_str();
    opt("--direct-log2n", cfg.direct_log2n, "log2 of the number of direct-solver modes")->capture_default_str();
    opt("--dt", cfg.dt, "direct-solver time step")->capture_default_str();
    opt("--tail-tol", cfg.tail_tol, "RH contour truncation tolerance")->capture_default_str();
    opt("--max-nodes", cfg.max_nodes, "RH node budget")->capture_default_str();
    opt("--k", cfg.k, "Painleve II parameter (default: i r(0))");
    opt("--s-min", cfg.s_min, "Painleve profile lower end")->capture_default_str();
    opt("--s-max", cfg.s_max, "Painleve profile upper end (0: automatic)")->capture_default_str();
    opt("--ray-slope", cfg.regions.M, "region I: x <= -M t")->capture_default_str();
    opt("--similarity-width", cfg.regions.C, "regions III/IV: |x| <= C t^(1/3)")->capture_default_str();
    opt("--tau-lo", cfg.regions.tau_lo, "lower end of the II/III overlap band")->capture_default_str();
    opt("--tau-hi", cfg.regions.tau_hi, "II/III threshold on tau")->capture_default_str();
    opt("--right-slope", cfg.regions.c, "region VI: x >= c t")->capture_default_str();
    opt("--region-t-min", cfg.regions.t_min, "smallest t accepted by the classifier")->capture_default_str();
    opt("--plots", cfg.plots, "write SVG plots")->capture_default_str();
    opt("--output-dir", cfg.output_dir, fmt::format("output directory (default: ${} or ./mkdv_out)", kOutputDirEnv));
    for (const char* name : {"scatter", "evolve", "inverse", "asympt", "pii", "compare"}) {
        app.add_subcommand(name, fmt::format("run the {} stage", name))->fallthrough();
    }

    std::vector<std::string> user(args.begin() + (args.empty() ? 0 : 1), args.end());
    try {
        for (std::size_t i = 0; i < user.size(); ++i) {
            if (user[i] == "--config" && i + 1 < user.size()) config_path = user[i + 1];
            else if (user[i].rfind("--config=", 0) == 0) config_path = user[i].substr(9);
        }
        std::vector<std::string> merged;
        if (!config_path.empty()) merged = config_tokens(config_path, user, known);
        merged.insert(merged.end(), user.begin(), user.end());
        std::reverse(merged.begin(), merged.end());  // CLI11 consumes a reversed vector
        app.parse(merged);
        cfg.subcommand = app.get_subcommands().front()->get_name();
        const RunResult res = run(cfg, out);
        fmt::print(out, "wrote {} files to {}\n", res.files.size() + 1, res.output_dir.string());
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 1;
    } catch (const InputError& e) {
        fmt::print(err, "input error: {}\n", e.what());
        return 1;
    } catch (const NumericalError& e) {
        fmt::print(err, "numerical failure: {}\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fmt::print(err, "numerical failure: {}\n", e.what());
        return 2;
    }
}

}  // namespace mkdv
