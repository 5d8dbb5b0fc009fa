#include "hheat/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hheat/errors.hpp"
#include "hheat/experiments.hpp"

namespace hheat {

namespace {

using Clock = std::chrono::steady_clock;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
};

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("-c,--config", o.config_path, "key = value configuration file");
    sub->add_option("-s,--set", o.overrides, "override a configuration entry, key=value (repeatable)");
    sub->add_option("-o,--out", o.out_dir, "output directory (default: output.dir or ./hheat_out)");
}

Config load_config(const CommonOptions& o) {
    Config c = o.config_path.empty() ? Config() : Config::from_file(o.config_path);
    for (const auto& s : o.overrides) c.apply_override(s);
    return c;
}

std::string output_dir(const CommonOptions& o, const Config& c) {
    const std::string from_config = c.get_string("output.dir", "hheat_out");
    return o.out_dir.empty() ? from_config : o.out_dir;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void warn_unused(const Config& c, std::ostream& err) {
    for (const auto& k : c.unused_keys()) err << "warning: config key '" << k << "' is not used by this command\n";
}

int cmd_exponents(double gamma, int n, double p1, double p2, std::optional<double> kappa, bool json,
                  std::ostream& out) {
    const ProblemParams params{gamma, p1, p2, n};
    const ExponentReport r = compute_exponents(params);
    const LifespanPrediction life = lifespan_prediction(params, kappa);
    if (json) {
        nlohmann::ordered_json j;
        j["gamma"] = gamma;
        j["n"] = n;
        j["Q"] = params.Q();
        j["p1"] = p1;
        j["p2"] = p2;
        auto ext = [](const ExtendedReal& e) -> nlohmann::ordered_json {
            if (e.is_infinite()) return "inf";
            return e.finite();
        };
        j["p_gamma"] = ext(r.p_gamma);
        j["p1_star"] = ext(r.p1_star);
        j["p2_star"] = ext(r.p2_star);
        j["p2_double_star"] = ext(r.p2_double_star);
        j["tilde_p1"] = ext(r.tilde_p1);
        j["tilde_p2"] = ext(r.tilde_p2);
        j["q_sc"] = ext(r.q_sc);
        j["p_sc1"] = ext(r.p_sc1);
        j["region"] = to_string(r.region);
        j["lifespan"] = {{"kind", to_string(life.kind())}, {"exponent", life.exponent()}, {"source", life.primary.source}};
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "gamma = " << gamma << "  n = " << n << "  Q = " << params.Q() << "  p1 = " << p1 << "  p2 = " << p2
        << "\n";
    out << "  p_gamma  = " << r.p_gamma.to_string() << "\n";
    out << "  p1*      = " << r.p1_star.to_string() << "\n";
    out << "  p2*      = " << r.p2_star.to_string() << "\n";
    out << "  p2**     = " << r.p2_double_star.to_string() << "\n";
    out << "  tilde p1 = " << r.tilde_p1.to_string() << "\n";
    out << "  tilde p2 = " << r.tilde_p2.to_string() << "\n";
    out << "  q_sc     = " << r.q_sc.to_string() << "\n";
    out << "  p_sc1    = " << r.p_sc1.to_string() << "\n";
    out << "region: " << to_string(r.region) << "\n";
    out << "lifespan: " << to_string(life.kind());
    if (life.kind() != LifespanKind::None) out << " exponent " << life.exponent() << " (" << life.primary.source << ")";
    if (life.alternate) {
        out << "; alternate " << to_string(life.alternate->kind) << " exponent " << life.alternate->exponent << " ("
            << life.alternate->source << ")";
    }
    out << "\n";
    return kExitOk;
}

int cmd_simulate(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    const Config c = load_config(o);
    const ProblemParams params = params_from_config(c);
    const RunSetup setup = setup_from_config(c);
    const std::uint64_t seed = static_cast<std::uint64_t>(c.get_int("run.seed", 0));
    const std::string dir = output_dir(o, c);
    warn_unused(c, err);

    out << "grid: " << setup.space.describe() << "\n";
    out << "data: " << setup.data.describe() << "\n";
    const RunResult r = run_simulation(params, setup);
    out << "status: " << to_string(r.status) << "  t = " << format_double(r.t_end) << "  steps = " << r.steps
        << "  heat substeps = " << r.heat_substeps << "  halvings = " << r.halvings
        << (r.nonfinite ? "  (non-finite field)" : "") << "\n";
    out << "final sup norm: " << format_double(r.series.back().sup) << "\n";

    const std::string csv = join(dir, "series.csv");
    write_csv(csv, series_table(r));
    Manifest m;
    m.command = "simulate";
    m.config = c;
    m.seed = seed;
    m.outputs = {{csv, kSeriesSchema}};
    m.summary = {{"status", to_string(r.status)}, {"t_end", format_double(r.t_end)},
                 {"steps", std::to_string(r.steps)}, {"grid", setup.space.describe()}};
    m.wall_seconds = seconds_since(t0);
    write_manifest(join(dir, "manifest.json"), m);
    out << "wrote " << csv << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    const Config c = load_config(o);
    const SweepConfig sc = sweep_from_config(c);
    const std::string dir = output_dir(o, c);
    warn_unused(c, err);

    out << "sweep over " << sc.lattice.size() << " points, grid " << sc.setup.space.describe() << "\n";
    const auto rows = phase_sweep(sc);
    std::size_t agree = 0, disagree = 0;
    for (const auto& r : rows) {
        out << "  p1 = " << std::setw(6) << r.p1 << "  p2 = " << std::setw(6) << r.p2 << "  predicted "
            << std::setw(15) << to_string(r.predicted) << "  observed " << std::setw(15) << to_string(r.observed)
            << "  t = " << format_double(r.t_end) << "  " << to_string(r.agreement) << "\n";
        agree += r.agreement == Agreement::Agree;
        disagree += r.agreement == Agreement::Disagree;
    }
    out << "agree " << agree << ", disagree " << disagree << " of " << rows.size() << "\n";

    const std::string csv = join(dir, "sweep.csv");
    write_csv(csv, sweep_table(rows));
    Manifest m;
    m.command = "sweep";
    m.config = c;
    m.seed = sc.seed;
    m.outputs = {{csv, kSweepSchema}};
    m.summary = {{"points", std::to_string(rows.size())}, {"agree", std::to_string(agree)},
                 {"disagree", std::to_string(disagree)}};
    m.wall_seconds = seconds_since(t0);
    write_manifest(join(dir, "manifest.json"), m);
    out << "wrote " << csv << "\n";
    return kExitOk;
}

int cmd_lifespan(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    const Config c = load_config(o);
    const LifespanConfig lc = lifespan_from_config(c);
    const std::string dir = output_dir(o, c);
    warn_unused(c, err);

    const LifespanFit fit = lifespan_sweep(lc);
    for (const auto& p : fit.points) {
        out << "  eps = " << std::setw(8) << p.epsilon << "  " << std::setw(15) << to_string(p.status)
            << "  T = " << format_double(p.t_end) << (p.valid ? "" : "  (excluded)") << "\n";
    }
    out << "predicted: " << to_string(fit.prediction.kind()) << " exponent " << fit.prediction.exponent() << "\n";
    if (fit.fit) {
        out << "fitted slope " << fit.fit->slope << "  R^2 " << fit.fit->r2;
        if (fit.prediction.kind() == LifespanKind::PowerLaw) out << "  relative error " << fit.relative_error();
        out << "\n";
    } else {
        out << fit.note << "\n";
    }
    if (fit.exp_fit) out << "log T vs eps^-(p2-1): slope " << fit.exp_fit->slope << "  R^2 " << fit.exp_fit->r2 << "\n";

    const std::string csv = join(dir, "lifespan.csv");
    write_csv(csv, lifespan_table(fit));
    Manifest m;
    m.command = "lifespan";
    m.config = c;
    m.seed = static_cast<std::uint64_t>(c.get_int("run.seed", 0));
    m.outputs = {{csv, kLifespanSchema}};
    m.summary = {{"predicted_kind", to_string(fit.prediction.kind())},
                 {"predicted_exponent", format_double(fit.prediction.exponent())},
                 {"fitted_slope", fit.fit ? format_double(fit.fit->slope) : "none"},
                 {"r2", fit.fit ? format_double(fit.fit->r2) : "none"},
                 {"note", fit.note}};
    m.wall_seconds = seconds_since(t0);
    write_manifest(join(dir, "manifest.json"), m);
    out << "wrote " << csv << "\n";
    return kExitOk;
}

int cmd_compare(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    const Config c = load_config(o);
    const ProblemParams params = params_from_config(c);
    const RunSetup setup = setup_from_config(c);
    const double scale = c.get_double("compare.scale", 0.5);
    if (!(scale >= 0.0 && scale <= 1.0)) throw ConfigError("compare.scale must lie in [0,1]");
    const std::string dir = output_dir(o, c);
    warn_unused(c, err);

    const InitialData upper = setup.data;
    const InitialData lower = upper.scaled(upper.epsilon * scale);
    const ComparisonReport r = comparison_check(params, setup.space, lower, upper, setup.settings);
    out << "lockstep runs to t = " << format_double(r.t_end) << " (" << r.steps << " steps, max sup "
        << format_double(r.max_sup) << ")\n";
    out << "  max (u - v)+          = " << format_double(r.order_violation) << "\n";
    out << "  max (memory-only - u)+   = " << format_double(r.memory_violation) << "\n";
    out << "  max (reaction-only - u)+ = " << format_double(r.reaction_violation) << "\n";

    const std::string csv = join(dir, "comparison.csv");
    write_csv(csv, comparison_table(r));
    Manifest m;
    m.command = "compare";
    m.config = c;
    m.outputs = {{csv, kCompareSchema}};
    m.summary = {{"t_end", format_double(r.t_end)}, {"steps", std::to_string(r.steps)}};
    m.wall_seconds = seconds_since(t0);
    write_manifest(join(dir, "manifest.json"), m);
    out << "wrote " << csv << "\n";
    return kExitOk;
}

struct KernelOptions {
    double t = 0.25;
    std::size_t samples = 200000;
    std::size_t bins = 16;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double steps_per_unit = 200.0;
    double rx = 0.0, rtau = 0.0;
    std::string out_dir = "hheat_out";
};

int cmd_kernel(const KernelOptions& k, std::ostream& out) {
    const auto t0 = Clock::now();
    if (!(k.t > 0.0)) throw ConfigError("--t must be > 0");
    if (k.samples < 2 || k.bins < 2) throw ConfigError("--samples and --bins must be >= 2");
    HistogramSpec spec;
    spec.rx = spec.ry = k.rx > 0.0 ? k.rx : 4.0 * std::sqrt(2.0 * k.t);
    spec.rtau = k.rtau > 0.0 ? k.rtau : 24.0 * k.t;
    spec.bx = spec.by = spec.btau = k.bins;
    SamplerOptions opts;
    opts.threads = k.threads;
    opts.steps_per_unit_time = k.steps_per_unit;

    const KernelValidation v = validate_kernel(k.t, k.samples, k.seed, spec, opts);
    out << "kernel at t = " << k.t << " from " << k.samples << " paths (seed " << k.seed << ")\n";
    out << "  mass in histogram     " << v.mass << " +- " << v.mass_error << "\n";
    out << "  symmetry max gap      " << v.max_symmetry_gap() << " over " << v.symmetry.size() << " probe bins\n";
    out << "  scaling (r=2) max gap " << v.max_scaling_gap() << "\n";
    out << "  semigroup             " << v.semigroup_direct.mean << " vs " << v.semigroup_composed.mean << "  ("
        << v.semigroup_z << " standard errors)\n";

    const std::string csv = join(k.out_dir, "kernel_density.csv");
    write_csv(csv, kernel_table(v.estimate));
    nlohmann::ordered_json rep;
    rep["t"] = k.t;
    rep["samples"] = k.samples;
    rep["seed"] = k.seed;
    rep["mass"] = v.mass;
    rep["mass_std_error"] = v.mass_error;
    auto probes = [](const std::vector<KernelProbe>& ps) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& p : ps) {
            a.push_back({{"point", p.point}, {"density", p.density}, {"partner", p.partner},
                         {"relative_gap", p.relative_gap}});
        }
        return a;
    };
    rep["symmetry"] = probes(v.symmetry);
    rep["scaling"] = probes(v.scaling);
    rep["semigroup"] = {{"direct", v.semigroup_direct.mean},
                        {"direct_se", v.semigroup_direct.std_error},
                        {"composed", v.semigroup_composed.mean},
                        {"composed_se", v.semigroup_composed.std_error},
                        {"z", v.semigroup_z}};
    const std::string report = join(k.out_dir, "kernel_report.json");
    write_text(report, rep.dump(2) + "\n");

    Config echo;
    echo.set("kernel.t", format_double(k.t));
    echo.set("kernel.samples", std::to_string(k.samples));
    echo.set("kernel.bins", std::to_string(k.bins));
    echo.set("kernel.steps_per_unit_time", format_double(k.steps_per_unit));
    echo.set("kernel.rx", format_double(spec.rx));
    echo.set("kernel.rtau", format_double(spec.rtau));
    echo.set("run.threads", std::to_string(k.threads));
    Manifest m;
    m.command = "kernel-validate";
    m.config = echo;
    m.seed = k.seed;
    m.outputs = {{csv, kKernelSchema}, {report, "hheat.kernel-report/1"}};
    m.wall_seconds = seconds_since(t0);
    write_manifest(join(k.out_dir, "manifest.json"), m);
    out << "wrote " << csv << " and " << report << "\n";
    return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"hheat: semilinear heat equation with memory on the Heisenberg group", "hheat"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(HHEAT_VERSION));

    double gamma = 0.5, p1 = 0.0, p2 = 0.0;
    int n = 1;
    std::optional<double> kappa;
    bool json = false;
    auto* ex = app.add_subcommand("exponents", "critical exponents, region and lifespan law");
    ex->add_option("--gamma", gamma, "memory exponent in [0,1)")->required();
    ex->add_option("--n", n, "H^n dimension parameter")->capture_default_str();
    ex->add_option("--p1", p1, "memory nonlinearity exponent")->required();
    ex->add_option("--p2", p2, "reaction exponent")->required();
    ex->add_option("--kappa", kappa, "decay rate of (1+|eta|)^-kappa data");
    ex->add_flag("--json", json, "print JSON instead of text");

    CommonOptions sim_o, sweep_o, life_o, cmp_o;
    auto* sim = app.add_subcommand("simulate", "run one simulation and write its norm series");
    add_common(sim, sim_o);
    auto* sw = app.add_subcommand("sweep", "phase-diagram sweep over a (p1, p2) lattice");
    add_common(sw, sweep_o);
    auto* life = app.add_subcommand("lifespan", "lifespan against data size, with log-log fit");
    add_common(life, life_o);
    auto* cmp = app.add_subcommand("compare", "comparison-principle check on lockstep runs");
    add_common(cmp, cmp_o);

    KernelOptions ko;
    auto* kv = app.add_subcommand("kernel-validate", "Monte Carlo heat kernel and its properties");
    kv->add_option("--t", ko.t, "time")->capture_default_str();
    kv->add_option("--samples", ko.samples, "number of paths")->capture_default_str();
    kv->add_option("--bins", ko.bins, "bins per axis")->capture_default_str();
    kv->add_option("--seed", ko.seed, "RNG seed")->capture_default_str();
    kv->add_option("--threads", ko.threads, "worker threads")->capture_default_str();
    kv->add_option("--steps-per-unit-time", ko.steps_per_unit, "Euler substeps per unit time")->capture_default_str();
    kv->add_option("--rx", ko.rx, "histogram half-width in x and y (default 4 sqrt(2t))");
    kv->add_option("--rtau", ko.rtau, "histogram half-width in tau (default 24 t)");
    kv->add_option("-o,--out", ko.out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << HHEAT_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitConfig;
    }

    try {
        if (*ex) return cmd_exponents(gamma, n, p1, p2, kappa, json, out);
        if (*sim) return cmd_simulate(sim_o, out, err);
        if (*sw) return cmd_sweep(sweep_o, out, err);
        if (*life) return cmd_lifespan(life_o, out, err);
        if (*cmp) return cmd_compare(cmp_o, out, err);
        if (*kv) return cmd_kernel(ko, out);
    } catch (const InvalidArgument& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "runtime failure: " << e.what() << "\n";
        return kExitRuntime;
    }
    err << app.help();
    return kExitConfig;
}

}  // namespace hheat
