#include "hheat/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "hheat/errors.hpp"
#include "hheat/heat.hpp"

namespace hheat {

namespace {

// Work pool: tasks are claimed through an atomic counter; each task writes
// only its own output slot, so results do not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& task) {
    const std::size_t width = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (width <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < width; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

template <class Space>
RunResult run_on(const ProblemParams& params, const Space& space, const RunSetup& setup) {
    return simulate(params, sample(setup.data, space), setup.settings);
}

}  // namespace

SpaceSetup SpaceSetup::from(GridSpec g) {
    SpaceSetup s;
    s.kind = SpaceKind::Box;
    s.box = std::move(g);
    return s;
}

SpaceSetup SpaceSetup::from(AxisymmetricGrid g) {
    SpaceSetup s;
    s.kind = SpaceKind::Radial;
    s.radial = std::move(g);
    return s;
}

std::string SpaceSetup::describe() const { return kind == SpaceKind::Box ? box.describe() : radial.describe(); }

RunResult run_simulation(const ProblemParams& params, const RunSetup& setup) {
    if (setup.space.kind == SpaceKind::Box) return run_on(params, setup.space.box, setup);
    return run_on(params, setup.space.radial, setup);
}

ProblemParams params_from_config(const Config& c) {
    ProblemParams p;
    p.gamma = c.get_double("problem.gamma", 0.5);
    p.p1 = c.get_double("problem.p1", 1.5);
    p.p2 = c.get_double("problem.p2", 2.5);
    p.n = static_cast<int>(c.get_int("problem.n", 1));
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

SpaceSetup space_from_config(const Config& c) {
    const std::string kind = c.get_string("grid.kind", "box");
    try {
        if (kind == "box") {
            const long nx = c.get_int("grid.nx", 31);
            const long ny = c.get_int("grid.ny", nx);
            const double rx = c.get_double("grid.rx", 2.5);
            const double ry = c.get_double("grid.ry", rx);
            const double rtau = c.get_double("grid.rtau", 4.5);
            const long m = c.get_int("grid.m", 1);
            if (nx < 3 || ny < 3 || m < 1) throw InvalidArgument("grid.nx, grid.ny must be >= 3 and grid.m >= 1");
            return SpaceSetup::from(GridSpec::parabolic(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny),
                                                        rx, ry, rtau, static_cast<int>(m)));
        }
        if (kind == "radial") {
            return SpaceSetup::from(AxisymmetricGrid::stretched(
                c.get_double("grid.hr", 0.25), c.get_double("grid.r_core", 4.0), c.get_double("grid.r_max", 40.0),
                c.get_double("grid.htau", 0.5), c.get_double("grid.tau_core", 8.0),
                c.get_double("grid.tau_max", 800.0), c.get_double("grid.growth", 1.03),
                c.get_double("grid.max_ratio", 8.0)));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    throw ConfigError("grid.kind must be 'box' or 'radial', got '" + kind + "'");
}

InitialData data_from_config(const Config& c) {
    const std::string kind = c.get_string("data.kind", "bump");
    const double eps = c.get_double("data.epsilon", 1.0);
    try {
        if (kind == "zero") return InitialData::bump(0.0, 1.0, eps);
        if (kind == "bump") {
            return InitialData::bump(c.get_double("data.amplitude", 1.0), c.get_double("data.width", 1.0), eps);
        }
        if (kind == "power") {
            return InitialData::power_decay(c.get_double("data.amplitude", 1.0), c.get_double("data.kappa", 1.0),
                                            eps);
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("data: ") + e.what());
    }
    throw ConfigError("data.kind must be bump, power or zero, got '" + kind + "'");
}

SolverSettings settings_from_config(const Config& c) {
    SolverSettings s;
    s.horizon = c.get_double("solver.horizon", 5.0);
    s.dt = c.get_double("solver.dt", 0.0);
    s.threshold_factor = c.get_double("solver.threshold_factor", 1e6);
    s.threshold = c.get_double("solver.threshold", 0.0);
    s.growth_limit = c.get_double("solver.growth_limit", 0.1);
    s.min_dt = c.get_double("solver.min_dt", 1e-12);
    s.memory = c.get_bool("solver.memory", true);
    s.reaction = c.get_bool("solver.reaction", true);
    const std::string h = c.get_string("solver.history", "double");
    if (h == "double") {
        s.history_precision = HistoryPrecision::Double;
    } else if (h == "float") {
        s.history_precision = HistoryPrecision::Float;
    } else {
        throw ConfigError("solver.history must be 'double' or 'float'");
    }
    try {
        s.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("solver: ") + e.what());
    }
    return s;
}

RunSetup setup_from_config(const Config& c) {
    return RunSetup{space_from_config(c), data_from_config(c), settings_from_config(c)};
}

void SweepConfig::validate() const {
    if (lattice.empty()) throw ConfigError("sweep lattice is empty");
    for (const auto& [p1, p2] : lattice) {
        ProblemParams{gamma, p1, p2, n}.validate();
    }
}

SweepConfig sweep_from_config(const Config& c) {
    SweepConfig sc;
    sc.gamma = c.get_double("problem.gamma", 0.5);
    sc.n = static_cast<int>(c.get_int("problem.n", 1));
    if (c.has("sweep.points")) {
        std::istringstream in(c.get_string("sweep.points"));
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.find_first_not_of(" \t") == std::string::npos) continue;
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ConfigError("sweep.points entries must look like p1:p2");
            Config one;
            one.set("a", item.substr(0, colon));
            one.set("b", item.substr(colon + 1));
            sc.lattice.emplace_back(one.get_double("a"), one.get_double("b"));
        }
    } else {
        const auto p1s = c.get_list("sweep.p1", {});
        const auto p2s = c.get_list("sweep.p2", {});
        for (double a : p1s) {
            for (double b : p2s) sc.lattice.emplace_back(a, b);
        }
    }
    sc.setup = setup_from_config(c);
    sc.threads = static_cast<unsigned>(std::max(1L, c.get_int("run.threads", 1)));
    sc.seed = static_cast<std::uint64_t>(c.get_int("run.seed", 0));
    try {
        sc.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    return sc;
}

const char* to_string(Agreement a) {
    switch (a) {
        case Agreement::Agree: return "agree";
        case Agreement::Disagree: return "disagree";
        case Agreement::Open: return "open";
        case Agreement::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

Agreement judge(Region predicted, RunStatus observed) {
    if (predicted == Region::Open) return Agreement::Open;
    if (observed == RunStatus::StepCollapse) return Agreement::Undetermined;
    if (predicted == Region::BlowUp) {
        // A finite horizon cannot refute blow-up.
        return observed == RunStatus::BlewUp ? Agreement::Agree : Agreement::Undetermined;
    }
    return observed == RunStatus::SurvivedHorizon ? Agreement::Agree : Agreement::Disagree;
}

}  // namespace

std::vector<SweepRow> phase_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<SweepRow> rows(config.lattice.size());
    parallel_for(rows.size(), config.threads, [&](std::size_t i) {
        const ProblemParams params{config.gamma, config.lattice[i].first, config.lattice[i].second, config.n};
        const RunResult r = run_simulation(params, config.setup);
        SweepRow& row = rows[i];
        row.index = i;
        row.gamma = params.gamma;
        row.p1 = params.p1;
        row.p2 = params.p2;
        row.predicted = classify(params);
        row.observed = r.status;
        row.t_end = r.t_end;
        row.nonfinite = r.nonfinite;
        row.steps = r.steps;
        row.agreement = judge(row.predicted, row.observed);
    });
    return rows;
}

CsvTable sweep_table(const std::vector<SweepRow>& rows) {
    CsvTable t;
    t.header = {"index", "gamma", "p1", "p2", "predicted", "observed", "t_end", "nonfinite", "steps", "agreement"};
    for (const auto& r : rows) {
        t.add_row({std::to_string(r.index), format_double(r.gamma), format_double(r.p1), format_double(r.p2),
                   to_string(r.predicted), to_string(r.observed), format_double(r.t_end),
                   r.nonfinite ? "1" : "0", std::to_string(r.steps), to_string(r.agreement)});
    }
    return t;
}

void LifespanConfig::validate() const {
    params.validate();
    if (epsilons.empty()) throw InvalidArgument("lifespan sweep needs at least one epsilon");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw InvalidArgument("epsilons must be > 0");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw InvalidArgument("epsilons must be strictly decreasing");
    }
    if (classify(params) != Region::BlowUp) {
        throw InvalidArgument("lifespan sweep needs parameters in the blow-up region");
    }
    if (!(horizon_margin >= 1.0)) throw InvalidArgument("horizon margin must be >= 1");
    if (max_extensions < 0) throw InvalidArgument("max_extensions must be >= 0");
}

LifespanConfig lifespan_from_config(const Config& c) {
    LifespanConfig lc;
    lc.params = params_from_config(c);
    lc.setup = setup_from_config(c);
    lc.epsilons = c.get_list("lifespan.epsilons", {0.8, 0.4, 0.2, 0.1});
    if (c.has("lifespan.kappa")) lc.kappa = c.get_double("lifespan.kappa");
    lc.horizon_margin = c.get_double("lifespan.horizon_margin", 4.0);
    lc.max_extensions = static_cast<int>(c.get_int("lifespan.max_extensions", 3));
    try {
        lc.validate();
        (void)lifespan_prediction(lc.params, lc.kappa);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("lifespan: ") + e.what());
    }
    return lc;
}

double LifespanFit::relative_error() const {
    if (!fit || prediction.kind() != LifespanKind::PowerLaw) return std::nan("");
    return std::abs(fit->slope - prediction.exponent()) / std::abs(prediction.exponent());
}

LineFit fit_lifespan(const std::vector<LifespanPoint>& points) {
    std::vector<double> e, t;
    for (const auto& p : points) {
        if (p.valid) {
            e.push_back(p.epsilon);
            t.push_back(p.t_end);
        }
    }
    if (e.size() < 3) {
        throw FitAborted("lifespan fit needs >= 3 blow-up points, have " + std::to_string(e.size()));
    }
    return fit_loglog(e, t);
}

LifespanFit lifespan_sweep(const LifespanConfig& config) {
    config.validate();
    LifespanFit out;
    out.prediction = lifespan_prediction(config.params, config.kappa);
    const bool power = out.prediction.kind() == LifespanKind::PowerLaw;
    std::optional<double> constant;  // C in T = C eps^exponent, from the first blow-up

    for (double eps : config.epsilons) {
        RunSetup setup = config.setup;
        setup.data = config.setup.data.scaled(eps);
        if (power && constant) {
            setup.settings.horizon = std::max(setup.settings.horizon,
                                              config.horizon_margin * *constant *
                                                  std::pow(eps, out.prediction.exponent()));
        }
        LifespanPoint pt;
        pt.epsilon = eps;
        for (;;) {
            const RunResult r = run_simulation(config.params, setup);
            pt.status = r.status;
            pt.t_end = r.t_end;
            pt.horizon = setup.settings.horizon;
            if (r.status != RunStatus::SurvivedHorizon || pt.extensions >= config.max_extensions) break;
            setup.settings.horizon *= 2.0;
            ++pt.extensions;
        }
        pt.valid = pt.status == RunStatus::BlewUp && std::isfinite(pt.t_end);
        if (pt.valid && power && !constant) constant = pt.t_end / std::pow(eps, out.prediction.exponent());
        out.points.push_back(pt);
    }

    try {
        out.fit = fit_lifespan(out.points);
        if (out.prediction.kind() == LifespanKind::ExpLaw) {
            std::vector<double> x, y;
            for (const auto& p : out.points) {
                if (!p.valid) continue;
                x.push_back(std::pow(p.epsilon, out.prediction.exponent()));
                y.push_back(std::log(p.t_end));
            }
            out.exp_fit = fit_line(x, y);
        }
    } catch (const FitAborted& e) {
        out.note = std::string("insufficient data: ") + e.what();
    }
    return out;
}

CsvTable lifespan_table(const LifespanFit& fit) {
    CsvTable t;
    t.header = {"epsilon", "status", "t_end", "horizon", "extensions", "valid"};
    for (const auto& p : fit.points) {
        t.add_row({format_double(p.epsilon), to_string(p.status), format_double(p.t_end), format_double(p.horizon),
                   std::to_string(p.extensions), p.valid ? "1" : "0"});
    }
    return t;
}

namespace {

template <class Space>
ComparisonReport compare_on(const ProblemParams& params, const Space& space, const InitialData& lower,
                            const InitialData& upper, const SolverSettings& settings) {
    settings.validate();
    const auto u0 = sample(lower, space);
    const auto v0 = sample(upper, space);
    for (std::size_t i = 0; i < u0.size(); ++i) {
        if (!(u0[i] >= 0.0 && u0[i] <= v0[i])) {
            throw InvalidArgument("comparison data must satisfy 0 <= lower <= upper at every node");
        }
    }
    SolverSettings memory_only = settings, reaction_only = settings;
    memory_only.reaction = false;
    reaction_only.memory = false;
    Integrator<Space> u(params, u0, settings);
    Integrator<Space> v(params, v0, settings);
    Integrator<Space> m(params, u0, memory_only);
    Integrator<Space> w(params, u0, reaction_only);
    std::array<Integrator<Space>*, 4> all{&u, &v, &m, &w};

    const double sup0 = v.sup();
    const double threshold = settings.threshold > 0.0 ? settings.threshold
                             : sup0 > 0.0             ? settings.threshold_factor * sup0
                                                      : std::numeric_limits<double>::infinity();
    double dt = settings.dt > 0.0 ? settings.dt : stable_dt(space);

    ComparisonReport rep;
    auto measure = [&] {
        const auto a = u.field().values();
        const auto b = v.field().values();
        const auto c = m.field().values();
        const auto d = w.field().values();
        for (std::size_t i = 0; i < a.size(); ++i) {
            rep.order_violation = std::max(rep.order_violation, a[i] - b[i]);
            rep.memory_violation = std::max(rep.memory_violation, c[i] - a[i]);
            rep.reaction_violation = std::max(rep.reaction_violation, d[i] - a[i]);
        }
        for (auto* it : all) rep.max_sup = std::max(rep.max_sup, it->sup());
    };
    measure();

    while (u.time() < settings.horizon * (1.0 - 1e-14)) {
        const double remaining = settings.horizon - u.time();
        double step = (remaining <= dt * (1.0 + 1e-9)) ? remaining : dt;
        bool accepted = false;
        while (!accepted) {
            accepted = true;
            for (auto* it : all) {
                if (it->trial(step) > settings.growth_limit) {
                    accepted = false;
                    break;
                }
            }
            if (!accepted) {
                dt *= 0.5;
                if (dt < settings.min_dt) {
                    rep.t_end = u.time();
                    rep.steps = u.steps();
                    return rep;
                }
                step = std::min(dt, remaining);
            }
        }
        for (auto* it : all) it->commit(step);
        measure();
        if (v.sup() >= threshold || !v.field().all_finite()) break;
    }
    rep.t_end = u.time();
    rep.steps = u.steps();
    return rep;
}

}  // namespace

ComparisonReport comparison_check(const ProblemParams& params, const SpaceSetup& space, const InitialData& lower,
                                  const InitialData& upper, const SolverSettings& settings) {
    if (space.kind == SpaceKind::Box) return compare_on(params, space.box, lower, upper, settings);
    return compare_on(params, space.radial, lower, upper, settings);
}

CsvTable comparison_table(const ComparisonReport& r) {
    CsvTable t;
    t.header = {"check", "max_violation"};
    t.add_row({"order", format_double(r.order_violation)});
    t.add_row({"memory_only", format_double(r.memory_violation)});
    t.add_row({"reaction_only", format_double(r.reaction_violation)});
    return t;
}

double KernelValidation::max_symmetry_gap() const {
    double m = 0.0;
    for (const auto& p : symmetry) m = std::max(m, p.relative_gap);
    return m;
}

double KernelValidation::max_scaling_gap() const {
    double m = 0.0;
    for (const auto& p : scaling) m = std::max(m, p.relative_gap);
    return m;
}

namespace {

std::size_t mirror_bin(const HistogramSpec& s, std::size_t bin) {
    const std::size_t k = bin % s.btau, j = (bin / s.btau) % s.by, i = bin / (s.btau * s.by);
    return ((s.bx - 1 - i) * s.by + (s.by - 1 - j)) * s.btau + (s.btau - 1 - k);
}

}  // namespace

KernelValidation validate_kernel(double t, std::size_t samples, std::uint64_t seed, const HistogramSpec& bins,
                                 const SamplerOptions& opts) {
    KernelValidation kv;
    kv.t = t;
    kv.samples = samples;
    kv.seed = seed;
    kv.estimate = mc_kernel_sample(t, samples, seed, bins, opts);
    kv.mass = kv.estimate.total_mass();
    kv.mass_error = kv.estimate.total_mass_error();

    // Probes: the five most populated bins in the half-space tau > 0, so that
    // each probe and its mirror image are different bins.
    std::vector<std::size_t> order(bins.bins());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return kv.estimate.counts[a] > kv.estimate.counts[b];
    });
    std::vector<std::size_t> probes;
    for (std::size_t b : order) {
        if (bins.centre(b)[2] > 0.0) probes.push_back(b);
        if (probes.size() == 5) break;
    }

    for (std::size_t b : probes) {
        const double d = kv.estimate.density(b);
        const double e = kv.estimate.density(mirror_bin(bins, b));
        kv.symmetry.push_back({bins.centre(b), d, e, std::abs(d - e) / std::max(d, e)});
    }

    // Dilation by r = 2 maps each bin at time t onto the same-index bin of a
    // histogram with widths (2rx, 2ry, 4rtau) at time 4t.
    const double r = 2.0;
    HistogramSpec big = bins;
    big.rx *= r;
    big.ry *= r;
    big.rtau *= r * r;
    const KernelEstimate dilated = mc_kernel_sample(r * r * t, samples, seed + 1, big, opts);
    for (std::size_t b : probes) {
        const double d = kv.estimate.density(b);
        const double e = std::pow(r, 4.0) * dilated.density(b);
        kv.scaling.push_back({bins.centre(b), d, e, std::abs(d - e) / std::max(d, e)});
    }

    // Semigroup: H_{t/2} H_{t/2} f against H_t f for f a Koranyi Gaussian at an off-centre point.
    const auto f = [](const GroupPoint& p) {
        const double n = koranyi_norm(p);
        return std::exp(-n * n);
    };
    const GroupPoint eta = GroupPoint::h1(0.3, -0.2, 0.4);
    kv.semigroup_direct = mc_semigroup_apply(f, t, eta, samples, seed + 2, opts);
    const auto first = sample_endpoints(0.5 * t, samples, seed + 3, opts);
    const auto second = sample_endpoints(0.5 * t, samples, seed + 4, opts);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const GroupPoint a = GroupPoint::h1(first[i][0], first[i][1], first[i][2]);
        const GroupPoint b = GroupPoint::h1(second[i][0], second[i][1], second[i][2]);
        const double v = f(compose(compose(eta, a), b));
        sum += v;
        sum2 += v * v;
    }
    const double N = static_cast<double>(samples);
    const double mean = sum / N;
    kv.semigroup_composed = {mean, std::sqrt(std::max(0.0, (sum2 - N * mean * mean) / (N - 1.0)) / N)};
    const double se = std::hypot(kv.semigroup_direct.std_error, kv.semigroup_composed.std_error);
    kv.semigroup_z = std::abs(kv.semigroup_direct.mean - kv.semigroup_composed.mean) / se;
    return kv;
}

CsvTable kernel_table(const KernelEstimate& est) {
    CsvTable t;
    t.header = {"bin", "x", "y", "tau", "count", "density", "std_error"};
    for (std::size_t b = 0; b < est.counts.size(); ++b) {
        const auto c = est.spec.centre(b);
        t.add_row({std::to_string(b), format_double(c[0]), format_double(c[1]), format_double(c[2]),
                   std::to_string(est.counts[b]), format_double(est.density(b)), format_double(est.std_error(b))});
    }
    return t;
}

}  // namespace hheat
