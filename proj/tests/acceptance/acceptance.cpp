// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any fails.
// Usage: hheat_acceptance <path-to-hheat-cli> [criterion numbers...]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hheat/decay.hpp"
#include "hheat/experiments.hpp"
#include "hheat/exponents.hpp"
#include "hheat/memory_kernel.hpp"

using namespace hheat;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Verdict exponent_identities() {
    std::size_t points = 0, equivalence_fail = 0, closure_fail = 0, continuity_fail = 0, order_fail = 0;
    double worst_closure = 0.0, worst_continuity = 0.0;
    for (int n : {1, 2, 3}) {
        for (int j = 0; j < 10; ++j) {
            // Cell midpoints keep the lattice off exact ties such as p1 = 1/gamma.
            const double g = 0.1 + 0.8 * (j + 0.5) / 10.0;
            for (int k = 0; k < 34; ++k) {
                const double p1 = 1.0 + 9.0 * (k + 0.5) / 34.0;
                ++points;
                const ExponentReport r = compute_exponents({g, p1, 2.0, n});
                if ((ExtendedReal(p1) > r.p1_star) != (r.tilde_p2 > r.p2_double_star)) ++equivalence_fail;
                if (!(r.p2_star < r.p2_double_star)) ++order_fail;
                for (double p2 : {1.05, 1.5, 2.0, 3.7, 9.0}) {
                    const ExponentReport q = compute_exponents({g, p1, p2, n});
                    const double e = std::abs((q.tilde_p1.finite() + 1.0 - g) / (2.0 - g) - p2) / p2;
                    worst_closure = std::max(worst_closure, e);
                    if (e > 1e-12) ++closure_fail;
                }
                const double p2 = r.tilde_p2.finite();
                const double Q = 2.0 * n + 2.0;
                const double upper_branch = Q * (p1 - 1.0) / (2.0 * (2.0 - g));
                const double lower_branch = Q * (p2 - 1.0) / 2.0;
                const double at = compute_exponents({g, p1, p2, n}).q_sc.finite();
                const double e = std::max(std::abs(upper_branch - lower_branch), std::abs(at - lower_branch)) / at;
                worst_continuity = std::max(worst_continuity, e);
                if (e > 1e-12) ++continuity_fail;
            }
        }
    }
    Verdict v;
    v.pass = equivalence_fail == 0 && closure_fail == 0 && continuity_fail == 0 && order_fail == 0 && points >= 1000;
    std::ostringstream os;
    os << points << " lattice points; equivalence mismatches " << equivalence_fail << ", closure err "
       << worst_closure << ", q_sc continuity err " << worst_continuity << ", p2* >= p2** at " << order_fail;
    v.detail = os.str();
    return v;
}

Verdict fujita_limit() {
    const double p = compute_exponents({1.0 - 1e-6, 2.0, 2.0, 1}).p1_star.finite();
    return {std::abs(p - 1.5) < 1e-4, "p1*(gamma = 1 - 1e-6, Q = 4) = " + fmt("%.9f", p)};
}

Verdict kernel_properties() {
    const double t = 0.25;
    HistogramSpec bins;
    bins.rx = bins.ry = 4.0 * std::sqrt(2.0 * t);
    bins.rtau = 24.0 * t;
    bins.bx = bins.by = bins.btau = 10;
    const KernelValidation k = validate_kernel(t, 200000, 20240601, bins);
    Verdict v;
    v.pass = std::abs(k.mass - 1.0) <= 0.02 && k.symmetry.size() == 5 && k.max_symmetry_gap() <= 0.05 &&
             k.scaling.size() == 5 && k.max_scaling_gap() <= 0.05 && k.semigroup_z <= 3.0;
    std::ostringstream os;
    os << "mass " << k.mass << ", symmetry gap " << k.max_symmetry_gap() << ", scaling gap " << k.max_scaling_gap()
       << ", semigroup " << k.semigroup_direct.mean << " vs " << k.semigroup_composed.mean << " (" << k.semigroup_z
       << " SE)";
    v.detail = os.str();
    return v;
}

Verdict decay_slope() {
    const GridSpec g = GridSpec::parabolic(101, 101, 5.0, 5.0, 16.0, 1);
    const Field u0 = sample(InitialData::bump(1.0, 0.2), g);
    const DecayFit f = decay_fit(u0, 1.0, INFINITY, {0.1, 0.16, 0.25, 0.4, 0.63, 1.0});
    Verdict v;
    v.pass = std::abs(f.fitted_slope - f.predicted_slope) <= 0.1 * std::abs(f.predicted_slope) &&
             f.relative_mass_loss < 0.01;
    std::ostringstream os;
    os << g.describe() << ": slope " << f.fitted_slope << " (predicted " << f.predicted_slope << "), mass loss "
       << f.relative_mass_loss;
    v.detail = os.str();
    return v;
}

Verdict quadrature() {
    // Nonuniform nodes for the weight sums, uniform 1e-3 nodes for the fractional integrals.
    std::vector<double> nodes{0.0};
    for (int i = 1; i <= 400; ++i) nodes.push_back(nodes.back() + 1e-3 * (1.0 + 0.5 * std::sin(0.37 * i)));
    double sum_err = 0.0;
    for (double g : {0.1, 0.5, 0.9}) {
        const auto m = memory_integral(g, nodes, std::vector<double>(nodes.size(), 1.0));
        for (std::size_t k = 1; k < nodes.size(); ++k) {
            const double exact = std::pow(nodes[k], 1.0 - g) / (1.0 - g);
            sum_err = std::max(sum_err, std::abs(m[k] - exact) / exact);
        }
    }
    std::vector<double> uni(1001);
    for (std::size_t i = 0; i < uni.size(); ++i) uni[i] = 1e-3 * static_cast<double>(i);
    double const_err = 0.0;
    for (double a : {0.25, 0.5, 0.75}) {
        const auto I = fractional_integral(a, uni, std::vector<double>(uni.size(), 1.0));
        for (std::size_t k = 1; k < uni.size(); ++k) {
            const double exact = std::pow(uni[k], a) / std::tgamma(a + 1.0);
            const_err = std::max(const_err, std::abs(I[k] - exact) / exact);
        }
    }
    const auto Is = fractional_integral(0.5, uni, uni);
    const double lin_err = std::abs(Is.back() - 1.0 / std::tgamma(2.5));
    Verdict v;
    v.pass = sum_err <= 1e-12 && const_err <= 1e-12 && lin_err <= 1e-3;
    std::ostringstream os;
    os << "weight sums rel err " << sum_err << ", I^a 1 rel err " << const_err << ", |I^0.5 s(1) - 1/Gamma(2.5)| "
       << lin_err;
    v.detail = os.str();
    return v;
}

bool monotone_decreasing(const std::vector<NormSample>& s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].sup > s[i - 1].sup) return false;
    }
    return true;
}

Verdict dichotomy() {
    const ProblemParams blow{0.5, 1.5, 2.5, 1};
    // Base grid with tau-shift 2; halving h in x, y and tau gives the 61-node grid with shift 1.
    RunSetup base;
    base.space = SpaceSetup::from(GridSpec::parabolic(31, 31, 6.0, 6.0, 17.5, 2));
    base.data = InitialData::bump(1.0, 2.0);
    base.settings.horizon = 5.0;
    base.settings.dt = 0.02;
    base.settings.history_precision = HistoryPrecision::Float;
    RunSetup fine = base;
    fine.space = SpaceSetup::from(GridSpec::parabolic(61, 61, 6.0, 6.0, 17.5, 1));
    fine.settings.dt = 0.01;
    const RunResult a = run_simulation(blow, base);
    const RunResult b = run_simulation(blow, fine);

    RunSetup small = fine;
    small.data = InitialData::bump(1e-2, 2.0);
    small.settings.dt = 0.05;
    const RunResult c = run_simulation({0.5, 3.0, 2.5, 1}, small);

    const bool blew = a.status == RunStatus::BlewUp && b.status == RunStatus::BlewUp;
    const double change = blew ? std::abs(b.t_end - a.t_end) / b.t_end : INFINITY;
    Verdict v;
    v.pass = blew && change < 0.10 && c.status == RunStatus::SurvivedHorizon && c.t_end >= 5.0 - 1e-9 &&
             monotone_decreasing(c.series);
    std::ostringstream os;
    os << "(1.5,2.5): " << to_string(a.status) << " t*=" << a.t_end << " on 31^2, " << to_string(b.status)
       << " t*=" << b.t_end << " on 61^2, change " << change << "; (3.0,2.5) amp 1e-2: " << to_string(c.status)
       << " to t=" << c.t_end << ", sup " << c.series.front().sup << " -> " << c.series.back().sup
       << (monotone_decreasing(c.series) ? " monotone" : " NOT monotone");
    v.detail = os.str();
    return v;
}

LifespanFit lifespan_run(const InitialData& data, std::optional<double> kappa, double horizon) {
    LifespanConfig lc;
    lc.params = {0.5, 1.5, 3.0, 1};
    lc.setup.space = SpaceSetup::from(AxisymmetricGrid::stretched(0.25, 4.0, 40.0, 0.5, 8.0, 800.0));
    lc.setup.data = data;
    lc.setup.settings.dt = 0.25;
    lc.setup.settings.horizon = horizon;
    // At threshold 1e6 the final approach needs steps below min_dt for p2 = 3.
    lc.setup.settings.threshold_factor = 1e4;
    lc.epsilons = {0.8, 0.4, 0.2, 0.1};
    lc.kappa = kappa;
    return lifespan_sweep(lc);
}

std::string describe_fit(const LifespanFit& f) {
    std::ostringstream os;
    os << "T =";
    for (const auto& p : f.points) os << " " << (p.valid ? fmt("%.4g", p.t_end) : std::string(to_string(p.status)));
    if (f.fit) {
        os << ", slope " << f.fit->slope << " vs " << f.prediction.exponent();
    } else {
        os << ", " << f.note;
    }
    return os.str();
}

Verdict lifespan_slopes() {
    const LifespanFit bump = lifespan_run(InitialData::bump(1.0, 1.0), std::nullopt, 40.0);
    const LifespanFit power = lifespan_run(InitialData::power_decay(0.1, 1.0), 1.0, 40.0);
    const bool ok_bump = bump.fit && bump.relative_error() <= 0.20;
    const bool ok_power = power.fit && power.relative_error() <= 0.25;
    return {ok_bump && ok_power, "bump: " + describe_fit(bump) + "; kappa = 1: " + describe_fit(power)};
}

Verdict comparison() {
    SolverSettings s;
    s.horizon = 0.45;  // close to the blow-up time of the upper data
    const auto upper = InitialData::bump(3.0, 1.0);
    const ComparisonReport r = comparison_check({0.5, 1.5, 2.5, 1},
                                                SpaceSetup::from(GridSpec::parabolic(31, 31, 2.5, 2.5, 4.5, 1)),
                                                upper.scaled(0.5), upper, s);
    Verdict v;
    v.pass = r.order_violation <= 1e-10 && r.memory_violation <= 1e-10 && r.reaction_violation <= 1e-10;
    std::ostringstream os;
    os << "violations: order " << r.order_violation << ", memory-only " << r.memory_violation << ", reaction-only "
       << r.reaction_violation << " over " << r.steps << " steps to t=" << r.t_end << " (max sup " << r.max_sup
       << ")";
    v.detail = os.str();
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

Verdict determinism(const std::string& cli) {
    const fs::path dir = fs::temp_directory_path() / "hheat_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "sweep.cfg";
    std::ofstream(cfg) << "problem.gamma = 0.5\n"
                          "grid.nx = 15\ngrid.rx = 2.1\ngrid.rtau = 3\n"
                          "data.amplitude = 1\nsolver.horizon = 0.3\n"
                          "sweep.p1 = 1.5, 2.5, 3.5\nsweep.p2 = 1.4, 2.5, 4\n"
                          "run.seed = 7\nrun.threads = 2\n";
    std::vector<std::string> csv;
    for (int rep = 0; rep < 2; ++rep) {
        const fs::path out = dir / ("run" + std::to_string(rep));
        const std::string cmd = "\"" + cli + "\" sweep -c \"" + cfg.string() + "\" -o \"" + out.string() + "\" > \"" +
                                (dir / "log.txt").string() + "\" 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "sweep command failed: " + cmd};
        csv.push_back(slurp(out / "sweep.csv"));
    }
    const bool same = !csv[0].empty() && csv[0] == csv[1];
    return {same, std::to_string(csv[0].size()) + " bytes, " + (same ? "identical" : "different")};
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: hheat_acceptance <hheat-cli> [criterion ...]\n";
        return 2;
    }
    const std::string cli = argv[1];
    std::set<int> only;
    for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria{
        {1, "exponent identities", 1.0, exponent_identities},
        {2, "Fujita limit", 1.0, fujita_limit},
        {3, "kernel mass/symmetry/scaling/semigroup", 120.0, kernel_properties},
        {4, "L1 -> Linf decay slope", 300.0, decay_slope},
        {5, "memory quadrature", 1.0, quadrature},
        {6, "blow-up / global dichotomy", 900.0, dichotomy},
        {7, "lifespan slopes", 1800.0, lifespan_slopes},
        {8, "comparison principle", 300.0, comparison},
        {9, "sweep determinism", 120.0, [&] { return determinism(cli); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = v.pass && in_time;
        if (!pass) ++failures;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": " << v.detail << " ["
                  << fmt("%.2f", secs) << " s of " << c.budget_seconds << " s" << (in_time ? "" : ", over budget")
                  << "]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
