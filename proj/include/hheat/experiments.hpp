#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hheat/config.hpp"
#include "hheat/exponents.hpp"
#include "hheat/grid.hpp"
#include "hheat/initial_data.hpp"
#include "hheat/io.hpp"
#include "hheat/kernel_mc.hpp"
#include "hheat/radial.hpp"
#include "hheat/solver.hpp"
#include "hheat/stats.hpp"

namespace hheat {

enum class SpaceKind { Box, Radial };

struct SpaceSetup {
    SpaceKind kind = SpaceKind::Box;
    GridSpec box;
    AxisymmetricGrid radial;

    static SpaceSetup from(GridSpec g);
    static SpaceSetup from(AxisymmetricGrid g);
    std::string describe() const;
};

struct RunSetup {
    SpaceSetup space;
    InitialData data;
    SolverSettings settings;
};

RunResult run_simulation(const ProblemParams& params, const RunSetup& setup);

// Configuration keys (all optional, defaults in brackets):
//   problem.gamma [0.5]  problem.p1 [1.5]  problem.p2 [2.5]  problem.n [1]
//   grid.kind [box] | radial
//   box:    grid.nx [31] grid.ny [=nx] grid.rx [2.5] grid.ry [=rx] grid.rtau [4.5] grid.m [1]
//   radial: grid.hr [0.25] grid.r_core [4] grid.r_max [40] grid.htau [0.5] grid.tau_core [8]
//           grid.tau_max [800] grid.growth [1.03] grid.max_ratio [8]
//   data.kind [bump] | power | zero   data.amplitude [1] data.width [1] data.kappa [1] data.epsilon [1]
//   solver.horizon [5] solver.dt [0] solver.threshold_factor [1e6] solver.threshold [0]
//   solver.growth_limit [0.1] solver.min_dt [1e-12] solver.memory [true] solver.reaction [true]
//   solver.history [double] | float
//   run.seed [0]  run.threads [1]
ProblemParams params_from_config(const Config& c);
SpaceSetup space_from_config(const Config& c);
InitialData data_from_config(const Config& c);
SolverSettings settings_from_config(const Config& c);
RunSetup setup_from_config(const Config& c);

// ---- phase diagram ----------------------------------------------------------

struct SweepConfig {
    double gamma = 0.5;
    int n = 1;
    std::vector<std::pair<double, double>> lattice;  // (p1, p2)
    RunSetup setup;
    unsigned threads = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

// sweep.points = "p1:p2, p1:p2, ..." or the product of sweep.p1 and sweep.p2 lists.
SweepConfig sweep_from_config(const Config& c);

enum class Agreement { Agree, Disagree, Open, Undetermined };
const char* to_string(Agreement a);

struct SweepRow {
    std::size_t index = 0;
    double gamma = 0.0, p1 = 0.0, p2 = 0.0;
    Region predicted = Region::Open;
    RunStatus observed = RunStatus::SurvivedHorizon;
    double t_end = 0.0;
    bool nonfinite = false;
    std::size_t steps = 0;
    Agreement agreement = Agreement::Open;
};

// Rows come back in lattice order whatever the thread count.
std::vector<SweepRow> phase_sweep(const SweepConfig& config);
CsvTable sweep_table(const std::vector<SweepRow>& rows);

inline constexpr const char* kSweepSchema = "hheat.sweep/1";
inline constexpr const char* kLifespanSchema = "hheat.lifespan/1";
inline constexpr const char* kSeriesSchema = "hheat.series/1";
inline constexpr const char* kKernelSchema = "hheat.kernel-density/1";
inline constexpr const char* kCompareSchema = "hheat.compare/1";

// ---- lifespan ---------------------------------------------------------------

struct LifespanConfig {
    ProblemParams params;
    RunSetup setup;                 // setup.data is scaled by each epsilon
    std::vector<double> epsilons;   // strictly decreasing
    std::optional<double> kappa;    // selects the decaying-data law
    double horizon_margin = 4.0;    // horizon >= margin * C * eps^exponent once C is known
    int max_extensions = 3;         // horizon doublings after a censored run

    void validate() const;
};

LifespanConfig lifespan_from_config(const Config& c);

struct LifespanPoint {
    double epsilon = 0.0;
    RunStatus status = RunStatus::SurvivedHorizon;
    double t_end = 0.0;
    double horizon = 0.0;
    int extensions = 0;
    bool valid = false;  // blew up; only valid points enter the fit
};

struct LifespanFit {
    std::vector<LifespanPoint> points;
    LifespanPrediction prediction;
    std::optional<LineFit> fit;      // log T against log eps
    std::optional<LineFit> exp_fit;  // log T against eps^-(p2-1), critical p2 only
    std::string note;

    double relative_error() const;   // |slope - predicted| / |predicted|, NaN without fit
};

// Throws FitAborted with fewer than three valid points.
LineFit fit_lifespan(const std::vector<LifespanPoint>& points);

LifespanFit lifespan_sweep(const LifespanConfig& config);
CsvTable lifespan_table(const LifespanFit& fit);

// ---- comparison -------------------------------------------------------------

struct ComparisonReport {
    double order_violation = 0.0;     // max (u - v)+ with u from the lower data
    double memory_violation = 0.0;    // max (v_mem - u)+, memory-only run from the lower data
    double reaction_violation = 0.0;  // max (w_reac - u)+, reaction-only run from the lower data
    double max_sup = 0.0;
    double t_end = 0.0;
    std::size_t steps = 0;
};

// Runs the four problems in lockstep with one shared step sequence.
// Throws InvalidArgument unless 0 <= lower <= upper at every node.
ComparisonReport comparison_check(const ProblemParams& params, const SpaceSetup& space, const InitialData& lower,
                                  const InitialData& upper, const SolverSettings& settings);
CsvTable comparison_table(const ComparisonReport& r);

// ---- kernel validation ------------------------------------------------------

struct KernelProbe {
    std::array<double, 3> point{};
    double density = 0.0;
    double partner = 0.0;      // symmetry: density at the inverse; scaling: r^Q * density at the dilate
    double relative_gap = 0.0;
};

struct KernelValidation {
    double t = 0.25;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double mass = 0.0;
    double mass_error = 0.0;
    std::vector<KernelProbe> symmetry;
    std::vector<KernelProbe> scaling;
    McValue semigroup_direct;    // H_{s+t} f at the test point
    McValue semigroup_composed;  // H_s H_t f at the test point
    double semigroup_z = 0.0;    // |difference| in combined standard errors
    KernelEstimate estimate;

    double max_symmetry_gap() const;
    double max_scaling_gap() const;
};

KernelValidation validate_kernel(double t, std::size_t samples, std::uint64_t seed, const HistogramSpec& bins,
                                 const SamplerOptions& opts = {});
CsvTable kernel_table(const KernelEstimate& est);

}  // namespace hheat
