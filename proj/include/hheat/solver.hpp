#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hheat/exponents.hpp"
#include "hheat/grid.hpp"
#include "hheat/memory_kernel.hpp"
#include "hheat/radial.hpp"

namespace hheat {

enum class RunStatus { BlewUp, SurvivedHorizon, StepCollapse };
const char* to_string(RunStatus s);

struct SolverSettings {
    double horizon = 10.0;
    double dt = 0.0;                // macro step; 0 means stable_dt of the space
    double threshold_factor = 1e6;  // blow-up when sup >= factor * initial sup
    double threshold = 0.0;         // absolute threshold, overrides the factor when > 0
    double growth_limit = 0.1;      // halve dt when one step grows the sup norm by more
    double min_dt = 1e-12;
    bool memory = true;    // include the memory term
    bool reaction = true;  // include the local reaction |u|^p2
    std::size_t max_steps = 50'000'000;
    HistoryPrecision history_precision = HistoryPrecision::Double;

    void validate() const;
};

struct NormSample {
    double t = 0.0;
    double dt = 0.0;
    double sup = 0.0;
    double one = 0.0;
};

struct RunResult {
    RunStatus status = RunStatus::SurvivedHorizon;
    double t_end = 0.0;  // t_star when BlewUp, last time reached otherwise
    bool nonfinite = false;
    double threshold = 0.0;
    std::size_t steps = 0;
    std::size_t heat_substeps = 0;
    std::size_t halvings = 0;
    double final_dt = 0.0;
    std::vector<NormSample> series;
    std::string message;
};

double nonlinear_power(double u, double p);

// Lie splitting for
//   u_t - L u = int_0^t (t-s)^-gamma |u|^p1(s) ds + |u|^p2
// on a bounded space with homogeneous Dirichlet data. One step of size dt:
//   v = u + dt * (M_n + f2(u)),  M_n the memory sum frozen at t_n,
//   push f1(u) on [t_n, t_n + dt], then heat-evolve v over dt.
template <class Space>
class Integrator {
public:
    Integrator(const ProblemParams& params, BasicField<Space> u0, const SolverSettings& settings);

    double time() const { return t_; }
    std::size_t steps() const { return history_.steps(); }
    const BasicField<Space>& field() const { return u_; }
    double sup() const { return sup_; }
    double one_norm() const { return u_.one_norm(); }
    std::size_t heat_substeps() const { return substeps_; }
    const MemoryHistory& history() const { return history_; }

    // Relative sup-norm growth of the reaction predictor for step dt
    // (+inf if it is not finite). Memory is evaluated once per step.
    double trial(double dt);
    // Completes the step; `dt` must match the last trial.
    void commit(double dt);

private:
    ProblemParams params_;
    SolverSettings settings_;
    BasicField<Space> u_;
    MemoryHistory history_;
    std::vector<double> memory_, predictor_, scratch_, g_;
    double t_ = 0.0;
    double sup_ = 0.0;
    double trial_dt_ = -1.0;
    bool memory_ready_ = false;
    std::size_t substeps_ = 0;
};

// Heat-evolves `u` over `duration` with equal substeps no larger than stable_dt.
template <class Space>
std::size_t heat_advance(const Space& space, std::vector<double>& u, std::vector<double>& scratch, double duration);

template <class Space>
RunResult simulate(const ProblemParams& params, const BasicField<Space>& u0, const SolverSettings& settings);

// Fixed-step march without adaptivity or blow-up stop.
template <class Space>
BasicField<Space> march_fixed(const ProblemParams& params, const BasicField<Space>& u0, double dt, std::size_t steps);

// First time the sup norm reaches `threshold`, interpolated linearly in log(sup)
// between the bracketing samples.
std::optional<double> detect_blowup(const std::vector<NormSample>& series, double threshold);

template <class Space>
struct PicardReport {
    double T = 0.0;
    double dt = 0.0;
    std::size_t levels = 0;
    // Max over time levels of sup |u^k - u^{k-1}|, k = 1, 2, ...
    std::vector<double> differences;
    // Iterates at t = T; entry 0 is the free heat evolution.
    std::vector<BasicField<Space>> finals;
};

// Successive approximations u^{k+1} = Phi(u^k) for the same discretisation as
// march_fixed, started from the free heat evolution. Throws IterationDiverged
// when an iterate exceeds `divergence_bound` or becomes non-finite.
template <class Space>
PicardReport<Space> picard_iterate(const ProblemParams& params, const BasicField<Space>& u0, double T, double dt,
                                   std::size_t iterations, double divergence_bound = 1e12);

}  // namespace hheat
