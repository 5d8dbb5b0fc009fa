#include "hheat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hheat/errors.hpp"
#include "hheat/heat.hpp"

namespace hheat {

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::BlewUp: return "BlewUp";
        case RunStatus::SurvivedHorizon: return "SurvivedHorizon";
        case RunStatus::StepCollapse: return "StepCollapse";
    }
    return "?";
}

void SolverSettings::validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be finite and > 0");
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite and >= 0");
    if (!(threshold_factor > 1.0)) throw InvalidArgument("threshold factor must be > 1");
    if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be >= 0");
    if (!(growth_limit > 0.0)) throw InvalidArgument("growth limit must be > 0");
    if (!(min_dt > 0.0)) throw InvalidArgument("min_dt must be > 0");
}

double nonlinear_power(double u, double p) {
    const double a = std::abs(u);
    if (p == 2.0) return u * a;
    if (p == 3.0) return u * a * a;
    const double v = std::pow(a, p);
    return u < 0.0 ? -v : v;
}

template <class Space>
std::size_t heat_advance(const Space& space, std::vector<double>& u, std::vector<double>& scratch, double duration) {
    if (duration <= 0.0) return 0;
    const double limit = stable_dt(space);
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(duration / limit - 1e-9)));
    const double h = duration / static_cast<double>(n);
    scratch.resize(u.size());
    for (std::size_t s = 0; s < n; ++s) {
        heat_step(space, u, scratch, h);
        u.swap(scratch);
    }
    return n;
}

template <class Space>
Integrator<Space>::Integrator(const ProblemParams& params, BasicField<Space> u0, const SolverSettings& settings)
    : params_(params),
      settings_(settings),
      u_(std::move(u0)),
      history_(params.gamma, settings.memory ? u_.size() : 0, settings.history_precision) {
    params_.validate();
    if (params_.n != 1) throw InvalidArgument("the solver works on H^1 only (n = 1)");
    u_.require_finite("initial data");
    sup_ = u_.sup_norm();
    const std::size_t n = u_.size();
    memory_.assign(n, 0.0);
    predictor_.assign(n, 0.0);
    g_.assign(n, 0.0);
}

template <class Space>
double Integrator<Space>::trial(double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("step must be > 0");
    const std::size_t n = u_.size();
    if (!memory_ready_) {
        if (settings_.memory && history_.steps() > 0) {
            history_.eval(history_.steps(), memory_);
        } else {
            std::fill(memory_.begin(), memory_.end(), 0.0);
        }
        memory_ready_ = true;
    }
    const auto u = u_.values();
    const bool reaction = settings_.reaction;
    const double p2 = params_.p2;
    double m = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        double rhs = memory_[i];
        if (reaction) rhs += nonlinear_power(u[i], p2);
        const double v = u[i] + dt * rhs;
        predictor_[i] = v;
        if (!std::isfinite(v)) finite = false;
        m = std::max(m, std::abs(v));
    }
    trial_dt_ = dt;
    if (!finite) return std::numeric_limits<double>::infinity();
    if (sup_ == 0.0) return m == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return m / sup_ - 1.0;
}

template <class Space>
void Integrator<Space>::commit(double dt) {
    if (dt != trial_dt_) trial(dt);
    const auto u = u_.values();
    const std::size_t n = u_.size();
    if (settings_.memory) {
        for (std::size_t i = 0; i < n; ++i) g_[i] = nonlinear_power(u[i], params_.p1);
        history_.push(g_, t_ + dt);
    } else {
        history_.push({}, t_ + dt);
    }
    substeps_ += heat_advance(u_.space(), predictor_, scratch_, dt);
    u_.data().swap(predictor_);
    predictor_.assign(n, 0.0);
    t_ += dt;
    sup_ = u_.sup_norm();
    memory_ready_ = false;
    trial_dt_ = -1.0;
}

template <class Space>
RunResult simulate(const ProblemParams& params, const BasicField<Space>& u0, const SolverSettings& settings) {
    settings.validate();
    const SolverSettings& s = settings;
    Integrator<Space> it(params, u0, s);
    RunResult res;
    const double sup0 = it.sup();
    if (s.threshold > 0.0) {
        res.threshold = s.threshold;
    } else {
        res.threshold = (sup0 > 0.0) ? s.threshold_factor * sup0 : std::numeric_limits<double>::infinity();
    }
    double dt = (s.dt > 0.0) ? s.dt : stable_dt(u0.space());
    res.series.push_back({0.0, 0.0, sup0, it.one_norm()});

    if (sup0 >= res.threshold) {
        res.status = RunStatus::BlewUp;
        res.t_end = 0.0;
        res.message = "initial data already above threshold";
        return res;
    }

    while (it.time() < s.horizon * (1.0 - 1e-14)) {
        if (it.steps() >= s.max_steps) throw StateError("step limit reached before the horizon");
        const double remaining = s.horizon - it.time();
        double step = (remaining <= dt * (1.0 + 1e-9)) ? remaining : dt;
        for (;;) {
            const double growth = it.trial(step);
            if (growth <= s.growth_limit) break;
            dt *= 0.5;
            ++res.halvings;
            if (dt < s.min_dt) {
                res.status = RunStatus::StepCollapse;
                res.t_end = it.time();
                res.steps = it.steps();
                res.heat_substeps = it.heat_substeps();
                res.final_dt = dt;
                res.message = "step size fell below min_dt";
                return res;
            }
            step = std::min(dt, remaining);
        }
        const double t_prev = it.time();
        it.commit(step);
        if (!it.field().all_finite()) {
            res.status = RunStatus::BlewUp;
            res.nonfinite = true;
            res.t_end = t_prev;
            res.steps = it.steps();
            res.heat_substeps = it.heat_substeps();
            res.final_dt = dt;
            res.message = "field became non-finite";
            return res;
        }
        res.series.push_back({it.time(), step, it.sup(), it.one_norm()});
        if (it.sup() >= res.threshold) {
            res.status = RunStatus::BlewUp;
            res.t_end = detect_blowup(res.series, res.threshold).value_or(it.time());
            res.steps = it.steps();
            res.heat_substeps = it.heat_substeps();
            res.final_dt = dt;
            return res;
        }
    }
    res.status = RunStatus::SurvivedHorizon;
    res.t_end = it.time();
    res.steps = it.steps();
    res.heat_substeps = it.heat_substeps();
    res.final_dt = dt;
    return res;
}

template <class Space>
BasicField<Space> march_fixed(const ProblemParams& params, const BasicField<Space>& u0, double dt, std::size_t steps) {
    SolverSettings s;
    s.horizon = dt * static_cast<double>(std::max<std::size_t>(steps, 1));
    Integrator<Space> it(params, u0, s);
    for (std::size_t n = 0; n < steps; ++n) it.commit(dt);
    return it.field();
}

std::optional<double> detect_blowup(const std::vector<NormSample>& series, double threshold) {
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].sup >= threshold) {
            if (i == 0) return series[0].t;
            const NormSample& a = series[i - 1];
            const NormSample& b = series[i];
            if (!(a.sup > 0.0) || !std::isfinite(b.sup)) return b.t;
            const double la = std::log(a.sup), lb = std::log(b.sup), lt = std::log(threshold);
            const double w = (lb > la) ? (lt - la) / (lb - la) : 1.0;
            return a.t + std::clamp(w, 0.0, 1.0) * (b.t - a.t);
        }
    }
    return std::nullopt;
}

template <class Space>
PicardReport<Space> picard_iterate(const ProblemParams& params, const BasicField<Space>& u0, double T, double dt,
                                   std::size_t iterations, double divergence_bound) {
    params.validate();
    if (!(T > 0.0) || !(dt > 0.0)) throw InvalidArgument("T and dt must be > 0");
    u0.require_finite("initial data");
    const auto levels = static_cast<std::size_t>(std::llround(T / dt));
    if (levels == 0 || std::abs(static_cast<double>(levels) * dt - T) > 1e-9 * T) {
        throw InvalidArgument("T must be a positive multiple of dt");
    }
    const Space& space = u0.space();
    const std::size_t n = u0.size();

    PicardReport<Space> rep;
    rep.T = T;
    rep.dt = dt;
    rep.levels = levels;

    // Iterate 0: the free heat evolution at every level.
    std::vector<std::vector<double>> prev(levels + 1);
    prev[0] = u0.data();
    std::vector<double> scratch;
    for (std::size_t k = 0; k < levels; ++k) {
        prev[k + 1] = prev[k];
        heat_advance(space, prev[k + 1], scratch, dt);
    }
    rep.finals.emplace_back(space, prev[levels]);

    std::vector<double> mem(n), g(n);
    for (std::size_t iter = 0; iter < iterations; ++iter) {
        MemoryHistory hist(params.gamma, n);
        for (std::size_t k = 0; k < levels; ++k) {
            for (std::size_t i = 0; i < n; ++i) g[i] = nonlinear_power(prev[k][i], params.p1);
            hist.push(g, static_cast<double>(k + 1) * dt);
        }
        std::vector<std::vector<double>> next(levels + 1);
        next[0] = u0.data();
        double diff = 0.0;
        for (std::size_t k = 0; k < levels; ++k) {
            hist.eval(k, mem);
            std::vector<double> w = next[k];
            for (std::size_t i = 0; i < n; ++i) w[i] += dt * (mem[i] + nonlinear_power(prev[k][i], params.p2));
            heat_advance(space, w, scratch, dt);
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::isfinite(w[i]) || std::abs(w[i]) > divergence_bound) {
                    throw IterationDiverged("successive approximation " + std::to_string(iter + 1) +
                                            " left the bounded region");
                }
                diff = std::max(diff, std::abs(w[i] - prev[k + 1][i]));
            }
            next[k + 1] = std::move(w);
        }
        rep.differences.push_back(diff);
        rep.finals.emplace_back(space, next[levels]);
        prev = std::move(next);
    }
    return rep;
}

#define HHEAT_INSTANTIATE(Space)                                                                                   \
    template class Integrator<Space>;                                                                              \
    template std::size_t heat_advance<Space>(const Space&, std::vector<double>&, std::vector<double>&, double);    \
    template RunResult simulate<Space>(const ProblemParams&, const BasicField<Space>&, const SolverSettings&);     \
    template BasicField<Space> march_fixed<Space>(const ProblemParams&, const BasicField<Space>&, double,          \
                                                  std::size_t);                                                    \
    template PicardReport<Space> picard_iterate<Space>(const ProblemParams&, const BasicField<Space>&, double,     \
                                                       double, std::size_t, double);

HHEAT_INSTANTIATE(GridSpec)
HHEAT_INSTANTIATE(AxisymmetricGrid)

#undef HHEAT_INSTANTIATE

}  // namespace hheat
