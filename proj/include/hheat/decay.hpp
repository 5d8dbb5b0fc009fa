#pragma once

#include <vector>

#include "hheat/grid.hpp"

namespace hheat {

struct DecayFit {
    double p = 1.0;
    double q = 2.0;
    std::vector<double> times;
    std::vector<double> norms;       // ||H_t u0||_q at each time
    double initial_norm_p = 0.0;     // ||u0||_p
    double fitted_slope = 0.0;
    double predicted_slope = 0.0;    // -(Q/2)(1/p - 1/q)
    double r2 = 0.0;
    double relative_mass_loss = 0.0; // 1 - integral(u(T)) / integral(u0)
};

// Evolves u0 by the discrete heat flow, samples the q-norm at `times` and fits
// the log-log slope. Requires 1 <= p <= q <= inf, increasing positive times.
DecayFit decay_fit(const Field& u0, double p, double q, const std::vector<double>& times);

}  // namespace hheat
