#pragma once

#include <span>

#include "hheat/grid.hpp"

namespace hheat {

// Largest explicit step for which u + dt*L u has nonnegative weights:
// 1 / (2/hx^2 + 2/hy^2). The translation stencil has no tau coupling of its own,
// so htau and the box size do not enter.
double stable_dt(const GridSpec& grid);

// One forward-Euler step of u_t = L u with homogeneous Dirichlet boundary.
// Throws PreconditionError when dt exceeds stable_dt(grid).
void heat_step(const GridSpec& grid, std::span<const double> in, std::span<double> out, double dt);

Field heat_step(const Field& u, double dt);

// Advances by `duration` using the fewest equal substeps not above stable_dt.
Field heat_evolve(const Field& u, double duration);

}  // namespace hheat
