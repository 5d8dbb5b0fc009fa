#include "hheat/heat.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hheat/errors.hpp"
#include "hheat/sublaplacian.hpp"

namespace hheat {

double stable_dt(const GridSpec& grid) {
    return 1.0 / (2.0 / (grid.hx() * grid.hx()) + 2.0 / (grid.hy() * grid.hy()));
}

void heat_step(const GridSpec& grid, std::span<const double> in, std::span<double> out, double dt) {
    const double limit = stable_dt(grid);
    if (!(dt >= 0.0) || dt > limit * (1.0 + 1e-12)) {
        throw PreconditionError("heat step dt=" + std::to_string(dt) + " exceeds stable bound " +
                                std::to_string(limit));
    }
    apply_sublaplacian(grid, in, out);
    const std::size_t n = grid.size();
    for (std::size_t idx = 0; idx < n; ++idx) out[idx] = in[idx] + dt * out[idx];
    // Dirichlet rows: L is zero there, but keep the boundary pinned even if `in` was not.
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        for (std::size_t j = 0; j < grid.ny(); ++j) {
            const std::size_t base = grid.index(i, j, 0);
            if (i == 0 || j == 0 || i + 1 == grid.nx() || j + 1 == grid.ny()) {
                std::fill(out.begin() + static_cast<std::ptrdiff_t>(base),
                          out.begin() + static_cast<std::ptrdiff_t>(base + grid.ntau()), 0.0);
            } else {
                out[base] = 0.0;
                out[base + grid.ntau() - 1] = 0.0;
            }
        }
    }
}

Field heat_step(const Field& u, double dt) {
    u.require_finite("heat_step input");
    Field out(u.space());
    heat_step(u.space(), u.values(), out.data(), dt);
    return out;
}

Field heat_evolve(const Field& u, double duration) {
    if (!(duration >= 0.0)) throw InvalidArgument("duration must be >= 0");
    Field cur = u;
    if (duration == 0.0) return cur;
    const double limit = stable_dt(u.space());
    const auto steps = static_cast<std::size_t>(std::ceil(duration / limit - 1e-9));
    const double dt = duration / static_cast<double>(steps);
    Field next(u.space());
    for (std::size_t s = 0; s < steps; ++s) {
        heat_step(cur.space(), cur.values(), next.data(), dt);
        std::swap(cur, next);
    }
    return cur;
}

}  // namespace hheat
