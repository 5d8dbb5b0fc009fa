#include "hheat/sublaplacian.hpp"

#include <algorithm>

#include "hheat/errors.hpp"

namespace hheat {

namespace {

void require_tau_compatible(const GridSpec& grid) {
    if (!grid.tau_compatible()) {
        throw InvalidArgument("grid is not tau-compatible (2*hx*hy must be an integer multiple of htau): " +
                              grid.describe());
    }
}

/// out[k] += coef * src[k + shift] for interior k with k + shift inside the line.
void add_shifted(double* out, const double* src, long n, long shift, double coef) {
    const long lo = std::max(1L, -shift);
    const long hi = std::min(n - 2, n - 1 - shift);
    for (long k = lo; k <= hi; ++k) out[k] += coef * src[k + shift];
}

void sub_shifted(double* out, const double* src, long n, long shift, double coef) {
    const long lo = std::max(1L, -shift);
    const long hi = std::min(n - 2, n - 1 - shift);
    for (long k = lo; k <= hi; ++k) out[k] -= coef * src[k + shift];
}

}  // namespace

void apply_sublaplacian(const GridSpec& grid, std::span<const double> in, std::span<double> out) {
    require_tau_compatible(grid);
    if (in.size() != grid.size() || out.size() != grid.size()) {
        throw InvalidArgument("buffer size does not match grid");
    }
    const std::size_t nx = grid.nx(), ny = grid.ny();
    const long nt = static_cast<long>(grid.ntau());
    const long m = grid.tau_shift();
    const double cx = 1.0 / (grid.hx() * grid.hx());
    const double cy = 1.0 / (grid.hy() * grid.hy());
    const double diag = -2.0 * (cx + cy);

    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const long sy = m * grid.ci(i);
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            const long sx = m * grid.cj(j);
            double* o = out.data() + grid.index(i, j, 0);
            const double* c = in.data() + grid.index(i, j, 0);
            for (long k = 1; k + 1 < nt; ++k) o[k] = diag * c[k];
            add_shifted(o, in.data() + grid.index(i + 1, j, 0), nt, -sx, cx);
            add_shifted(o, in.data() + grid.index(i - 1, j, 0), nt, sx, cx);
            add_shifted(o, in.data() + grid.index(i, j + 1, 0), nt, sy, cy);
            add_shifted(o, in.data() + grid.index(i, j - 1, 0), nt, -sy, cy);
        }
    }
}

Field apply_sublaplacian(const Field& u) {
    u.require_finite("apply_sublaplacian");
    Field out(u.grid());
    apply_sublaplacian(u.grid(), u.values(), out.values());
    return out;
}

std::pair<Field, Field> apply_horizontal_gradient(const Field& u) {
    const GridSpec& grid = u.grid();
    require_tau_compatible(grid);
    u.require_finite("apply_horizontal_gradient");
    Field xu(grid), yu(grid);
    const std::size_t nx = grid.nx(), ny = grid.ny();
    const long nt = static_cast<long>(grid.ntau());
    const long m = grid.tau_shift();
    const double cx = 0.5 / grid.hx();
    const double cy = 0.5 / grid.hy();
    const auto in = u.values();

    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const long sy = m * grid.ci(i);
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            const long sx = m * grid.cj(j);
            double* ox = xu.values().data() + grid.index(i, j, 0);
            double* oy = yu.values().data() + grid.index(i, j, 0);
            add_shifted(ox, in.data() + grid.index(i + 1, j, 0), nt, -sx, cx);
            sub_shifted(ox, in.data() + grid.index(i - 1, j, 0), nt, sx, cx);
            add_shifted(oy, in.data() + grid.index(i, j + 1, 0), nt, sy, cy);
            sub_shifted(oy, in.data() + grid.index(i, j - 1, 0), nt, -sy, cy);
        }
    }
    return {std::move(xu), std::move(yu)};
}

Field apply_sublaplacian_expanded(const Field& u) {
    u.require_finite("apply_sublaplacian_expanded");
    const GridSpec& g = u.grid();
    Field out(g);
    const double hx = g.hx(), hy = g.hy(), ht = g.htau();
    const auto v = [&](std::size_t i, std::size_t j, std::size_t k) { return u[g.index(i, j, k)]; };
    for (std::size_t i = 1; i + 1 < g.nx(); ++i) {
        const double x = g.x(i);
        for (std::size_t j = 1; j + 1 < g.ny(); ++j) {
            const double y = g.y(j);
            for (std::size_t k = 1; k + 1 < g.ntau(); ++k) {
                const double c = v(i, j, k);
                const double uxx = (v(i + 1, j, k) - 2.0 * c + v(i - 1, j, k)) / (hx * hx);
                const double uyy = (v(i, j + 1, k) - 2.0 * c + v(i, j - 1, k)) / (hy * hy);
                const double utt = (v(i, j, k + 1) - 2.0 * c + v(i, j, k - 1)) / (ht * ht);
                const double uxt =
                    (v(i + 1, j, k + 1) - v(i + 1, j, k - 1) - v(i - 1, j, k + 1) + v(i - 1, j, k - 1)) /
                    (4.0 * hx * ht);
                const double uyt =
                    (v(i, j + 1, k + 1) - v(i, j + 1, k - 1) - v(i, j - 1, k + 1) + v(i, j - 1, k - 1)) /
                    (4.0 * hy * ht);
                out[g.index(i, j, k)] = uxx + uyy + 4.0 * (x * x + y * y) * utt + 4.0 * x * uyt - 4.0 * y * uxt;
            }
        }
    }
    return out;
}

bool stencil_in_box(const GridSpec& grid, std::size_t i, std::size_t j, std::size_t k) {
    if (grid.is_boundary(i, j, k) || !grid.tau_compatible()) return false;
    const long m = grid.tau_shift();
    const long kk = static_cast<long>(k);
    const long nt = static_cast<long>(grid.ntau());
    const long sx = m * grid.cj(j);
    const long sy = m * grid.ci(i);
    const auto ok = [nt](long q) { return q >= 0 && q < nt; };
    return ok(kk - sx) && ok(kk + sx) && ok(kk + sy) && ok(kk - sy);
}

}  // namespace hheat
