#include "hheat/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hheat/errors.hpp"

namespace hheat {

AxisymmetricGrid::AxisymmetricGrid(std::vector<double> r_nodes, std::vector<double> tau_nodes)
    : r_(std::move(r_nodes)), tau_(std::move(tau_nodes)) {
    if (r_.size() < 3 || tau_.size() < 3) throw InvalidArgument("axisymmetric grid needs >= 3 nodes per axis");
    if (r_.front() != 0.0) throw InvalidArgument("r nodes must start at the axis r = 0");
    for (std::size_t i = 1; i < r_.size(); ++i) {
        if (!(r_[i] > r_[i - 1])) throw InvalidArgument("r nodes must be strictly increasing");
    }
    for (std::size_t k = 1; k < tau_.size(); ++k) {
        if (!(tau_[k] > tau_[k - 1])) throw InvalidArgument("tau nodes must be strictly increasing");
    }
    if (!(tau_.front() < 0.0 && tau_.back() > 0.0)) throw InvalidArgument("tau nodes must straddle 0");

    const std::size_t nr = r_.size(), nt = tau_.size();
    ring_area_.resize(nr);
    a_.assign(nr, 0.0);
    b_.assign(nr, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        const double lo = (i == 0) ? 0.0 : 0.5 * (r_[i - 1] + r_[i]);
        const double hi = (i + 1 == nr) ? r_[i] : 0.5 * (r_[i] + r_[i + 1]);
        const double v = 0.5 * (hi * hi - lo * lo);
        ring_area_[i] = 2.0 * std::numbers::pi * v;
        if (i + 1 < nr) {
            a_[i] = hi / ((r_[i + 1] - r_[i]) * v);
            if (i > 0) b_[i] = lo / ((r_[i] - r_[i - 1]) * v);
        }
    }
    tau_len_.resize(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        const double lo = (k == 0) ? tau_[0] : 0.5 * (tau_[k - 1] + tau_[k]);
        const double hi = (k + 1 == nt) ? tau_[k] : 0.5 * (tau_[k] + tau_[k + 1]);
        tau_len_[k] = hi - lo;
    }
    tau_zero_ = 0;
    for (std::size_t k = 1; k < nt; ++k) {
        if (std::abs(tau_[k]) < std::abs(tau_[tau_zero_])) tau_zero_ = k;
    }
}

std::vector<double> AxisymmetricGrid::stretched_axis(double h, double core, double extent, double growth,
                                                     double max_ratio) {
    if (!(h > 0.0 && core >= 0.0 && extent > h && growth >= 1.0 && max_ratio >= 1.0)) {
        throw InvalidArgument("invalid stretched axis parameters");
    }
    std::vector<double> nodes{0.0};
    double step = h;
    while (nodes.back() < extent) {
        if (nodes.back() >= core) step = std::min(step * growth, max_ratio * h);
        double next = nodes.back() + step;
        // Absorb a short final cell into the previous one.
        if (extent - next < 0.5 * step) next = extent;
        nodes.push_back(std::min(next, extent));
    }
    return nodes;
}

AxisymmetricGrid AxisymmetricGrid::stretched(double hr, double r_core, double r_max, double htau, double tau_core,
                                             double tau_max, double growth, double max_ratio) {
    std::vector<double> r = stretched_axis(hr, r_core, r_max, growth, max_ratio);
    const std::vector<double> half = stretched_axis(htau, tau_core, tau_max, growth, max_ratio);
    std::vector<double> tau;
    tau.reserve(2 * half.size() - 1);
    for (auto it = half.rbegin(); it != half.rend(); ++it) tau.push_back(-*it);
    for (std::size_t k = 1; k < half.size(); ++k) tau.push_back(half[k]);
    tau[half.size() - 1] = 0.0;
    return AxisymmetricGrid(std::move(r), std::move(tau));
}

AxisymmetricGrid AxisymmetricGrid::uniform(std::size_t nr, double r_max, std::size_t ntau, double tau_max) {
    if (nr < 3 || ntau < 3 || ntau % 2 == 0) throw InvalidArgument("uniform axisymmetric grid needs nr >= 3, odd ntau >= 3");
    std::vector<double> r(nr), tau(ntau);
    for (std::size_t i = 0; i < nr; ++i) r[i] = r_max * static_cast<double>(i) / static_cast<double>(nr - 1);
    const std::size_t c = ntau / 2;
    for (std::size_t k = 0; k < ntau; ++k) {
        tau[k] = tau_max * (static_cast<double>(k) - static_cast<double>(c)) / static_cast<double>(c);
    }
    return AxisymmetricGrid(std::move(r), std::move(tau));
}

std::string AxisymmetricGrid::describe() const {
    std::ostringstream os;
    os << "axisymmetric nr=" << nr() << " ntau=" << ntau() << " r_max=" << r_max() << " tau_max=" << tau_max()
       << " hr0=" << (r_[1] - r_[0]) << " htau0=" << (tau_[tau_zero_ + 1] - tau_[tau_zero_]);
    return os.str();
}

double stable_dt(const AxisymmetricGrid& grid) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < grid.nr(); ++i) m = std::max(m, grid.coef_out(i) + grid.coef_in(i));
    return 1.0 / m;
}

namespace {

// Backward Euler in tau on one r line: (I - dt*c*D) v = w, D the three-point
// finite-volume second difference, Dirichlet ends kept at 0.
void implicit_tau_line(const AxisymmetricGrid& g, double c, std::span<double> line, std::vector<double>& cp,
                       std::vector<double>& dp) {
    const std::size_t nt = g.ntau();
    const auto& t = g.tau_nodes();
    line[0] = 0.0;
    line[nt - 1] = 0.0;
    if (c == 0.0) return;
    // Unknowns k = 1..nt-2.
    cp.assign(nt, 0.0);
    dp.assign(nt, 0.0);
    for (std::size_t k = 1; k + 1 < nt; ++k) {
        const double len = 0.5 * (t[k + 1] - t[k - 1]);
        const double lo = c / ((t[k] - t[k - 1]) * len);
        const double hi = c / ((t[k + 1] - t[k]) * len);
        const double diag = 1.0 + lo + hi;
        const double sub = (k > 1) ? -lo : 0.0;
        const double sup = (k + 2 < nt) ? -hi : 0.0;
        const double denom = diag - sub * cp[k - 1];
        cp[k] = sup / denom;
        dp[k] = (line[k] - sub * dp[k - 1]) / denom;
    }
    line[nt - 2] = dp[nt - 2];
    for (std::size_t k = nt - 2; k-- > 1;) line[k] = dp[k] - cp[k] * line[k + 1];
}

}  // namespace

void heat_step(const AxisymmetricGrid& grid, std::span<const double> in, std::span<double> out, double dt) {
    const double limit = stable_dt(grid);
    if (!(dt >= 0.0) || dt > limit * (1.0 + 1e-12)) {
        throw PreconditionError("heat step dt=" + std::to_string(dt) + " exceeds stable bound " +
                                std::to_string(limit));
    }
    if (in.size() != grid.size() || out.size() != grid.size()) throw InvalidArgument("field size mismatch");
    const std::size_t nr = grid.nr(), nt = grid.ntau();
    for (std::size_t i = 0; i + 1 < nr; ++i) {
        const double a = grid.coef_out(i), b = grid.coef_in(i);
        const double* cur = in.data() + i * nt;
        const double* up = in.data() + (i + 1) * nt;
        const double* down = (i > 0) ? in.data() + (i - 1) * nt : cur;
        double* o = out.data() + i * nt;
        const double keep = 1.0 - dt * (a + b);
        for (std::size_t k = 0; k < nt; ++k) o[k] = keep * cur[k] + dt * (a * up[k] + b * down[k]);
    }
    std::fill(out.begin() + static_cast<std::ptrdiff_t>((nr - 1) * nt), out.end(), 0.0);

    std::vector<double> cp, dp;
    for (std::size_t i = 0; i + 1 < nr; ++i) {
        const double r = grid.r(i);
        implicit_tau_line(grid, dt * 4.0 * r * r, out.subspan(i * nt, nt), cp, dp);
    }
}

RadialField heat_step(const RadialField& u, double dt) {
    u.require_finite("heat_step input");
    RadialField out(u.space());
    heat_step(u.space(), u.values(), out.data(), dt);
    return out;
}

void apply_radial_sublaplacian(const AxisymmetricGrid& grid, std::span<const double> in, std::span<double> out) {
    if (in.size() != grid.size() || out.size() != grid.size()) throw InvalidArgument("field size mismatch");
    const std::size_t nr = grid.nr(), nt = grid.ntau();
    const auto& t = grid.tau_nodes();
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i + 1 < nr; ++i) {
        const double a = grid.coef_out(i), b = grid.coef_in(i);
        const double c = 4.0 * grid.r(i) * grid.r(i);
        for (std::size_t k = 1; k + 1 < nt; ++k) {
            const std::size_t idx = grid.index(i, k);
            const double down = (i > 0) ? in[idx - nt] : in[idx];
            const double len = 0.5 * (t[k + 1] - t[k - 1]);
            const double dtt = ((in[idx + 1] - in[idx]) / (t[k + 1] - t[k]) - (in[idx] - in[idx - 1]) / (t[k] - t[k - 1])) / len;
            out[idx] = a * (in[idx + nt] - in[idx]) - b * (in[idx] - down) + c * dtt;
        }
    }
}

}  // namespace hheat
