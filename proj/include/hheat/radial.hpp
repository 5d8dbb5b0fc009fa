#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hheat/grid.hpp"

namespace hheat {

// Grid for functions of (r, tau) with r = |(x,y)|. On such functions the
// sub-Laplacian is exactly u_rr + u_r/r + 4 r^2 u_tautau, since the mixed
// terms reduce to 4 d_theta d_tau. Nodes may be nonuniform; r starts at the
// axis r = 0 and tau is symmetric about 0. The outer r node and both tau ends
// carry homogeneous Dirichlet values.
class AxisymmetricGrid {
public:
    AxisymmetricGrid() = default;
    AxisymmetricGrid(std::vector<double> r_nodes, std::vector<double> tau_nodes);

    // Uniform spacing h up to `core`, then spacing growing geometrically by
    // `growth` per cell (capped at max_ratio*h) until `extent`.
    static std::vector<double> stretched_axis(double h, double core, double extent, double growth,
                                              double max_ratio);
    static AxisymmetricGrid stretched(double hr, double r_core, double r_max, double htau, double tau_core,
                                      double tau_max, double growth = 1.03, double max_ratio = 8.0);
    static AxisymmetricGrid uniform(std::size_t nr, double r_max, std::size_t ntau, double tau_max);

    std::size_t nr() const { return r_.size(); }
    std::size_t ntau() const { return tau_.size(); }
    std::size_t size() const { return r_.size() * tau_.size(); }
    std::size_t index(std::size_t i, std::size_t k) const { return i * tau_.size() + k; }

    double r(std::size_t i) const { return r_[i]; }
    double tau(std::size_t k) const { return tau_[k]; }
    const std::vector<double>& r_nodes() const { return r_; }
    const std::vector<double>& tau_nodes() const { return tau_; }
    double r_max() const { return r_.back(); }
    double tau_max() const { return tau_.back(); }

    bool is_boundary(std::size_t idx) const {
        const std::size_t i = idx / tau_.size(), k = idx % tau_.size();
        return i + 1 == r_.size() || k == 0 || k + 1 == tau_.size();
    }
    // Volume in H^1 of the ring cell around the node: 2*pi * area_r(i) * len_tau(k).
    double cell_volume(std::size_t idx) const {
        return ring_area_[idx / tau_.size()] * tau_len_[idx % tau_.size()];
    }
    double koranyi(std::size_t idx) const {
        const double rr = r_[idx / tau_.size()];
        return koranyi_gauge(rr * rr, tau_[idx % tau_.size()]);
    }
    // Index of the tau node closest to 0 (exactly 0 for grids built here).
    std::size_t tau_zero() const { return tau_zero_; }

    std::string describe() const;

    // Finite-volume coefficients of the r part: (L_r u)_i = a_i (u_{i+1}-u_i) - b_i (u_i-u_{i-1}).
    double coef_out(std::size_t i) const { return a_[i]; }
    double coef_in(std::size_t i) const { return b_[i]; }

private:
    std::vector<double> r_, tau_;
    std::vector<double> ring_area_, tau_len_;
    std::vector<double> a_, b_;
    std::size_t tau_zero_ = 0;
};

using RadialField = BasicField<AxisymmetricGrid>;

// The r part is explicit and the tau part backward Euler (one tridiagonal
// solve per r line), both monotone; stable_dt is the explicit r limit.
double stable_dt(const AxisymmetricGrid& grid);

void heat_step(const AxisymmetricGrid& grid, std::span<const double> in, std::span<double> out, double dt);

RadialField heat_step(const RadialField& u, double dt);

// Discrete operator u_rr + u_r/r + 4 r^2 u_tautau (zero on boundary nodes).
void apply_radial_sublaplacian(const AxisymmetricGrid& grid, std::span<const double> in, std::span<double> out);

}  // namespace hheat
