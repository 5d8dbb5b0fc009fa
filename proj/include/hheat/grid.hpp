#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hheat/errors.hpp"
#include "hheat/group.hpp"

namespace hheat {

/// Uniform box [-rx,rx] x [-ry,ry] x [-rtau,rtau] in H^1 with odd node counts,
/// so that the origin is always a node.
///
/// The sub-Laplacian stencil steps along the integral lines of X and Y, which
/// shift tau by 2*y*hx and 2*x*hy. Those shifts land on nodes when
/// 2*hx*hy = m*htau for a positive integer m ("tau-compatible" grids).
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(std::size_t nx, std::size_t ny, std::size_t ntau, double rx, double ry, double rtau);

    /// Tau-compatible grid: htau = 2*hx*hy/m and ntau the smallest odd count
    /// whose half-width reaches rtau_min.
    static GridSpec parabolic(std::size_t nx, std::size_t ny, double rx, double ry, double rtau_min,
                              int m = 1);

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t ntau() const { return ntau_; }
    double rx() const { return rx_; }
    double ry() const { return ry_; }
    double rtau() const { return rtau_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double htau() const { return htau_; }

    std::size_t size() const { return nx_ * ny_ * ntau_; }
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * ny_ + j) * ntau_ + k; }

    double x(std::size_t i) const { return -rx_ + static_cast<double>(i) * hx_; }
    double y(std::size_t j) const { return -ry_ + static_cast<double>(j) * hy_; }
    double tau(std::size_t k) const { return -rtau_ + static_cast<double>(k) * htau_; }

    /// Signed offsets from the centre node.
    long ci(std::size_t i) const { return static_cast<long>(i) - static_cast<long>(nx_ / 2); }
    long cj(std::size_t j) const { return static_cast<long>(j) - static_cast<long>(ny_ / 2); }

    bool is_boundary(std::size_t i, std::size_t j, std::size_t k) const {
        return i == 0 || j == 0 || k == 0 || i + 1 == nx_ || j + 1 == ny_ || k + 1 == ntau_;
    }
    bool is_boundary(std::size_t idx) const;

    double cell_volume(std::size_t /*idx*/) const { return hx_ * hy_ * htau_; }
    double koranyi(std::size_t idx) const;
    GroupPoint point(std::size_t idx) const;

    bool tau_compatible() const { return tau_shift_ > 0; }
    /// m with 2*hx*hy = m*htau, or 0 when the grid is not tau-compatible.
    int tau_shift() const { return tau_shift_; }

    std::string describe() const;

private:
    std::size_t nx_ = 3, ny_ = 3, ntau_ = 3;
    double rx_ = 1.0, ry_ = 1.0, rtau_ = 1.0;
    double hx_ = 1.0, hy_ = 1.0, htau_ = 1.0;
    int tau_shift_ = 0;
};

/// Scalar grid function; the space type supplies size(), cell_volume() and koranyi().
template <class Space>
class BasicField {
public:
    BasicField() = default;
    explicit BasicField(Space space, double fill = 0.0) : space_(std::move(space)), values_(space_.size(), fill) {}
    BasicField(Space space, std::vector<double> values) : space_(std::move(space)), values_(std::move(values)) {
        if (values_.size() != space_.size()) {
            throw InvalidArgument("field length " + std::to_string(values_.size()) +
                                  " does not match grid size " + std::to_string(space_.size()));
        }
    }

    const Space& space() const { return space_; }
    const Space& grid() const { return space_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    bool all_finite() const {
        for (double v : values_) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    }

    void require_finite(const char* what) const {
        if (!all_finite()) throw NumericDomainError(std::string(what) + ": field contains non-finite values");
    }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    double max_value() const {
        double m = -std::numeric_limits<double>::infinity();
        for (double v : values_) m = std::max(m, v);
        return m;
    }

    double min_value() const {
        double m = std::numeric_limits<double>::infinity();
        for (double v : values_) m = std::min(m, v);
        return m;
    }

    /// Cell-volume weighted 1-norm.
    double one_norm() const {
        double s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) s += std::abs(values_[i]) * space_.cell_volume(i);
        return s;
    }

    /// Cell-volume weighted integral (signed).
    double integral() const {
        double s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * space_.cell_volume(i);
        return s;
    }

    /// Discrete L^p norm; p = +inf gives the sup norm.
    double lp_norm(double p) const {
        if (std::isinf(p)) return sup_norm();
        if (p == 1.0) return one_norm();
        double s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) s += std::pow(std::abs(values_[i]), p) * space_.cell_volume(i);
        return std::pow(s, 1.0 / p);
    }

private:
    Space space_{};
    std::vector<double> values_;
};

using Field = BasicField<GridSpec>;

}  // namespace hheat
