#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hheat {

/// Point (x, y, tau) of the Heisenberg group H^n, x and y in R^n.
struct GroupPoint {
    std::vector<double> x;
    std::vector<double> y;
    double tau = 0.0;

    GroupPoint() = default;
    GroupPoint(std::vector<double> x_, std::vector<double> y_, double tau_);

    /// Convenience constructor for H^1.
    static GroupPoint h1(double x, double y, double tau) { return GroupPoint({x}, {y}, tau); }
    static GroupPoint identity(std::size_t n);

    std::size_t dim() const { return x.size(); }

    friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

/// Group law: (x+x', y+y', tau+tau'+2(x.y' - x'.y)).
GroupPoint compose(const GroupPoint& a, const GroupPoint& b);
GroupPoint inverse(const GroupPoint& a);
/// Parabolic dilation (lambda x, lambda y, lambda^2 tau); lambda must be positive.
GroupPoint dilate(double lambda, const GroupPoint& a);
/// Homogeneous gauge ((|x|^2+|y|^2)^2 + tau^2)^{1/4}.
double koranyi_norm(const GroupPoint& a);
/// |b^{-1} o a|; left-invariant.
double koranyi_distance(const GroupPoint& a, const GroupPoint& b);

/// Korányi gauge from the horizontal radius squared and tau (used on grids).
inline double koranyi_gauge(double r2, double tau) { return std::sqrt(std::sqrt(r2 * r2 + tau * tau)); }

}  // namespace hheat
