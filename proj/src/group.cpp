#include "hheat/group.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hheat/errors.hpp"

namespace hheat {

namespace {

void require_same_dim(const GroupPoint& a, const GroupPoint& b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("group points have different dimensions: " + std::to_string(a.dim()) +
                              " vs " + std::to_string(b.dim()));
    }
}

}  // namespace

GroupPoint::GroupPoint(std::vector<double> x_, std::vector<double> y_, double tau_)
    : x(std::move(x_)), y(std::move(y_)), tau(tau_) {
    if (x.size() != y.size()) {
        throw InvalidArgument("x and y must have the same length");
    }
}

GroupPoint GroupPoint::identity(std::size_t n) {
    return GroupPoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0);
}

GroupPoint compose(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b);
    const std::size_t n = a.dim();
    GroupPoint out = GroupPoint::identity(n);
    double twist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = a.x[i] + b.x[i];
        out.y[i] = a.y[i] + b.y[i];
        twist += a.x[i] * b.y[i] - b.x[i] * a.y[i];
    }
    out.tau = a.tau + b.tau + 2.0 * twist;
    return out;
}

GroupPoint inverse(const GroupPoint& a) {
    GroupPoint out = a;
    for (auto& v : out.x) v = -v;
    for (auto& v : out.y) v = -v;
    out.tau = -out.tau;
    return out;
}

GroupPoint dilate(double lambda, const GroupPoint& a) {
    if (!(lambda > 0.0)) {
        throw InvalidArgument("dilation factor must be positive");
    }
    GroupPoint out = a;
    for (auto& v : out.x) v *= lambda;
    for (auto& v : out.y) v *= lambda;
    out.tau *= lambda * lambda;
    return out;
}

double koranyi_norm(const GroupPoint& a) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) r2 += a.x[i] * a.x[i] + a.y[i] * a.y[i];
    return koranyi_gauge(r2, a.tau);
}

double koranyi_distance(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b);
    return koranyi_norm(compose(inverse(b), a));
}

}  // namespace hheat
