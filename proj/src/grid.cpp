#include "hheat/grid.hpp"

#include <cmath>
#include <sstream>

namespace hheat {

namespace {

void require_node_count(std::size_t n, const char* axis) {
    if (n < 3 || n % 2 == 0) {
        throw InvalidArgument(std::string("node count along ") + axis + " must be odd and >= 3, got " +
                              std::to_string(n));
    }
}

void require_half_width(double r, const char* axis) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw InvalidArgument(std::string("half-width along ") + axis + " must be positive");
    }
}

}  // namespace

GridSpec::GridSpec(std::size_t nx, std::size_t ny, std::size_t ntau, double rx, double ry, double rtau)
    : nx_(nx), ny_(ny), ntau_(ntau), rx_(rx), ry_(ry), rtau_(rtau) {
    require_node_count(nx, "x");
    require_node_count(ny, "y");
    require_node_count(ntau, "tau");
    require_half_width(rx, "x");
    require_half_width(ry, "y");
    require_half_width(rtau, "tau");
    hx_ = 2.0 * rx / static_cast<double>(nx - 1);
    hy_ = 2.0 * ry / static_cast<double>(ny - 1);
    htau_ = 2.0 * rtau / static_cast<double>(ntau - 1);

    const double ratio = 2.0 * hx_ * hy_ / htau_;
    const double m = std::round(ratio);
    tau_shift_ = (m >= 1.0 && std::abs(ratio - m) <= 1e-9 * m) ? static_cast<int>(m) : 0;
}

GridSpec GridSpec::parabolic(std::size_t nx, std::size_t ny, double rx, double ry, double rtau_min, int m) {
    require_node_count(nx, "x");
    require_node_count(ny, "y");
    require_half_width(rx, "x");
    require_half_width(ry, "y");
    require_half_width(rtau_min, "tau");
    if (m < 1) throw InvalidArgument("tau refinement factor m must be >= 1");
    const double hx = 2.0 * rx / static_cast<double>(nx - 1);
    const double hy = 2.0 * ry / static_cast<double>(ny - 1);
    const double htau = 2.0 * hx * hy / m;
    const auto half = static_cast<std::size_t>(std::ceil(rtau_min / htau - 1e-12));
    const std::size_t ntau = 2 * std::max<std::size_t>(half, 1) + 1;
    return GridSpec(nx, ny, ntau, rx, ry, static_cast<double>(ntau / 2) * htau);
}

bool GridSpec::is_boundary(std::size_t idx) const {
    const std::size_t k = idx % ntau_;
    const std::size_t j = (idx / ntau_) % ny_;
    const std::size_t i = idx / (ntau_ * ny_);
    return is_boundary(i, j, k);
}

double GridSpec::koranyi(std::size_t idx) const {
    const std::size_t k = idx % ntau_;
    const std::size_t j = (idx / ntau_) % ny_;
    const std::size_t i = idx / (ntau_ * ny_);
    const double xi = x(i), yj = y(j);
    return koranyi_gauge(xi * xi + yj * yj, tau(k));
}

GroupPoint GridSpec::point(std::size_t idx) const {
    const std::size_t k = idx % ntau_;
    const std::size_t j = (idx / ntau_) % ny_;
    const std::size_t i = idx / (ntau_ * ny_);
    return GroupPoint::h1(x(i), y(j), tau(k));
}

std::string GridSpec::describe() const {
    std::ostringstream os;
    os << nx_ << "x" << ny_ << "x" << ntau_ << " nodes on [" << -rx_ << "," << rx_ << "]x[" << -ry_ << "," << ry_
       << "]x[" << -rtau_ << "," << rtau_ << "]";
    return os.str();
}

}  // namespace hheat
