#include "hheat/initial_data.hpp"

#include <cmath>
#include <sstream>

#include "hheat/errors.hpp"

namespace hheat {

InitialData InitialData::bump(double amplitude, double width, double epsilon) {
    InitialData d;
    d.kind = DataKind::Bump;
    d.amplitude = amplitude;
    d.width = width;
    d.epsilon = epsilon;
    d.validate();
    return d;
}

InitialData InitialData::power_decay(double amplitude, double kappa, double epsilon) {
    InitialData d;
    d.kind = DataKind::PowerDecay;
    d.amplitude = amplitude;
    d.kappa = kappa;
    d.epsilon = epsilon;
    d.validate();
    return d;
}

InitialData InitialData::from_values(std::vector<double> values, double epsilon) {
    InitialData d;
    d.kind = DataKind::Custom;
    d.custom = std::move(values);
    d.epsilon = epsilon;
    d.validate();
    return d;
}

InitialData InitialData::scaled(double eps) const {
    InitialData d = *this;
    d.epsilon = eps;
    d.validate();
    return d;
}

void InitialData::validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be finite and >= 0");
    switch (kind) {
        case DataKind::Bump:
            if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw InvalidArgument("bump amplitude must be >= 0");
            if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("bump width must be > 0");
            break;
        case DataKind::PowerDecay:
            if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw InvalidArgument("amplitude must be >= 0");
            if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be > 0");
            break;
        case DataKind::Custom:
            for (double v : custom) {
                if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("custom data must be finite and >= 0");
            }
            break;
    }
}

std::string InitialData::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << to_string(kind) << " eps=" << epsilon;
    if (kind == DataKind::Bump) os << " amplitude=" << amplitude << " width=" << width;
    if (kind == DataKind::PowerDecay) os << " amplitude=" << amplitude << " kappa=" << kappa;
    if (kind == DataKind::Custom) os << " nodes=" << custom.size();
    return os.str();
}

double InitialData::profile(double rho) const {
    switch (kind) {
        case DataKind::Bump: {
            const double s = rho / width;
            return amplitude * std::exp(-(s * s) * (s * s));
        }
        case DataKind::PowerDecay: return amplitude * std::pow(1.0 + rho, -kappa);
        case DataKind::Custom: break;
    }
    throw InvalidArgument("custom data has no radial profile");
}

const char* to_string(DataKind k) {
    switch (k) {
        case DataKind::Bump: return "bump";
        case DataKind::PowerDecay: return "power";
        case DataKind::Custom: return "custom";
    }
    return "?";
}

DataKind parse_data_kind(const std::string& s) {
    if (s == "bump") return DataKind::Bump;
    if (s == "power" || s == "power_decay") return DataKind::PowerDecay;
    if (s == "custom") return DataKind::Custom;
    throw InvalidArgument("unknown initial data kind '" + s + "' (expected bump, power or custom)");
}

namespace {

template <class Space>
std::vector<double> sample_impl(const InitialData& data, const Space& space) {
    data.validate();
    const std::size_t n = space.size();
    std::vector<double> v(n, 0.0);
    if (data.kind == DataKind::Custom) {
        if (data.custom.size() != n) {
            throw InvalidArgument("custom data has " + std::to_string(data.custom.size()) + " values, grid has " +
                                  std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = space.is_boundary(i) ? 0.0 : data.epsilon * data.custom[i];
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!space.is_boundary(i)) v[i] = data.epsilon * data.profile(space.koranyi(i));
    }
    return v;
}

}  // namespace

std::vector<double> sample_values(const InitialData& data, const GridSpec& grid) { return sample_impl(data, grid); }
std::vector<double> sample_values(const InitialData& data, const AxisymmetricGrid& grid) {
    return sample_impl(data, grid);
}

Field sample(const InitialData& data, const GridSpec& grid) { return Field(grid, sample_impl(data, grid)); }
RadialField sample(const InitialData& data, const AxisymmetricGrid& grid) {
    return RadialField(grid, sample_impl(data, grid));
}

}  // namespace hheat
