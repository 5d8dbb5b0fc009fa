#pragma once

#include <string>
#include <vector>

#include "hheat/grid.hpp"
#include "hheat/radial.hpp"

namespace hheat {

enum class DataKind { Bump, PowerDecay, Custom };

// eps * u0 with
//   Bump:       amplitude * exp(-|eta|^4 / width^4)   (|.| the Koranyi gauge)
//   PowerDecay: amplitude * (1 + |eta|)^-kappa
//   Custom:     explicit nodal values
// Boundary nodes are always set to 0.
struct InitialData {
    DataKind kind = DataKind::Bump;
    double amplitude = 1.0;
    double width = 1.0;
    double kappa = 1.0;
    double epsilon = 1.0;
    std::vector<double> custom;

    static InitialData bump(double amplitude, double width, double epsilon = 1.0);
    static InitialData power_decay(double amplitude, double kappa, double epsilon = 1.0);
    static InitialData from_values(std::vector<double> values, double epsilon = 1.0);

    InitialData scaled(double eps) const;
    void validate() const;
    std::string describe() const;

    // Profile value at Koranyi gauge rho, before the eps factor.
    double profile(double rho) const;
};

const char* to_string(DataKind k);
DataKind parse_data_kind(const std::string& s);

std::vector<double> sample_values(const InitialData& data, const GridSpec& grid);
std::vector<double> sample_values(const InitialData& data, const AxisymmetricGrid& grid);

Field sample(const InitialData& data, const GridSpec& grid);
RadialField sample(const InitialData& data, const AxisymmetricGrid& grid);

}  // namespace hheat
