#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hheat/group.hpp"

namespace hheat {

// Monte Carlo for the heat kernel of L on H^1. The diffusion generated by L
// has horizontal part a Brownian motion with covariance 2t and area term
//   dtau = 2 (x dy - y dx),
// so endpoints at time t are draws from the kernel h_t centred at the origin.
struct SamplerOptions {
    double steps_per_unit_time = 200.0;  // Euler substeps for the area integral
    std::size_t streams = 16;            // independent seeded streams; results merge by stream index
    unsigned threads = 1;
};

using Endpoint = std::array<double, 3>;  // (x, y, tau)

std::vector<Endpoint> sample_endpoints(double t, std::size_t n, std::uint64_t seed, const SamplerOptions& opts = {});

struct HistogramSpec {
    double rx = 3.0, ry = 3.0, rtau = 3.0;
    std::size_t bx = 24, by = 24, btau = 24;

    std::size_t bins() const { return bx * by * btau; }
    double bin_volume() const;
    // Bin containing (x,y,tau), or bins() when outside the box.
    std::size_t locate(double x, double y, double tau) const;
    std::array<double, 3> centre(std::size_t bin) const;
    void validate() const;
};

struct KernelEstimate {
    double t = 0.0;
    std::size_t samples = 0;
    HistogramSpec spec;
    std::vector<std::uint64_t> counts;
    std::uint64_t outside = 0;

    double density(std::size_t bin) const;
    double std_error(std::size_t bin) const;
    // Mass captured by the histogram and its binomial standard error.
    double total_mass() const;
    double total_mass_error() const;
};

KernelEstimate mc_kernel_sample(double t, std::size_t n, std::uint64_t seed, const HistogramSpec& spec,
                                const SamplerOptions& opts = {});

// Accumulates endpoints from any source (e.g. composed samples).
KernelEstimate histogram_of(const std::vector<Endpoint>& points, double t, const HistogramSpec& spec);

struct McValue {
    double mean = 0.0;
    double std_error = 0.0;
};

// (H_t f)(eta) = E[f(eta o xi)] with xi ~ h_t, computed in the left-invariant
// convention used by the stencil: the endpoint is eta composed with the sample.
McValue mc_semigroup_apply(const std::function<double(const GroupPoint&)>& f, double t, const GroupPoint& eta,
                           std::size_t n, std::uint64_t seed, const SamplerOptions& opts = {});

}  // namespace hheat
