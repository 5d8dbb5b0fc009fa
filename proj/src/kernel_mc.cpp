#include "hheat/kernel_mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "hheat/errors.hpp"

namespace hheat {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::size_t stream) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    splitmix64(s);
    return splitmix64(s);
}

void check_options(const SamplerOptions& o) {
    if (!(o.steps_per_unit_time > 0.0)) throw InvalidArgument("steps_per_unit_time must be > 0");
    if (o.streams == 0) throw InvalidArgument("at least one stream is required");
}

// Runs body(stream, count, rng) for every stream; streams are split among threads
// but each stream's draws depend only on (seed, stream).
template <class Body>
void for_streams(std::size_t n, std::uint64_t seed, const SamplerOptions& o, Body&& body) {
    const std::size_t S = o.streams;
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t s = first; s < S; s += stride) {
            const std::size_t count = n / S + (s < n % S ? 1 : 0);
            std::mt19937_64 rng(stream_seed(seed, s));
            body(s, count, rng);
        }
    };
    const std::size_t T = std::clamp<std::size_t>(o.threads, 1, S);
    if (T == 1) {
        work(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < T; ++k) pool.emplace_back(work, k, T);
    for (auto& th : pool) th.join();
}

Endpoint draw(double t, std::size_t m, std::mt19937_64& rng, std::normal_distribution<double>& nd) {
    const double sd = std::sqrt(2.0 * t / static_cast<double>(m));
    double x = 0.0, y = 0.0, tau = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dx = sd * nd(rng);
        const double dy = sd * nd(rng);
        // Midpoint and left-point sums coincide here: the dx*dy terms cancel.
        tau += 2.0 * (x * dy - y * dx);
        x += dx;
        y += dy;
    }
    return {x, y, tau};
}

std::size_t substeps(double t, const SamplerOptions& o) {
    return static_cast<std::size_t>(std::max(1.0, std::ceil(t * o.steps_per_unit_time)));
}

}  // namespace

std::vector<Endpoint> sample_endpoints(double t, std::size_t n, std::uint64_t seed, const SamplerOptions& opts) {
    if (!(t > 0.0)) throw InvalidArgument("t must be > 0");
    check_options(opts);
    const std::size_t m = substeps(t, opts);
    std::vector<std::vector<Endpoint>> parts(opts.streams);
    for_streams(n, seed, opts, [&](std::size_t s, std::size_t count, std::mt19937_64& rng) {
        std::normal_distribution<double> nd(0.0, 1.0);
        parts[s].reserve(count);
        for (std::size_t i = 0; i < count; ++i) parts[s].push_back(draw(t, m, rng, nd));
    });
    std::vector<Endpoint> out;
    out.reserve(n);
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

double HistogramSpec::bin_volume() const {
    return (2.0 * rx / static_cast<double>(bx)) * (2.0 * ry / static_cast<double>(by)) *
           (2.0 * rtau / static_cast<double>(btau));
}

std::size_t HistogramSpec::locate(double x, double y, double tau) const {
    auto cell = [](double v, double r, std::size_t nb) -> long {
        const double u = (v + r) / (2.0 * r) * static_cast<double>(nb);
        if (!(u >= 0.0) || u >= static_cast<double>(nb)) return -1;
        return static_cast<long>(u);
    };
    const long i = cell(x, rx, bx), j = cell(y, ry, by), k = cell(tau, rtau, btau);
    if (i < 0 || j < 0 || k < 0) return bins();
    return (static_cast<std::size_t>(i) * by + static_cast<std::size_t>(j)) * btau + static_cast<std::size_t>(k);
}

std::array<double, 3> HistogramSpec::centre(std::size_t bin) const {
    const std::size_t k = bin % btau, j = (bin / btau) % by, i = bin / (btau * by);
    auto c = [](std::size_t idx, double r, std::size_t nb) {
        return -r + (static_cast<double>(idx) + 0.5) * 2.0 * r / static_cast<double>(nb);
    };
    return {c(i, rx, bx), c(j, ry, by), c(k, rtau, btau)};
}

void HistogramSpec::validate() const {
    if (!(rx > 0.0 && ry > 0.0 && rtau > 0.0)) throw InvalidArgument("histogram half-widths must be > 0");
    if (bx == 0 || by == 0 || btau == 0) throw InvalidArgument("histogram needs at least one bin per axis");
}

double KernelEstimate::density(std::size_t bin) const {
    return static_cast<double>(counts.at(bin)) / (static_cast<double>(samples) * spec.bin_volume());
}

double KernelEstimate::std_error(std::size_t bin) const {
    const double N = static_cast<double>(samples);
    const double p = static_cast<double>(counts.at(bin)) / N;
    return std::sqrt(p * (1.0 - p) / N) / spec.bin_volume();
}

double KernelEstimate::total_mass() const {
    return static_cast<double>(samples - outside) / static_cast<double>(samples);
}

double KernelEstimate::total_mass_error() const {
    const double p = total_mass();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

KernelEstimate histogram_of(const std::vector<Endpoint>& points, double t, const HistogramSpec& spec) {
    spec.validate();
    if (points.empty()) throw InvalidArgument("no samples to histogram");
    KernelEstimate est;
    est.t = t;
    est.samples = points.size();
    est.spec = spec;
    est.counts.assign(spec.bins(), 0);
    for (const auto& p : points) {
        const std::size_t b = spec.locate(p[0], p[1], p[2]);
        if (b == spec.bins()) {
            ++est.outside;
        } else {
            ++est.counts[b];
        }
    }
    return est;
}

KernelEstimate mc_kernel_sample(double t, std::size_t n, std::uint64_t seed, const HistogramSpec& spec,
                                const SamplerOptions& opts) {
    if (!(t > 0.0)) throw InvalidArgument("t must be > 0");
    if (n == 0) throw InvalidArgument("sample count must be > 0");
    spec.validate();
    check_options(opts);
    const std::size_t m = substeps(t, opts);
    std::vector<std::vector<std::uint64_t>> counts(opts.streams);
    std::vector<std::uint64_t> outside(opts.streams, 0);
    for_streams(n, seed, opts, [&](std::size_t s, std::size_t count, std::mt19937_64& rng) {
        std::normal_distribution<double> nd(0.0, 1.0);
        counts[s].assign(spec.bins(), 0);
        for (std::size_t i = 0; i < count; ++i) {
            const Endpoint e = draw(t, m, rng, nd);
            const std::size_t b = spec.locate(e[0], e[1], e[2]);
            if (b == spec.bins()) {
                ++outside[s];
            } else {
                ++counts[s][b];
            }
        }
    });
    KernelEstimate est;
    est.t = t;
    est.samples = n;
    est.spec = spec;
    est.counts.assign(spec.bins(), 0);
    for (std::size_t s = 0; s < opts.streams; ++s) {
        if (counts[s].empty()) continue;
        for (std::size_t b = 0; b < spec.bins(); ++b) est.counts[b] += counts[s][b];
        est.outside += outside[s];
    }
    return est;
}

McValue mc_semigroup_apply(const std::function<double(const GroupPoint&)>& f, double t, const GroupPoint& eta,
                           std::size_t n, std::uint64_t seed, const SamplerOptions& opts) {
    if (eta.dim() != 1) throw InvalidArgument("Monte Carlo semigroup is implemented on H^1");
    if (n < 2) throw InvalidArgument("need at least two samples");
    const std::vector<Endpoint> pts = sample_endpoints(t, n, seed, opts);
    double sum = 0.0, sum2 = 0.0;
    for (const auto& p : pts) {
        const double v = f(compose(eta, GroupPoint::h1(p[0], p[1], p[2])));
        sum += v;
        sum2 += v * v;
    }
    const double N = static_cast<double>(n);
    const double mean = sum / N;
    const double var = std::max(0.0, (sum2 - N * mean * mean) / (N - 1.0));
    return {mean, std::sqrt(var / N)};
}

}  // namespace hheat
