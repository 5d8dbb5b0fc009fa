#include "hheat/memory_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hheat/errors.hpp"

namespace hheat {

namespace {

void check_nodes(const std::vector<double>& nodes) {
    if (nodes.empty()) throw InvalidArgument("time grid is empty");
    if (nodes.front() != 0.0) throw InvalidArgument("time grid must start at 0");
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1]) || !std::isfinite(nodes[i])) {
            throw InvalidArgument("time grid not strictly increasing at index " + std::to_string(i));
        }
    }
}

}  // namespace

QuadratureTable::QuadratureTable(double gamma, std::vector<double> nodes) : gamma_(gamma), nodes_(std::move(nodes)) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0,1)");
    check_nodes(nodes_);
}

double QuadratureTable::weight(std::size_t k, std::size_t j) const {
    if (k >= nodes_.size() || j >= k) throw InvalidArgument("weight index out of range");
    const double a = nodes_[k] - nodes_[j];
    const double b = nodes_[k] - nodes_[j + 1];
    if (gamma_ == 0.0) return a - b;
    const double e = 1.0 - gamma_;
    return (std::pow(a, e) - std::pow(b, e)) / e;
}

std::vector<double> QuadratureTable::row(std::size_t k) const {
    if (k >= nodes_.size()) throw InvalidArgument("row index out of range");
    std::vector<double> w(k);
    if (k == 0) return w;
    const double e = 1.0 - gamma_;
    const double tk = nodes_[k];
    double prev = (gamma_ == 0.0) ? tk : std::pow(tk - nodes_[0], e);
    for (std::size_t j = 0; j < k; ++j) {
        const double d = tk - nodes_[j + 1];
        const double cur = (gamma_ == 0.0) ? d : std::pow(d, e);
        w[j] = (gamma_ == 0.0) ? (prev - cur) : (prev - cur) / e;
        prev = cur;
    }
    return w;
}

void QuadratureTable::push_node(double t) {
    if (!(t > nodes_.back()) || !std::isfinite(t)) throw InvalidArgument("new time node must exceed the last node");
    nodes_.push_back(t);
}

QuadratureTable build_weights(double gamma, std::vector<double> nodes) { return QuadratureTable(gamma, std::move(nodes)); }

MemoryHistory::MemoryHistory(double gamma, std::size_t field_size, HistoryPrecision precision)
    : table_(gamma, {0.0}), field_size_(field_size), precision_(precision) {}

void MemoryHistory::push(std::span<const double> g, double t_next) {
    if (g.size() != field_size_) throw InvalidArgument("history field has wrong size");
    for (double v : g) {
        if (!std::isfinite(v)) throw NumericDomainError("non-finite value pushed to memory history");
    }
    table_.push_node(t_next);
    if (precision_ == HistoryPrecision::Double) {
        g_double_.emplace_back(g.begin(), g.end());
    } else {
        std::vector<float> f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = static_cast<float>(g[i]);
        g_float_.push_back(std::move(f));
    }
    ++count_;
}

void MemoryHistory::eval(std::size_t k, std::span<double> out) const {
    if (k > count_) throw StateError("memory history holds " + std::to_string(count_) + " steps, step " +
                                     std::to_string(k) + " requested");
    if (out.size() != field_size_) throw InvalidArgument("output field has wrong size");
    std::fill(out.begin(), out.end(), 0.0);
    const std::vector<double> w = table_.row(k);
    const std::size_t n = field_size_;
    for (std::size_t j = 0; j < k; ++j) {
        const double wj = w[j];
        if (precision_ == HistoryPrecision::Double) {
            const double* g = g_double_[j].data();
            for (std::size_t i = 0; i < n; ++i) out[i] += wj * g[i];
        } else {
            const float* g = g_float_[j].data();
            for (std::size_t i = 0; i < n; ++i) out[i] += wj * static_cast<double>(g[i]);
        }
    }
}

double MemoryHistory::stored(std::size_t j, std::size_t i) const {
    if (j >= count_ || i >= field_size_) throw InvalidArgument("history index out of range");
    return precision_ == HistoryPrecision::Double ? g_double_[j][i] : static_cast<double>(g_float_[j][i]);
}

std::size_t MemoryHistory::bytes() const {
    return count_ * field_size_ * (precision_ == HistoryPrecision::Double ? sizeof(double) : sizeof(float));
}

std::vector<double> eval_memory(const MemoryHistory& history, std::size_t k) {
    std::vector<double> out(history.field_size());
    history.eval(k, out);
    return out;
}

std::vector<double> memory_integral(double gamma, const std::vector<double>& nodes, const std::vector<double>& samples) {
    QuadratureTable table(gamma, nodes);
    if (samples.size() != nodes.size()) throw InvalidArgument("samples and nodes differ in length");
    std::vector<double> out(nodes.size(), 0.0);
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        const std::vector<double> w = table.row(k);
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += w[j] * samples[j];
        out[k] = s;
    }
    return out;
}

std::vector<double> fractional_integral(double alpha, const std::vector<double>& nodes,
                                        const std::vector<double>& samples, SampleRule rule) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0,1]");
    if (samples.size() != nodes.size()) throw InvalidArgument("samples and nodes differ in length");
    std::vector<double> values = samples;
    if (rule == SampleRule::IntervalMean) {
        for (std::size_t j = 0; j + 1 < samples.size(); ++j) values[j] = 0.5 * (samples[j] + samples[j + 1]);
    }
    std::vector<double> out = memory_integral(1.0 - alpha, nodes, values);
    const double scale = 1.0 / std::tgamma(alpha);
    for (double& v : out) v *= scale;
    return out;
}

}  // namespace hheat
