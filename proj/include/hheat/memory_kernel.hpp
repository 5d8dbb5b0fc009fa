#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hheat {

// Product-integration weights for the weakly singular kernel (t-s)^-gamma
// with piecewise-constant integrand on a nonuniform time grid.
class QuadratureTable {
public:
    QuadratureTable(double gamma, std::vector<double> nodes);

    double gamma() const { return gamma_; }
    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

    // Weight of interval [t_j, t_{j+1}] for target time t_k; requires j < k.
    double weight(std::size_t k, std::size_t j) const;
    std::vector<double> row(std::size_t k) const;

    // Appends a node strictly after the last one.
    void push_node(double t);

private:
    double gamma_;
    std::vector<double> nodes_;
};

QuadratureTable build_weights(double gamma, std::vector<double> nodes);

enum class HistoryPrecision { Double, Float };

// Stored values G_j = f(u(t_j)) of the memory nonlinearity, one per completed
// time interval. Node t_0 = 0 exists from the start; push() adds G_j together
// with the right end t_{j+1} of its interval.
class MemoryHistory {
public:
    MemoryHistory(double gamma, std::size_t field_size, HistoryPrecision precision = HistoryPrecision::Double);

    double gamma() const { return table_.gamma(); }
    std::size_t field_size() const { return field_size_; }
    std::size_t steps() const { return count_; }
    const QuadratureTable& table() const { return table_; }
    HistoryPrecision precision() const { return precision_; }

    void push(std::span<const double> g, double t_next);

    // Sum_{j<k} w_{k,j} G_j written to out.
    void eval(std::size_t k, std::span<double> out) const;
    // Value of stored G_j at node i, converted to double.
    double stored(std::size_t j, std::size_t i) const;
    std::size_t bytes() const;

private:
    QuadratureTable table_;
    std::size_t field_size_;
    HistoryPrecision precision_;
    std::size_t count_ = 0;
    std::vector<std::vector<double>> g_double_;
    std::vector<std::vector<float>> g_float_;
};

std::vector<double> eval_memory(const MemoryHistory& history, std::size_t k);

// Memory sum on a scalar series: out[k] = sum_{j<k} w_{k,j} f_j.
std::vector<double> memory_integral(double gamma, const std::vector<double>& nodes, const std::vector<double>& samples);

enum class SampleRule { LeftEndpoint, IntervalMean };

// Riemann-Liouville integral I^alpha f at every node, alpha in (0,1].
// IntervalMean uses (f_j+f_{j+1})/2 on each interval, which reduces to the
// trapezoid rule for alpha = 1.
std::vector<double> fractional_integral(double alpha, const std::vector<double>& nodes,
                                        const std::vector<double>& samples,
                                        SampleRule rule = SampleRule::IntervalMean);

}  // namespace hheat
