#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <string>

namespace hheat {

/// Real number or +infinity. Only comparisons are defined; reading the value
/// of +infinity through finite() is an error.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT: implicit from finite reals
    static constexpr ExtendedReal infinity() {
        ExtendedReal e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    double finite() const;
    /// Value as a double, +inf for the infinite marker (for printing only).
    double as_double() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite_ || b.infinite_) {
            return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
        }
        return a.value_ <=> b.value_;
    }

    std::string to_string() const;

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b);

/// Parameters (gamma, p1, p2, n) of the mixed memory/reaction problem; Q = 2n+2.
struct ProblemParams {
    double gamma = 0.5;
    double p1 = 2.0;
    double p2 = 2.0;
    int n = 1;

    int Q() const { return 2 * n + 2; }
    /// Throws InvalidArgument unless gamma in [0,1), p1 > 1, p2 > 1, n >= 1.
    void validate() const;
};

enum class Region { BlowUp, GlobalSmallData, Open };

const char* to_string(Region r);

struct ExponentReport {
    ExtendedReal p_gamma;
    ExtendedReal p1_star;
    ExtendedReal p2_star;
    ExtendedReal p2_double_star;
    ExtendedReal tilde_p2;
    ExtendedReal tilde_p1;
    ExtendedReal q_sc;
    ExtendedReal p_sc1;
    Region region = Region::Open;
};

ExponentReport compute_exponents(const ProblemParams& params);

/// Total over admissible parameters: BlowUp when p1 <= p1* or p2 <= p2*,
/// GlobalSmallData when p1 > p1* and p2 > p2**, Open otherwise.
Region classify(const ProblemParams& params);

enum class LifespanKind { PowerLaw, ExpLaw, None };

const char* to_string(LifespanKind k);

struct LifespanLaw {
    LifespanKind kind = LifespanKind::None;
    /// PowerLaw: T <= C eps^exponent. ExpLaw: T <= C exp(eps^exponent).
    double exponent = 0.0;
    /// Which bound produced the law: "p1", "p2", "p2-critical", "kappa" or "".
    std::string source;
};

struct LifespanPrediction {
    LifespanLaw primary;
    std::optional<LifespanLaw> alternate;

    LifespanKind kind() const { return primary.kind; }
    double exponent() const { return primary.exponent; }
};

/// Upper-bound lifespan law for data eps*u0. With kappa the bound for data
/// decaying like (1+|eta|)^-kappa is returned; kappa must lie in
/// (0, 2(2-gamma)/(p1-1)).
LifespanPrediction lifespan_prediction(const ProblemParams& params, std::optional<double> kappa = std::nullopt);

}  // namespace hheat
