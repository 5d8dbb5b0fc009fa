#include "hheat/exponents.hpp"

#include <cmath>
#include <sstream>

#include "hheat/errors.hpp"

namespace hheat {

double ExtendedReal::finite() const {
    if (infinite_) throw NumericDomainError("value is +infinity");
    return value_;
}

std::string ExtendedReal::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b) { return (a < b) ? b : a; }

void ProblemParams::validate() const {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0,1)");
    if (!(p1 > 1.0) || !std::isfinite(p1)) throw InvalidArgument("p1 must be a finite real > 1");
    if (!(p2 > 1.0) || !std::isfinite(p2)) throw InvalidArgument("p2 must be a finite real > 1");
    if (n < 1) throw InvalidArgument("n must be >= 1");
}

const char* to_string(Region r) {
    switch (r) {
        case Region::BlowUp: return "BlowUp";
        case Region::GlobalSmallData: return "GlobalSmallData";
        case Region::Open: return "Open";
    }
    return "?";
}

const char* to_string(LifespanKind k) {
    switch (k) {
        case LifespanKind::PowerLaw: return "PowerLaw";
        case LifespanKind::ExpLaw: return "ExpLaw";
        case LifespanKind::None: return "None";
    }
    return "?";
}

namespace {

Region region_of(const ProblemParams& p, const ExponentReport& r) {
    if (ExtendedReal(p.p1) <= r.p1_star || ExtendedReal(p.p2) <= r.p2_star) return Region::BlowUp;
    if (ExtendedReal(p.p2) > r.p2_double_star) return Region::GlobalSmallData;
    return Region::Open;
}

}  // namespace

ExponentReport compute_exponents(const ProblemParams& params) {
    params.validate();
    const double g = params.gamma;
    const double Q = params.Q();
    const double p1 = params.p1, p2 = params.p2;

    ExponentReport r;
    const double p_gamma = 1.0 + 2.0 * (2.0 - g) / (Q - 2.0 + 2.0 * g);
    r.p_gamma = p_gamma;
    const ExtendedReal inv_gamma = (g == 0.0) ? ExtendedReal::infinity() : ExtendedReal(1.0 / g);
    r.p1_star = max(inv_gamma, r.p_gamma);
    r.p2_star = 1.0 + 2.0 / Q;
    const ExtendedReal memory_branch =
        (g == 0.0) ? ExtendedReal::infinity() : ExtendedReal((g - g * g + 1.0) / (g * (2.0 - g)));
    r.p2_double_star = max(memory_branch, ExtendedReal(1.0 + 2.0 / (Q - 2.0 + 2.0 * g)));
    const double tilde_p2 = (p1 + 1.0 - g) / (2.0 - g);
    r.tilde_p2 = tilde_p2;
    r.tilde_p1 = (p2 - 1.0) * (2.0 - g) + 1.0;
    r.q_sc = (p2 >= tilde_p2) ? Q * (p1 - 1.0) / (2.0 * (2.0 - g)) : Q * (p2 - 1.0) / 2.0;
    r.p_sc1 = 1.0 + 2.0 * (2.0 - g) / Q;
    r.region = region_of(params, r);
    return r;
}

Region classify(const ProblemParams& params) { return compute_exponents(params).region; }

LifespanPrediction lifespan_prediction(const ProblemParams& params, std::optional<double> kappa) {
    const ExponentReport r = compute_exponents(params);
    const double g = params.gamma;
    const double Q = params.Q();
    const double p1 = params.p1, p2 = params.p2;

    if (kappa) {
        const double upper = 2.0 * (2.0 - g) / (p1 - 1.0);
        if (!(*kappa > 0.0 && *kappa < upper)) {
            throw InvalidArgument("kappa must lie in (0, 2(2-gamma)/(p1-1)) = (0, " + std::to_string(upper) + ")");
        }
        LifespanPrediction out;
        out.primary = {LifespanKind::PowerLaw, -1.0 / ((2.0 - g) / (p1 - 1.0) - *kappa / 2.0), "kappa"};
        return out;
    }

    std::optional<LifespanLaw> p1_law;
    std::optional<LifespanLaw> p2_law;
    if (p1 < r.p_sc1.finite()) {
        p1_law = LifespanLaw{LifespanKind::PowerLaw, -1.0 / ((2.0 - g) / (p1 - 1.0) - Q / 2.0), "p1"};
    }
    const double p2_star = r.p2_star.finite();
    if (std::abs(p2 - p2_star) <= 1e-12 * p2_star) {
        p2_law = LifespanLaw{LifespanKind::ExpLaw, -(p2 - 1.0), "p2-critical"};
    } else if (p2 < p2_star) {
        p2_law = LifespanLaw{LifespanKind::PowerLaw, -1.0 / (1.0 / (p2 - 1.0) - Q / 2.0), "p2"};
    }

    LifespanPrediction out;
    if (p1_law) {
        out.primary = *p1_law;
        out.alternate = p2_law;
    } else if (p2_law) {
        out.primary = *p2_law;
    }
    return out;
}

}  // namespace hheat
