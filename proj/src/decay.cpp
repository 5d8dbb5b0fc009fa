#include "hheat/decay.hpp"

#include <cmath>

#include "hheat/errors.hpp"
#include "hheat/heat.hpp"
#include "hheat/stats.hpp"

namespace hheat {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("line fit needs >= 2 paired values");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidArgument("line fit needs two distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) throw InvalidArgument("log-log fit needs positive abscissae");
        lx[i] = std::log(x[i]);
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw NumericDomainError("log-log fit needs positive values");
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

DecayFit decay_fit(const Field& u0, double p, double q, const std::vector<double>& times) {
    if (!(p >= 1.0) || !(q >= p)) throw InvalidArgument("decay fit needs 1 <= p <= q");
    if (times.size() < 2) throw InvalidArgument("decay fit needs at least two sample times");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1]))) {
            throw InvalidArgument("sample times must be positive and increasing");
        }
    }
    u0.require_finite("decay_fit input");

    DecayFit out;
    out.p = p;
    out.q = q;
    out.times = times;
    out.initial_norm_p = u0.lp_norm(p);
    const double Q = 4.0;
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    out.predicted_slope = -(Q / 2.0) * (1.0 / p - inv_q);

    Field u = u0;
    double t = 0.0;
    for (double target : times) {
        u = heat_evolve(u, target - t);
        t = target;
        out.norms.push_back(u.lp_norm(q));
    }
    const LineFit f = fit_loglog(out.times, out.norms);
    out.fitted_slope = f.slope;
    out.r2 = f.r2;
    const double m0 = u0.integral();
    out.relative_mass_loss = (m0 != 0.0) ? 1.0 - u.integral() / m0 : 0.0;
    return out;
}

}  // namespace hheat
