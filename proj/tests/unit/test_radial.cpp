#include <doctest.h>

#include <cmath>

#include "hheat/errors.hpp"
#include "hheat/heat.hpp"
#include "hheat/initial_data.hpp"
#include "hheat/radial.hpp"
#include "hheat/sublaplacian.hpp"

using namespace hheat;

TEST_CASE("stretched axis starts uniform and grows geometrically") {
    const auto ax = AxisymmetricGrid::stretched_axis(0.5, 2.0, 30.0, 1.1, 4.0);
    REQUIRE(ax.size() > 5);
    CHECK(ax.front() == 0.0);
    CHECK(ax.back() == 30.0);
    CHECK(ax[1] - ax[0] == doctest::Approx(0.5));
    CHECK(ax[4] - ax[3] == doctest::Approx(0.5));
    double prev = 0.0;
    // The final cell absorbs the remainder, so it is left out.
    for (std::size_t i = 1; i + 1 < ax.size(); ++i) {
        const double h = ax[i] - ax[i - 1];
        CHECK(h >= prev * (1.0 - 1e-12));
        CHECK(h <= 2.0 + 1e-12);
        prev = h;
    }
    CHECK_THROWS_AS(AxisymmetricGrid::stretched_axis(0.5, 2.0, 30.0, 0.9, 4.0), InvalidArgument);
}

TEST_CASE("radial operator is exact on r^2 and tau^2") {
    const AxisymmetricGrid g = AxisymmetricGrid::stretched(0.2, 1.0, 6.0, 0.1, 1.0, 8.0, 1.08, 5.0);
    std::vector<double> u(g.size()), lu(g.size());
    for (std::size_t i = 0; i < g.nr(); ++i)
        for (std::size_t k = 0; k < g.ntau(); ++k) u[g.index(i, k)] = g.r(i) * g.r(i) + g.tau(k) * g.tau(k);
    apply_radial_sublaplacian(g, u, lu);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.nr(); ++i)
        for (std::size_t k = 0; k < g.ntau(); ++k) {
            const std::size_t idx = g.index(i, k);
            if (g.is_boundary(idx)) continue;
            worst = std::max(worst, std::abs(lu[idx] - (4.0 + 8.0 * g.r(i) * g.r(i))));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("radial heat step conserves mass and positivity") {
    const AxisymmetricGrid g = AxisymmetricGrid::stretched(0.1, 2.0, 8.0, 0.05, 2.0, 20.0);
    RadialField u = sample(InitialData::bump(1.0, 0.5), g);
    const double m0 = u.integral();
    const double dt = stable_dt(g);
    CHECK(dt == doctest::Approx(0.1 * 0.1 / 4.0));
    for (int n = 0; n < 40; ++n) u = heat_step(u, dt);
    CHECK(u.min_value() >= 0.0);
    CHECK(u.integral() == doctest::Approx(m0).epsilon(1e-9));
    CHECK(u.sup_norm() < 1.0);
    CHECK_THROWS_AS(heat_step(u, 1.5 * dt), PreconditionError);
}

TEST_CASE("radial reduction agrees with the full stencil on radial data") {
    const double h = 0.1, t = 0.1;
    const GridSpec box = GridSpec::parabolic(41, 41, 2.0, 2.0, 3.0, 1);
    const std::size_t half = box.ntau() / 2;
    const AxisymmetricGrid rad = AxisymmetricGrid::uniform(21, 2.0, box.ntau(), box.rtau());
    const InitialData data = InitialData::bump(1.0, 0.6);
    const Field a = heat_evolve(sample(data, box), t);
    RadialField b = sample(data, rad);
    const double dt = t / std::ceil(t / stable_dt(rad));
    for (double s = 0.0; s < t - 1e-12; s += dt) b = heat_step(b, dt);

    for (std::size_t i : {0u, 3u, 6u}) {
        for (std::size_t dk : {0u, 10u, 25u}) {
            const double va = a[box.index(20 + i, 20, half + dk)];
            const double vb = b[rad.index(i, half + dk)];
            CHECK(va == doctest::Approx(vb).epsilon(0.02));
        }
    }
    CHECK(h == doctest::Approx(box.hx()));
}

TEST_CASE("grid construction rejects malformed nodes") {
    CHECK_THROWS_AS(AxisymmetricGrid({0.0, 1.0}, {-1.0, 0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(AxisymmetricGrid({0.5, 1.0, 2.0}, {-1.0, 0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(AxisymmetricGrid({0.0, 1.0, 0.5}, {-1.0, 0.0, 1.0}), InvalidArgument);
}
