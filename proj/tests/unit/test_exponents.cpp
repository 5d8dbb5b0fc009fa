#include <doctest.h>

#include <cmath>

#include "hheat/errors.hpp"
#include "hheat/exponents.hpp"

using namespace hheat;

TEST_CASE("reference values at gamma = 1/2, Q = 4") {
    const ExponentReport r = compute_exponents({0.5, 3.0, 2.0, 1});
    CHECK(r.p_gamma.finite() == doctest::Approx(2.0));
    CHECK(r.p1_star.finite() == doctest::Approx(2.0));
    CHECK(r.p2_star.finite() == doctest::Approx(1.5));
    CHECK(r.p2_double_star.finite() == doctest::Approx(5.0 / 3.0));
    CHECK(r.p_sc1.finite() == doctest::Approx(1.75));
    CHECK(r.tilde_p2.finite() == doctest::Approx(7.0 / 3.0));
    CHECK(r.tilde_p1.finite() == doctest::Approx(2.5));
    // p2 = 2 < tilde p2 = 7/3, so q_sc = Q(p2-1)/2.
    CHECK(r.q_sc.finite() == doctest::Approx(2.0));
    CHECK(r.region == Region::GlobalSmallData);
}

TEST_CASE("classification examples") {
    CHECK(classify({0.5, 3.0, 2.0, 1}) == Region::GlobalSmallData);
    CHECK(classify({0.5, 1.5, 2.5, 1}) == Region::BlowUp);
    CHECK(classify({0.5, 3.0, 1.4, 1}) == Region::BlowUp);
    CHECK(classify({0.5, 3.0, 1.6, 1}) == Region::Open);
    CHECK(classify({0.5, 3.0, 5.0 / 3.0, 1}) == Region::Open);  // p2 = p2** is not in the global region
    CHECK(classify({0.5, 2.0, 3.0, 1}) == Region::BlowUp);      // p1 = p1* blows up
    CHECK(classify({0.0, 50.0, 50.0, 1}) == Region::BlowUp);    // p1* = +inf at gamma = 0
}

TEST_CASE("infinite exponents at gamma = 0") {
    const ExponentReport r = compute_exponents({0.0, 2.0, 2.0, 1});
    CHECK(r.p1_star.is_infinite());
    CHECK(r.p2_double_star.is_infinite());
    CHECK_THROWS_AS((void)r.p1_star.finite(), NumericDomainError);
    CHECK(ExtendedReal(1e300) < ExtendedReal::infinity());
    CHECK(ExtendedReal::infinity() == ExtendedReal::infinity());
    CHECK_FALSE(ExtendedReal::infinity() < ExtendedReal::infinity());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(compute_exponents({1.0, 2.0, 2.0, 1}), InvalidArgument);
    CHECK_THROWS_AS(compute_exponents({-0.1, 2.0, 2.0, 1}), InvalidArgument);
    CHECK_THROWS_AS(compute_exponents({0.5, 1.0, 2.0, 1}), InvalidArgument);
    CHECK_THROWS_AS(compute_exponents({0.5, 2.0, 0.5, 1}), InvalidArgument);
    CHECK_THROWS_AS(compute_exponents({0.5, 2.0, 2.0, 0}), InvalidArgument);
}

TEST_CASE("lifespan laws") {
    const LifespanPrediction a = lifespan_prediction({0.5, 1.5, 3.0, 1});
    CHECK(a.kind() == LifespanKind::PowerLaw);
    CHECK(a.exponent() == doctest::Approx(-1.0));
    CHECK(a.primary.source == "p1");

    const LifespanPrediction b = lifespan_prediction({0.5, 3.0, 1.25, 1});
    CHECK(b.kind() == LifespanKind::PowerLaw);
    CHECK(b.exponent() == doctest::Approx(-0.5));

    const LifespanPrediction c = lifespan_prediction({0.5, 1.5, 3.0, 1}, 1.0);
    CHECK(c.exponent() == doctest::Approx(-0.4));
    CHECK_THROWS_AS(lifespan_prediction({0.5, 1.5, 3.0, 1}, 6.0), InvalidArgument);
    CHECK_THROWS_AS(lifespan_prediction({0.5, 1.5, 3.0, 1}, 0.0), InvalidArgument);

    const LifespanPrediction d = lifespan_prediction({0.5, 3.0, 1.5, 1});
    CHECK(d.kind() == LifespanKind::ExpLaw);
    CHECK(d.exponent() == doctest::Approx(-0.5));

    // Both mechanisms active: the memory law is primary, the reaction law alternate.
    const LifespanPrediction e = lifespan_prediction({0.5, 1.5, 1.25, 1});
    CHECK(e.primary.source == "p1");
    REQUIRE(e.alternate.has_value());
    CHECK(e.alternate->exponent == doctest::Approx(-0.5));

    CHECK(lifespan_prediction({0.5, 3.0, 3.0, 1}).kind() == LifespanKind::None);
}

TEST_CASE("property: identities across a parameter lattice") {
    for (int n = 1; n <= 3; ++n) {
        for (int gi = 0; gi <= 9; ++gi) {
            const double g = 0.1 + 0.08 * gi;
            for (int pi = 1; pi <= 30; ++pi) {
                const double p1 = 0.95 + 0.3 * pi;  // offset keeps the lattice off exact ties such as p1 = 1/gamma
                const ProblemParams base{g, p1, 2.0, n};
                const ExponentReport r = compute_exponents(base);
                // p1 > p1* exactly when tilde p2 > p2**.
                CHECK((ExtendedReal(p1) > r.p1_star) == (r.tilde_p2 > r.p2_double_star));
                CHECK(r.p2_star < r.p2_double_star);
                const double p2 = r.tilde_p2.finite();
                const ExponentReport at = compute_exponents({g, p1, p2, n});
                CHECK(std::abs((at.tilde_p1.finite() + 1.0 - g) / (2.0 - g) - p2) < 1e-12 * p2);
                CHECK(std::abs(at.tilde_p1.finite() - p1) < 1e-12 * p1);
                // Both q_sc branches meet at p2 = tilde p2.
                const ExponentReport below = compute_exponents({g, p1, std::nextafter(p2, 0.0), n});
                CHECK(std::abs(at.q_sc.finite() - below.q_sc.finite()) < 1e-12 * at.q_sc.finite());
                // Global region implies q_sc > 1.
                for (double q2 : {1.1, 2.0, 4.0, 9.0}) {
                    const ExponentReport rr = compute_exponents({g, p1, q2, n});
                    if (rr.region == Region::GlobalSmallData) CHECK(rr.q_sc.finite() > 1.0);
                }
            }
        }
    }
}

TEST_CASE("Fujita limit as gamma tends to 1") {
    const ExponentReport r = compute_exponents({1.0 - 1e-6, 2.0, 2.0, 1});
    CHECK(std::abs(r.p1_star.finite() - 1.5) < 1e-4);
}
