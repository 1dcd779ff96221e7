#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "thzcav/errors.hpp"
#include "thzcav/mobility.hpp"

using namespace thzcav::mobility;

namespace {

TrafficParams with(double mu, double sigma)
{
    TrafficParams p;
    p.log_mean = mu;
    p.log_scatter = sigma;
    return p;
}

} // namespace

TEST_CASE("spacing law")
{
    const auto p = with(0.3, 0.7);
    const double mode = std::exp(0.3 - 0.49);
    CHECK(spacing_pdf(mode, p) > spacing_pdf(mode * 1.001, p));
    CHECK(spacing_pdf(mode, p) > spacing_pdf(mode * 0.999, p));

    boost::math::quadrature::exp_sinh<double> integrator;
    CHECK(integrator.integrate([&](double s) { return spacing_pdf(s, p); }) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(spacing_cdf(std::exp(0.3), p) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(spacing_pdf(0.0, p), thzcav::DomainError);
    CHECK_THROWS_AS(spacing_pdf(-1.0, p), thzcav::DomainError);
}

TEST_CASE("traffic flow")
{
    const TrafficParams p;
    CHECK(traffic_flow(0.0, p) == 0.0);
    CHECK(traffic_flow(20.0, p) == doctest::Approx(32.974425414002562937).epsilon(1e-14));
    CHECK(traffic_flow(20.0, with(0.0, 1e-8)) == doctest::Approx(20.0).epsilon(1e-12));

    SUBCASE("closed form equals v times the mean inverse spacing")
    {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> mu(-1.0, 1.0);
        std::uniform_real_distribution<double> sigma(0.05, 2.0);
        boost::math::quadrature::exp_sinh<double> integrator;
        for (int i = 0; i < 50; ++i) {
            const auto q = with(mu(rng), sigma(rng));
            const double v = 17.0;
            const double numeric = v * integrator.integrate([&](double s) { return spacing_pdf(s, q) / s; });
            CHECK(traffic_flow(v, q) == doctest::Approx(numeric).epsilon(1e-6));
        }
    }
}

TEST_CASE("handover cost")
{
    auto h = ho_cost(0.1, 0.0, 0.35);
    CHECK(h.demand == 0.0);
    CHECK(h.capped == 0.0);
    h = ho_cost(0.1, 20.0, 0.35);
    CHECK(h.demand == doctest::Approx(0.7));
    CHECK(h.capped == doctest::Approx(0.7));
    h = ho_cost(0.2, 20.0, 0.35);
    CHECK(h.demand == doctest::Approx(1.4));
    CHECK(h.capped == 1.0);
    CHECK_THROWS_AS(ho_cost(0.1, -1.0, 0.35), thzcav::DomainError);
}

TEST_CASE("HO-aware rate")
{
    CHECK(ho_aware_rate(2e9, 0.0) == 2e9);
    CHECK(ho_aware_rate(2e9, 1.0) == 0.0);
    CHECK(ho_aware_rate(2e9, 0.7) == doctest::Approx(6e8));
    double prev = 1e300;
    for (double mu = 0.01; mu < 0.5; mu += 0.01) {
        const double m = ho_aware_rate(1e9, ho_cost(mu, 20.0, 0.35).capped);
        CHECK(m <= prev);
        prev = m;
    }
    prev = 1e300;
    for (double v = 0.0; v < 60.0; v += 1.0) {
        const double m = ho_aware_rate(1e9, ho_cost(0.1, v, 0.35).capped);
        CHECK(m <= prev);
        prev = m;
    }
}

TEST_CASE("SINR threshold")
{
    CHECK(*gamma_threshold(0.0, 3e9, 0.4) == 0.0);
    CHECK(*gamma_threshold(3e9 * 0.6, 3e9, 0.4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*gamma_threshold(1e9, 3e9, 0.0) == doctest::Approx(0.25992104989487316477).epsilon(1e-15));
    CHECK_FALSE(gamma_threshold(1e9, 3e9, 1.0).has_value());

    double prev = 0.0;
    for (double h = 0.0; h < 0.99; h += 0.01) {
        const double g = *gamma_threshold(1e9, 3e9, h);
        CHECK(g >= prev);
        prev = g;
    }
    prev = -1.0;
    for (double r = 0.0; r < 5e9; r += 1e8) {
        const double g = *gamma_threshold(r, 3e9, 0.3);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("collision-avoidance speed")
{
    TrafficParams p;
    // exp(sqrt(2) erfinv(-0.96)) / 5e-3, mpmath
    CHECK(v_safe(p) == doctest::Approx(25.650638290222188879).epsilon(1e-13));
    p.crash_level = 0.5;
    CHECK(v_safe(p) == doctest::Approx(1.0 / 5e-3).epsilon(1e-14));
    p.crash_level = 1e-12;
    CHECK(v_safe(p) < 1.0);

    SUBCASE("chance constraint holds empirically")
    {
        const TrafficParams q;
        const double bound = v_safe(q) * q.decision_time;
        std::mt19937_64 rng(32);
        std::lognormal_distribution<double> spacing(q.log_mean, q.log_scatter);
        constexpr int n = 1'000'000;
        int below = 0;
        for (int i = 0; i < n; ++i)
            below += spacing(rng) <= bound;
        const double frac = static_cast<double>(below) / n;
        CHECK(std::fabs(frac - q.crash_level) <= 3.0 * std::sqrt(q.crash_level * (1 - q.crash_level) / n));
    }
}

TEST_CASE("minimum-flow speed")
{
    TrafficParams p;
    CHECK(v_flow(p) == doctest::Approx(6.065306597126334236).epsilon(1e-14));
    CHECK(traffic_flow(v_flow(p), p) == doctest::Approx(p.min_flow).epsilon(1e-12));
    p.min_flow = 0.0;
    CHECK(v_flow(p) == 0.0);
}

TEST_CASE("traffic validation")
{
    TrafficParams p;
    CHECK_NOTHROW(p.validate());
    p.crash_level = 1.0;
    CHECK_THROWS_AS(p.validate(), thzcav::ValidationError);
    p = {};
    p.log_scatter = 0.0;
    CHECK_THROWS_AS(p.validate(), thzcav::ValidationError);
}
