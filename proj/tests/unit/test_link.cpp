#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "thzcav/errors.hpp"
#include "thzcav/link.hpp"

using namespace thzcav::link;

namespace {

CorridorScenario no_absorption()
{
    auto s = reference_scenario();
    s.absorption = 0.0;
    return s;
}

std::vector<double> sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("TBS lattice")
{
    CHECK(tbs_positions(0.5, 8.0) == std::vector<double>{1.0, 3.0, 5.0, 7.0});
    CHECK(tbs_positions(1.0, 3.0) == std::vector<double>{0.5, 1.5, 2.5});
    CHECK_THROWS_AS(tbs_positions(0.001, 500.0), thzcav::DomainError);
    CHECK(tbs_positions(0.1, 2000.0).size() == 200);
}

TEST_CASE("distance")
{
    // sqrt(89)
    CHECK(distance(0.0, 8.0, 5.0) == doctest::Approx(9.4339811320566038113).epsilon(1e-15));
    CHECK(distance(0.0, 0.0, 0.0) == 0.0);
    CHECK(distance(3.0, 4.0, 0.0) == 5.0);
    CHECK(distance(-3.0, 4.0, 0.0) == 5.0);
}

TEST_CASE("link budget constants")
{
    const auto s = no_absorption();
    // mpmath, 25 dB gains and CODATA c
    CHECK(s.zeta() == doctest::Approx(8.1240158458959081407e-5).epsilon(1e-13));
    const double d = std::sqrt(89.0);
    const double a = mean_signal_power(s, d);
    CHECK(a == doctest::Approx(1.8256215384035748631e-7).epsilon(1e-13));
    CHECK(interference_coefficient(s, d) == doctest::Approx(1.2596788614984666555e-9).epsilon(1e-13));
    CHECK(db_to_linear(25.0) == doctest::Approx(316.227766016838).epsilon(1e-14));
}

TEST_CASE("mean signal power")
{
    auto s = no_absorption();
    CHECK(mean_signal_power(s, 20.0) / mean_signal_power(s, 10.0) == doctest::Approx(0.25).epsilon(1e-15));
    auto doubled = s;
    doubled.gain_tx *= 2.0;
    CHECK(mean_signal_power(doubled, 10.0) == doctest::Approx(2.0 * mean_signal_power(s, 10.0)).epsilon(1e-15));

    s.absorption = 0.01;
    auto more = s;
    more.absorption = 0.02;
    auto higher = s;
    higher.carrier_frequency *= 1.1;
    for (double d = 1.0; d < 500.0; d *= 1.3) {
        CHECK(mean_signal_power(s, d * 1.01) < mean_signal_power(s, d));
        CHECK(mean_signal_power(more, d) < mean_signal_power(s, d));
        CHECK(mean_signal_power(higher, d) < mean_signal_power(s, d));
    }
}

TEST_CASE("interference coefficient")
{
    auto s = no_absorption();
    CHECK(interference_coefficient(s, 12.0) / mean_signal_power(s, 12.0) == doctest::Approx(s.alignment).epsilon(1e-15));
    s.alignment = 0.0;
    CHECK(interference_coefficient(s, 12.0) == 0.0);

    auto lossy = reference_scenario();
    CHECK(interference_coefficient(lossy, 40.0) ==
          doctest::Approx(lossy.alignment * lossy.tx_power * lossy.zeta() / 1600.0).epsilon(1e-15));
    lossy.interferer_beer_lambert = true;
    CHECK(interference_coefficient(lossy, 40.0) ==
          doctest::Approx(lossy.alignment * lossy.tx_power * lossy.zeta() / 1600.0 * std::exp(-lossy.absorption * 40.0)).epsilon(1e-14));
}

TEST_CASE("absorption noise and power split")
{
    auto s = no_absorption();
    CHECK(absorption_noise_coefficient(s, 10.0) == 0.0);

    s.absorption = 1e6;
    const double total = s.tx_power * s.zeta() / 100.0;
    CHECK(absorption_noise_coefficient(s, 10.0) == doctest::Approx(total).epsilon(1e-15));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.5, 800.0);
    std::uniform_real_distribution<double> kabs(0.0, 0.2);
    s.absorption = 0.01;
    CHECK(mean_signal_power(s, 10.0) + absorption_noise_coefficient(s, 10.0) ==
          doctest::Approx(total).epsilon(1e-15));
    for (int i = 0; i < 500; ++i) {
        s.absorption = kabs(rng);
        const double d = dist(rng);
        CHECK(mean_signal_power(s, d) + absorption_noise_coefficient(s, d) ==
              doctest::Approx(s.tx_power * s.zeta() / (d * d)).epsilon(1e-14));
    }
}

TEST_CASE("link geometry")
{
    auto s = reference_scenario();
    SUBCASE("under a TBS")
    {
        const auto g = link_geometry(s, 5.0);
        CHECK(g.serving_index == 0);
        CHECK(g.serving_distance == doctest::Approx(std::sqrt(89.0)).epsilon(1e-15));
        CHECK(g.interferer_distances.size() == 199);
    }
    SUBCASE("cell edge")
    {
        const auto g = link_geometry(s, 1000.0);
        const double half = 1.0 / (2.0 * s.density);
        CHECK(g.serving_distance == doctest::Approx(distance(half, 8.0, 5.0)).epsilon(1e-15));
        const auto d = sorted(g.interferer_distances);
        CHECK(d[0] == doctest::Approx(distance(half, 8.0, 5.0)).epsilon(1e-12));
        CHECK(d[1] == doctest::Approx(distance(3 * half, 8.0, 5.0)).epsilon(1e-12));
        CHECK(d[2] == doctest::Approx(distance(3 * half, 8.0, 5.0)).epsilon(1e-12));
        CHECK(d[3] == doctest::Approx(distance(5 * half, 8.0, 5.0)).epsilon(1e-12));
        CHECK(d[4] == doctest::Approx(distance(5 * half, 8.0, 5.0)).epsilon(1e-12));
        // tie resolves to the lower index
        CHECK(g.serving_index == 99);
    }
    SUBCASE("single TBS")
    {
        s.length = 10.0;
        s.density = 0.1;
        CHECK(link_geometry(s, 3.0).interferer_distances.empty());
    }
    SUBCASE("mirror symmetry")
    {
        for (double x : {0.0, 13.0, 47.5, 333.3, 999.0}) {
            const auto a = sorted(link_geometry(s, x).interferer_distances);
            const auto b = sorted(link_geometry(s, s.length - x).interferer_distances);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
        }
    }
    SUBCASE("outside the corridor")
    {
        CHECK_THROWS_AS(link_geometry(s, -1.0), thzcav::DomainError);
        CHECK_THROWS_AS(link_geometry(s, s.length + 1.0), thzcav::DomainError);
    }
    SUBCASE("worst-case position")
    {
        CHECK(worst_case_position(s) == doctest::Approx(1000.0));
        s.density = 0.5;
        s.length = 8.0;
        CHECK(worst_case_position(s) == doctest::Approx(4.0));
        s.length = 6.0;  // three TBS at 1, 3, 5
        CHECK(worst_case_position(s) == doctest::Approx(4.0));
    }
}

TEST_CASE("Shannon rate")
{
    auto s = reference_scenario();
    CHECK(shannon_rate(s, 0.0) == 0.0);
    CHECK(shannon_rate(s, 1.0) == doctest::Approx(3e9));
    s.bandwidth = 1.0;
    CHECK(shannon_rate(s, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("scenario validation")
{
    auto s = reference_scenario();
    CHECK_NOTHROW(s.validate());
    auto bad = s;
    bad.bandwidth = -3e9;
    CHECK_THROWS_AS(bad.validate(), thzcav::ValidationError);
    bad = s;
    bad.alignment = 1.5;
    CHECK_THROWS_AS(bad.validate(), thzcav::ValidationError);
    bad = s;
    bad.m_interf = {2.0, 3.0};
    CHECK_THROWS_AS(bad.validate(), thzcav::ValidationError);
    bad = s;
    bad.m_serving = 0.4;
    CHECK_THROWS_AS(bad.validate(), thzcav::ValidationError);
    s.m_interf.assign(200, 1.5);
    CHECK_NOTHROW(s.validate());
    CHECK(s.interferer_shape(17) == 1.5);
}
