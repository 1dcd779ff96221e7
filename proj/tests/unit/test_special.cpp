#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "thzcav/errors.hpp"
#include "thzcav/special.hpp"

using namespace thzcav::special;

TEST_CASE("log_gamma at integer and half-integer points")
{
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), thzcav::DomainError);
}

TEST_CASE("reg_inc_beta closed forms")
{
    CHECK(reg_inc_beta(0.3, 1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(reg_inc_beta(0.75, 1.0, 2.0) == doctest::Approx(0.9375).epsilon(1e-14));
    CHECK(reg_inc_beta(0.5, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(reg_inc_beta(0.0, 2.0, 3.0) == 0.0);
    CHECK(reg_inc_beta(1.0, 2.0, 3.0) == 1.0);
    // mpmath betainc(2, 5, 0, 0.123, regularized=True)
    CHECK(reg_inc_beta(0.123, 2.0, 5.0) == doctest::Approx(0.162141859610726445).epsilon(1e-14));
}

TEST_CASE("reg_inc_beta matches Boost over a parameter sweep")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> shape(0.5, 120.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = shape(rng);
        const double b = shape(rng);
        const double x = unit(rng);
        const double expected = boost::math::ibeta(a, b, x);
        CHECK(std::fabs(reg_inc_beta(x, a, b) - expected) <= 1e-12 + 1e-10 * expected);
    }
}

TEST_CASE("inv_reg_inc_beta boundaries, symmetry and round trip")
{
    CHECK(inv_reg_inc_beta(0.0, 2.0, 5.0) == 0.0);
    CHECK(inv_reg_inc_beta(1.0, 2.0, 5.0) == 1.0);
    CHECK(inv_reg_inc_beta(0.5, 3.0, 3.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(inv_reg_inc_beta(reg_inc_beta(0.123, 2.0, 5.0), 2.0, 5.0) - 0.123) <= 1e-10);
}

TEST_CASE("inv_reg_inc_beta matches Boost")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> shape(0.5, 400.0);
    std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
    for (int i = 0; i < 2000; ++i) {
        const double a = shape(rng);
        const double b = shape(rng);
        const double u = unit(rng);
        const double x = inv_reg_inc_beta(u, a, b);
        CHECK(x == doctest::Approx(boost::math::ibeta_inv(a, b, u)).epsilon(1e-9));
    }
}

TEST_CASE("reg_lower_gamma and its inverse match Boost")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> shape(0.5, 200.0);
    std::uniform_real_distribution<double> unit(1e-9, 1.0 - 1e-9);
    for (int i = 0; i < 2000; ++i) {
        const double a = shape(rng);
        const double u = unit(rng);
        const double x = boost::math::gamma_p_inv(a, u);
        CHECK(reg_lower_gamma(a, x) == doctest::Approx(u).epsilon(1e-11));
        CHECK(inv_reg_lower_gamma(u, a) == doctest::Approx(x).epsilon(1e-9));
    }
    CHECK(reg_lower_gamma(2.0, 0.0) == 0.0);
    CHECK(std::isinf(inv_reg_lower_gamma(1.0, 2.0)));
}

TEST_CASE("inv_erf")
{
    CHECK(inv_erf(0.0) == 0.0);
    CHECK(inv_erf(std::erf(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    // 20-digit bisection on mpmath erf
    CHECK(inv_erf(-0.96) == doctest::Approx(-1.4522197815622465907).epsilon(1e-14));
    CHECK_THROWS_AS(inv_erf(1.0), thzcav::DomainError);
    CHECK_THROWS_AS(inv_erf(-1.0), thzcav::DomainError);

    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> unit(-1.0 + 1e-12, 1.0 - 1e-12);
    for (int i = 0; i < 5000; ++i) {
        const double y = unit(rng);
        CHECK(inv_erf(y) == doctest::Approx(boost::math::erf_inv(y)).epsilon(1e-13));
        CHECK(inv_erf(-y) == -inv_erf(y));
    }
}
