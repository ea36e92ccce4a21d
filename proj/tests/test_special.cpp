#include <doctest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <utility>

#include "evtail/errors.hpp"
#include "evtail/special_functions.hpp"

TEST_SUITE("special") {

TEST_CASE("normal cdf against high-precision values") {
    const std::pair<double, double> cases[] = {
        {-8.0, 6.2209605742717839e-16},
        {-3.5, 0.00023262907903552504},
        {-1.96, 0.024997895148220435},
        {-1.0, 0.15865525393145705},
        {-0.25, 0.4012936743170763},
        {0.0, 0.5},
        {0.3, 0.61791142218895267},
        {1.0, 0.84134474606854293},
        {1.644853626951, 0.94999999999995122},
        {2.5, 0.99379033467422384},
        {5.0, 0.99999971334842808},
        {7.5, 0.99999999999996814},
    };
    for (const auto& [x, want] : cases) {
        CAPTURE(x);
        CHECK(evt::normal_cdf(x) == doctest::Approx(want).epsilon(1e-14));
    }
    CHECK(evt::normal_cdf(-40.0) == 0.0);
    CHECK(evt::normal_cdf(40.0) == 1.0);
}

TEST_CASE("upper incomplete gamma against high-precision values") {
    struct Case {
        double a, x, q;
    };
    const Case cases[] = {
        {0.5, 0.1, 0.65472084601857705},  {0.5, 2.25, 0.033894853524689274},
        {1.0, 3.0, 0.049787068367863944}, {10.0, 5.0, 0.96817194269379514},
        {10.0, 15.0, 0.069853660699409764}, {15.0, 31.41, 0.00041395243688510826},
        {2.5, 0.01, 0.99999701239846805}, {50.0, 60.0, 0.084406681093691829},
    };
    for (const auto& c : cases) {
        CAPTURE(c.a);
        CAPTURE(c.x);
        CHECK(evt::gamma_q(c.a, c.x) == doctest::Approx(c.q).epsilon(1e-12));
        CHECK(evt::gamma_p(c.a, c.x) + evt::gamma_q(c.a, c.x) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("incomplete gamma against Boost on a grid") {
    for (double a = 0.5; a <= 40.0; a += 0.5) {
        for (double x : {0.0, 0.01, 0.3, 1.0, 2.7, 7.0, 15.0, 33.0, 80.0}) {
            CAPTURE(a);
            CAPTURE(x);
            const double want_q = boost::math::gamma_q(a, x);
            const double want_p = boost::math::gamma_p(a, x);
            if (want_q > 1e-280)
                CHECK(evt::gamma_q(a, x) == doctest::Approx(want_q).epsilon(1e-11));
            CHECK(evt::gamma_p(a, x) == doctest::Approx(want_p).epsilon(1e-11));
        }
    }
}

TEST_CASE("normal cdf against Boost erfc") {
    for (double x = -12.0; x <= 8.0; x += 0.137) {
        CAPTURE(x);
        CHECK(evt::normal_cdf(x) ==
              doctest::Approx(0.5 * boost::math::erfc(-x / std::sqrt(2.0))).epsilon(1e-14));
    }
}

TEST_CASE("chi-square survival") {
    CHECK(evt::chi_square_sf(0.0, 3.0) == 1.0);
    CHECK(evt::chi_square_sf(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(evt::chi_square_sf(31.410432844230925, 20.0) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK_THROWS_AS(evt::gamma_q(0.0, 1.0), evt::DomainError);
    CHECK_THROWS_AS(evt::gamma_q(1.0, -1.0), evt::DomainError);
}

}
