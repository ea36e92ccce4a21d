#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "evtail/errors.hpp"
#include "evtail/simulate.hpp"

using evt::InnovationSpec;
using evt::SeriesModel;
using evt::SREDriver;

TEST_SUITE("simulate") {

TEST_CASE("phi = 0 reproduces the innovations") {
    const auto spec = InnovationSpec::two_sided(0.5);
    const auto model = SeriesModel::linear_ar1(0.0, spec, 25);
    evt::RngState r1(17), r2(17);
    const auto xs = evt::simulate_series(model, 500, r1);
    const auto all = evt::sample(spec, r2, 525);
    CHECK(std::equal(xs.begin(), xs.end(), all.begin() + 25));
}

TEST_CASE("nonlinear model with delta = 0 is the linear model") {
    const auto spec = InnovationSpec::shifted(0.3);
    evt::RngState r1(4), r2(4);
    const auto lin = evt::simulate_series(SeriesModel::linear_ar1(0.8, spec), 2000, r1);
    const auto nl = evt::simulate_series(SeriesModel::nonlinear_ar1(0.8, 0.0, spec), 2000, r2);
    CHECK(lin == nl);
}

TEST_CASE("constant innovations converge to the fixed point") {
    const auto model = SeriesModel::linear_ar1(0.5, InnovationSpec::constant_for_testing(1.0), 100);
    evt::RngState rng(1);
    for (double x : evt::simulate_series(model, 10, rng)) CHECK(std::abs(x - 2.0) < 1e-12);
}

TEST_CASE("start-value influence decays like phi^burnin") {
    // From X_0 = 0 with constant innovations 1 the gap to the fixed point after
    // B steps is |phi|^B / (1 - phi).
    const double phi = 0.9;
    for (std::size_t burnin : {5u, 20u, 60u}) {
        const auto model =
            SeriesModel::linear_ar1(phi, InnovationSpec::constant_for_testing(1.0), burnin);
        evt::RngState rng(1);
        const double x = evt::simulate_series(model, 1, rng)[0];
        const double fixed = 1.0 / (1.0 - phi);
        CHECK(std::abs(x - fixed) <= std::pow(phi, burnin + 1) * fixed * (1 + 1e-9));
    }
}

TEST_CASE("nonlinear recursion by hand") {
    const double phi = 0.8, delta = 0.6;
    const auto model = SeriesModel::nonlinear_ar1(phi, delta, InnovationSpec::constant_for_testing(3.0), 0);
    evt::RngState rng(1);
    const auto xs = evt::simulate_series(model, 4, rng);
    double x = 0.0;
    for (double got : xs) {
        const double s = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
        x = phi * x + delta * s * std::log(std::max(std::abs(x), 1.0)) + 3.0;
        CHECK(got == doctest::Approx(x).epsilon(1e-15));
    }
}

TEST_CASE("invalid models are configuration errors") {
    const auto spec = InnovationSpec::two_sided(0.5);
    CHECK_THROWS_AS(SeriesModel::linear_ar1(1.0, spec).validate(), evt::ConfigError);
    CHECK_THROWS_AS(SeriesModel::linear_ar1(0.5, InnovationSpec::two_sided(-1.0)).validate(),
                    evt::ConfigError);
    CHECK_THROWS_AS(SREDriver::two_point(2.0, -0.5, 0.3).validate(), evt::ConfigError);
    CHECK_THROWS_AS(SREDriver::lognormal(0.0, 0.0).validate(), evt::ConfigError);
}

TEST_CASE("overflow is reported with its step") {
    // The nonlinear variant accepts any finite phi: 0, 1, 1e200 + 1, inf.
    const auto model =
        SeriesModel::nonlinear_ar1(1e200, 0.0, InnovationSpec::constant_for_testing(1.0), 0);
    evt::RngState rng(1);
    try {
        (void)evt::simulate_series(model, 10, rng);
        FAIL("expected a simulation error");
    } catch (const evt::SimulationError& e) {
        CHECK(e.step() == 3);
    }
}

TEST_CASE("Kesten exponent") {
    CHECK(evt::solve_kappa(SREDriver::two_point(2.0, 0.5, 1.0 / 3.0)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(evt::solve_kappa(SREDriver::lognormal(-0.5, 1.0)) == 1.0);
    CHECK_THROWS_AS(evt::solve_kappa(SREDriver::two_point(2.0, 0.5, 0.5)), evt::NoRootError);
    CHECK_THROWS_AS(evt::solve_kappa(SREDriver::two_point(0.9, 0.5, 0.5)), evt::NoRootError);

    const auto d = SREDriver::two_point(3.0, 0.4, 0.2);
    const double k = evt::solve_kappa(d);
    CHECK(std::abs(d.moment(k) - 1.0) <= 1e-10);
}

TEST_CASE("root finder on a generic convex moment map") {
    // m(s) = (e^{2s} + e^{-3s}) / 2 - small: m(0) = 1, m'(0) = -1/2.
    const auto m = [](double s) { return 0.5 * (std::exp(2.0 * s) + std::exp(-3.0 * s)); };
    const double root = evt::solve_moment_root(m);
    CHECK(std::abs(m(root) - 1.0) <= 1e-10);
    CHECK(root > 0.1);
}

TEST_CASE("walk ensemble of the two-point driver") {
    const auto d = SREDriver::two_point(2.0, 0.5, 1.0 / 3.0);
    const auto ens = evt::simulate_walks(d, 1.0, 1, 1000000, evt::RngState(21));
    double mean = 0.0, up = 0.0;
    for (std::size_t p = 0; p < ens.n_paths(); ++p) {
        mean += ens.path(p)[0];
        up += ens.path(p)[0] == 2.0;
    }
    CHECK(mean / 1e6 == doctest::Approx(1.0).epsilon(0.003));
    CHECK(up / 1e6 == doctest::Approx(1.0 / 3.0).epsilon(0.002 * 3));
}

TEST_CASE("walks reject drivers without negative drift") {
    CHECK_THROWS_AS(evt::simulate_walks(SREDriver::two_point(1.0, 1.0, 0.5), 1.0, 10, 10,
                                        evt::RngState(1)),
                    evt::ConfigError);
    CHECK_THROWS_AS(evt::simulate_walks(SREDriver::two_point(2.0, 0.5, 1.0 / 3.0), -1.0, 10, 10,
                                        evt::RngState(1)),
                    evt::ConfigError);
}

TEST_CASE("walks do not depend on the worker count") {
    const auto d = SREDriver::lognormal(-0.5, 1.0);
    const auto a = evt::simulate_walks(d, 1.0, 50, 2000, evt::RngState(3), 1);
    const auto b = evt::simulate_walks(d, 1.0, 50, 2000, evt::RngState(3), 7);
    for (std::size_t p = 0; p < 2000; ++p)
        REQUIRE(std::equal(a.path(p).begin(), a.path(p).end(), b.path(p).begin()));
}

TEST_CASE("SRE tail plateau x P{X > x}") {
    // Kesten: P{X > x} ~ c x^{-1} for the kappa = 1 driver with B = 1.
    const auto model = SeriesModel::sre(SREDriver::two_point(2.0, 0.5, 1.0 / 3.0), 1000);
    evt::RngState rng(77);
    const auto xs = evt::simulate_series(model, 4000000, rng);
    std::vector<double> level;
    for (double x : {100.0, 300.0, 1000.0}) {
        const double tail = static_cast<double>(
            std::count_if(xs.begin(), xs.end(), [x](double v) { return v > x; }));
        level.push_back(x * tail / static_cast<double>(xs.size()));
    }
    // The two-point law is lattice, so x P{X > x} oscillates within a band
    // instead of converging; require the same order of magnitude.
    for (double v : level) CHECK(v > 0.0);
    CHECK(*std::max_element(level.begin(), level.end()) <
          3.0 * *std::min_element(level.begin(), level.end()));
}

TEST_CASE("stationarity surrogate: disjoint windows agree") {
    const auto model = SeriesModel::linear_ar1(0.8, InnovationSpec::shifted(0.3));
    evt::RngState rng(5);
    const auto xs = evt::simulate_series(model, 400000, rng);
    std::vector<double> a(xs.begin(), xs.begin() + 200000), b(xs.begin() + 200000, xs.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (double q : {0.5, 0.9, 0.99})
        CHECK(a[static_cast<std::size_t>(q * 2e5)] ==
              doctest::Approx(b[static_cast<std::size_t>(q * 2e5)]).epsilon(0.05));
}

}
