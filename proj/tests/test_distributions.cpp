#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "evtail/distributions.hpp"
#include "evtail/errors.hpp"

using evt::InnovationSpec;

namespace {

double ks_distance(std::vector<double> xs, const InnovationSpec& spec) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = evt::cdf_fn(spec, xs[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i + 1) / n),
                      std::abs(f - static_cast<double>(i) / n)});
    }
    return d;
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("quantiles at hand-solved points") {
    const auto a = InnovationSpec::two_sided(0.5, 0.5);
    const auto b = InnovationSpec::shifted(0.3, 0.5);
    CHECK(evt::quantile_fn(a, 0.875) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(evt::quantile_fn(a, 0.5) == -1.0);
    CHECK(evt::quantile_fn(b, 0.75) == doctest::Approx(0.23114441334491628).epsilon(1e-14));
    CHECK(evt::quantile_fn(a, 0.999) == doctest::Approx(22.360679774997898).epsilon(1e-14));
    CHECK(evt::quantile_fn(b, 0.9999) == doctest::Approx(11.873332935452236).epsilon(1e-13));
    CHECK(evt::quantile_fn(InnovationSpec::two_sided(0.5, 0.3), 0.1) ==
          doctest::Approx(-2.6457513110645903).epsilon(1e-14));
}

TEST_CASE("quantile outside (0, 1) is a domain error") {
    const auto a = InnovationSpec::two_sided(0.5);
    CHECK_THROWS_AS(evt::quantile_fn(a, 0.0), evt::DomainError);
    CHECK_THROWS_AS(evt::quantile_fn(a, 1.0), evt::DomainError);
    CHECK_THROWS_AS(evt::quantile_fn(a, std::nan("")), evt::DomainError);
}

TEST_CASE("survival function") {
    const auto a = InnovationSpec::two_sided(0.5, 0.5);
    const auto b = InnovationSpec::shifted(0.3, 0.5);
    CHECK(evt::survival_fn(a, 2.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(evt::survival_fn(b, 0.0) == 0.5);
    CHECK(evt::survival_fn(a, -2.0) == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(evt::survival_fn(a, 0.5) == 0.5);  // inside the gap
    CHECK(evt::survival_fn(a, -1e300) == 1.0);
    CHECK(evt::survival_fn(b, 2.5) == doctest::Approx(0.0076808601283772527).epsilon(1e-13));
}

TEST_CASE("survival and cdf add to one") {
    const auto b = InnovationSpec::shifted(0.3, 0.7);
    for (double x : {-50.0, -1.0, -0.2, 0.0, 0.4, 3.0, 1e4})
        CHECK(evt::survival_fn(b, x) + evt::cdf_fn(b, x) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(InnovationSpec::two_sided(0.0).validate(), evt::ConfigError);
    CHECK_THROWS_AS(InnovationSpec::two_sided(0.5, 0.0).validate(), evt::ConfigError);
    CHECK_THROWS_AS(InnovationSpec::shifted(0.5, 1.5).validate(), evt::ConfigError);
    CHECK_NOTHROW(InnovationSpec::shifted(0.5, 1.0).validate());
}

TEST_CASE("one-sided law with p = 1 stays above its lower edge") {
    const auto s = InnovationSpec::shifted(0.4, 1.0);
    CHECK(s.lower_edge() == 0.0);
    evt::RngState rng(5);
    for (double v : evt::sample(s, rng, 10000)) REQUIRE(v >= 0.0);
}

TEST_CASE("sampling matches the law") {
    const auto a = InnovationSpec::two_sided(0.5, 0.5);
    evt::RngState rng(11);
    const auto xs = evt::sample(a, rng, 1000000);
    const double above2 =
        static_cast<double>(std::count_if(xs.begin(), xs.end(), [](double v) { return v > 2.0; }));
    const double positive =
        static_cast<double>(std::count_if(xs.begin(), xs.end(), [](double v) { return v > 0.0; }));
    CHECK(above2 / 1e6 == doctest::Approx(0.125).epsilon(0.001 / 0.125));
    CHECK(positive / 1e6 == doctest::Approx(0.5).epsilon(0.002 / 0.5));
}

TEST_CASE("Kolmogorov-Smirnov distance of 1e5 draws is below 0.01") {
    for (const auto& spec : {InnovationSpec::two_sided(0.5), InnovationSpec::shifted(0.3)}) {
        evt::RngState rng(2024);
        CHECK(ks_distance(evt::sample(spec, rng, 100000), spec) < 0.01);
    }
}

TEST_CASE("same seed, same draws; one uniform per draw") {
    const auto b = InnovationSpec::shifted(0.3);
    evt::RngState r1(8), r2(8);
    CHECK(evt::sample(b, r1, 1000) == evt::sample(b, r2, 1000));

    evt::RngState r3(8), r4(8);
    (void)evt::draw(b, r3);
    r4.uniform();
    CHECK(r3.next_u64() == r4.next_u64());
}

TEST_CASE("constant test hook consumes no randomness") {
    const auto c = InnovationSpec::constant_for_testing(1.5);
    evt::RngState r1(3), r2(3);
    CHECK(evt::draw(c, r1) == 1.5);
    CHECK(r1.next_u64() == r2.next_u64());
}

}
