#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "evtail.h"

namespace {

std::vector<double> simulate(const evt_model* m, std::size_t n, std::uint64_t seed) {
    evt_rng* rng = nullptr;
    REQUIRE(evt_rng_create(seed, &rng) == EVT_OK);
    std::vector<double> out(n);
    REQUIRE(evt_simulate_series(m, n, rng, out.data(), nullptr) == EVT_OK);
    evt_rng_destroy(rng);
    return out;
}

evt_model* model_b() {
    evt_innovation inn{EVT_SHIFTED_TWO_SIDED_PARETO, 0.3, 0.5};
    evt_model* m = nullptr;
    REQUIRE(evt_model_linear_ar1(0.8, &inn, 10000, &m) == EVT_OK);
    return m;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status names and version") {
    CHECK(std::string(evt_status_name(EVT_OK)) == "ok");
    CHECK(std::strlen(evt_version()) > 0);
    for (int s = EVT_OK; s <= EVT_ERR_INTERNAL; ++s)
        CHECK(std::strlen(evt_status_name(static_cast<evt_status>(s))) > 0);
}

TEST_CASE("random streams") {
    evt_rng* rng = nullptr;
    REQUIRE(evt_rng_create(20240601, &rng) == EVT_OK);
    std::uint64_t v = 0;
    REQUIRE(evt_rng_next_u64(rng, &v) == EVT_OK);
    CHECK(v == 0x59761096949c683dULL);
    REQUIRE(evt_rng_next_u64(rng, &v) == EVT_OK);
    CHECK(v == 0x7e436068556fab29ULL);
    evt_rng_destroy(rng);

    CHECK(evt_substream_seed(20240601, 0) == 0xf1d16dfec1f753bfULL);
    CHECK(evt_substream_seed(20240601, 12345) == 0x54d80940f0aa3e20ULL);

    evt_rng* master = nullptr;
    evt_rng* sub = nullptr;
    evt_rng* direct = nullptr;
    REQUIRE(evt_rng_create(0, &master) == EVT_OK);
    REQUIRE(evt_rng_substream(master, 2, &sub) == EVT_OK);
    REQUIRE(evt_rng_create(evt_substream_seed(0, 2), &direct) == EVT_OK);
    double a = 0, b = 0;
    evt_rng_uniform(sub, &a);
    evt_rng_uniform(direct, &b);
    CHECK(a == b);
    CHECK(a > 0.0);
    CHECK(a < 1.0);
    evt_rng_destroy(master);
    evt_rng_destroy(sub);
    evt_rng_destroy(direct);
    evt_rng_destroy(nullptr);
}

TEST_CASE("null arguments are rejected with a message") {
    CHECK(evt_rng_create(1, nullptr) == EVT_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(evt_last_error()) > 0);
    double out = 0;
    CHECK(evt_hill(nullptr, 10, 2, 0, &out) == EVT_ERR_INVALID_ARGUMENT);
    const double x[3] = {1, 2, 3};
    CHECK(evt_hill(x, 3, 1, 0, nullptr) == EVT_ERR_INVALID_ARGUMENT);
    CHECK(evt_extremal_index(nullptr, nullptr) == EVT_ERR_INVALID_ARGUMENT);
    CHECK(evt_simulate_series(nullptr, 5, nullptr, nullptr, nullptr) == EVT_ERR_INVALID_ARGUMENT);
    CHECK(evt_model_from_json(nullptr, nullptr) == EVT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("errors map to status codes") {
    evt_model* m = nullptr;
    CHECK(evt_model_from_json(R"({"type":"linear-ar1","phi1":0.8})", &m) == EVT_ERR_CONFIG);
    CHECK(m == nullptr);
    CHECK(std::string(evt_last_error()).find("innovations") != std::string::npos);
    CHECK(evt_model_from_json("{oops", &m) == EVT_ERR_CONFIG);

    double out = 0;
    CHECK(evt_tail_ratio_ar1(1.5, 0.5, 0.5, &out) == EVT_ERR_DOMAIN);
    const std::vector<double> flat(20, 1.0);
    CHECK(evt_fit_ar1(flat.data(), flat.size(), 1, &out) == EVT_ERR_DEGENERATE);
    CHECK(evt_chi_square_sf(1.0, -2.0, &out) == EVT_ERR_DOMAIN);

    evt_driver* d = nullptr;
    REQUIRE(evt_driver_two_point(2.0, 0.5, 1.0 / 3.0, &d) == EVT_OK);
    evt_walks* w = nullptr;
    REQUIRE(evt_walks_simulate(d, 1.0, 10, 500, 1, 1, &w) == EVT_OK);
    evt_estimate est{};
    CHECK(evt_hill_avar_sre(w, 1e-3, &est, nullptr) == EVT_ERR_HORIZON);
    evt_walks_destroy(w);
    evt_driver_destroy(d);

    evt_driver* flatd = nullptr;
    REQUIRE(evt_driver_from_json(R"({"law":"two-point","a_up":0.9,"a_down":0.5,"p_up":0.5})", &flatd) ==
            EVT_OK);
    double kappa = 0;
    CHECK(evt_solve_kappa(flatd, &kappa) == EVT_ERR_NO_ROOT);
    evt_driver_destroy(flatd);
}

TEST_CASE("simulation failure reports the step") {
    evt_innovation inn{EVT_TWO_SIDED_PARETO, 0.5, 0.5};
    evt_model* m = nullptr;
    REQUIRE(evt_model_nonlinear_ar1(1e200, 0.6, &inn, 0, &m) == EVT_OK);
    evt_rng* rng = nullptr;
    evt_rng_create(1, &rng);
    std::vector<double> out(100);
    std::size_t step = 0;
    CHECK(evt_simulate_series(m, out.size(), rng, out.data(), &step) == EVT_ERR_SIMULATION);
    CHECK(step >= 1);
    CHECK(step <= 5);
    evt_rng_destroy(rng);
    evt_model_destroy(m);
}

TEST_CASE("innovations") {
    evt_innovation inn{};
    REQUIRE(evt_innovation_from_json(R"({"kind":"two-sided-pareto","gamma":0.5})", &inn) == EVT_OK);
    CHECK(inn.kind == EVT_TWO_SIDED_PARETO);
    CHECK(inn.p == 0.5);
    double q = 0, s = 0;
    REQUIRE(evt_innovation_quantile(&inn, 0.999, &q) == EVT_OK);
    CHECK(q == doctest::Approx(std::sqrt(500.0)).epsilon(1e-12));
    REQUIRE(evt_innovation_survival(&inn, q, &s) == EVT_OK);
    CHECK(s == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(evt_innovation_quantile(&inn, 1.0, &q) == EVT_ERR_DOMAIN);
    evt_innovation bad{static_cast<evt_innovation_kind>(9), 0.5, 0.5};
    CHECK(evt_innovation_quantile(&bad, 0.5, &q) == EVT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("theory values") {
    double v = 0;
    REQUIRE(evt_rmse_ratio_ar1(0.8, 0.3, &v) == EVT_OK);
    CHECK(v == doctest::Approx(1.0642904832033604).epsilon(1e-12));
    REQUIRE(evt_hill_avar_ar1(0.8, 0.3, &v) == EVT_OK);
    CHECK(v == doctest::Approx(0.25305232104545666).epsilon(1e-12));
    double d = 0, D = 0;
    REQUIRE(evt_second_order_constants_ar1(0.8, 0.3, 0.5, &d, &D) == EVT_OK);
    CHECK(d == doctest::Approx(0.9529231140146521).epsilon(1e-12));
    CHECK(D == doctest::Approx(-1.3446042520437858).epsilon(1e-12));

    std::size_t count = 0;
    REQUIRE(evt_ar1_coefficients(0.8, 0.3, 0.0, nullptr, 0, &count) == EVT_OK);
    CHECK(count > 10);
    std::vector<double> psi(count);
    REQUIRE(evt_ar1_coefficients(0.8, 0.3, 0.0, psi.data(), psi.size(), &count) == EVT_OK);
    CHECK(psi[0] == 1.0);
    CHECK(psi[2] == doctest::Approx(0.64));
    CHECK(evt_ar1_coefficients(0.8, 0.3, 0.0, psi.data(), 3, &count) == EVT_ERR_INVALID_ARGUMENT);
    double lin = 0;
    REQUIRE(evt_hill_avar_linear(psi.data(), psi.size(), 0.3, &lin) == EVT_OK);
    CHECK(lin == doctest::Approx(v).epsilon(1e-9));
}

TEST_CASE("estimators through the C interface") {
    evt_model* m = model_b();
    const auto x = simulate(m, 2000, 5);
    const auto x2 = simulate(m, 2000, 5);
    CHECK(x == x2);

    evt_quantile_estimate direct{}, model{};
    const auto opts = evt_estimator_options_default();
    REQUIRE(evt_weissman_direct(x.data(), x.size(), 100, 0.001, &opts, &direct) == EVT_OK);
    REQUIRE(evt_weissman_model_ar1(x.data(), x.size(), 100, 0.001, &opts, &model) == EVT_OK);
    CHECK(std::isnan(direct.phi_hat));
    CHECK(direct.k == 100);
    CHECK(model.phi_hat == doctest::Approx(0.8).epsilon(0.1));
    CHECK(direct.value > 0.0);
    CHECK(model.value > 0.0);
    double g = 0;
    REQUIRE(evt_hill(x.data(), x.size(), 100, 0, &g) == EVT_OK);
    CHECK(g == direct.gamma_hat);

    auto abs_opts = opts;
    abs_opts.absolute = 1;
    abs_opts.center = 0;
    REQUIRE(evt_weissman_model_ar1(x.data(), x.size(), 100, 0.001, &abs_opts, &model) == EVT_OK);
    CHECK((model.flags & EVT_FLAG_ABSOLUTE) != 0);
    CHECK((model.flags & EVT_FLAG_UNCENTERED) != 0);

    std::vector<double> res(x.size() - 1);
    REQUIRE(evt_residuals_ar1(x.data(), x.size(), 0.5, res.data()) == EVT_OK);
    CHECK(res[0] == x[1] - 0.5 * x[0]);
    CHECK(evt_weissman_direct(x.data(), x.size(), x.size(), 0.001, &opts, &direct) != EVT_OK);
    evt_model_destroy(m);
}

TEST_CASE("extremal quantities through the C interface") {
    evt_driver* d = nullptr;
    REQUIRE(evt_driver_two_point(2.0, 0.5, 1.0 / 3.0, &d) == EVT_OK);
    double kappa = 0;
    REQUIRE(evt_solve_kappa(d, &kappa) == EVT_OK);
    CHECK(kappa == doctest::Approx(1.0).epsilon(1e-10));
    evt_walks* w = nullptr;
    REQUIRE(evt_walks_simulate(d, kappa, 200, 20000, 3, 2, &w) == EVT_OK);
    evt_estimate th{};
    REQUIRE(evt_extremal_index(w, &th) == EVT_OK);
    CHECK(std::abs(th.value - 1.0 / 6.0) < 5 * th.stderr_value + 1e-3);

    evt_cluster_summary cs{};
    std::vector<double> tk(6), pk(5);
    REQUIRE(evt_cluster_sizes(w, 5, &cs, tk.data(), nullptr, pk.data(), nullptr) == EVT_OK);
    CHECK(cs.theta == th.value);
    CHECK(tk[0] == th.value);
    CHECK(evt_cluster_sizes(w, 0, &cs, nullptr, nullptr, nullptr, nullptr) == EVT_ERR_CONFIG);

    const double x[2] = {1.0, 1.0};
    evt_estimate all{}, some{};
    REQUIRE(evt_joint_exceedance(w, x, 2, EVT_JOINT_ALL, &all) == EVT_OK);
    REQUIRE(evt_joint_exceedance(w, x, 2, EVT_JOINT_SOME, &some) == EVT_OK);
    CHECK(all.value <= some.value);
    CHECK(evt_joint_exceedance(w, x, 2, static_cast<evt_joint_mode>(7), &all) ==
          EVT_ERR_INVALID_ARGUMENT);

    evt_estimate hv{};
    double bound = -1;
    REQUIRE(evt_hill_avar_sre(w, 1e-3, &hv, &bound) == EVT_OK);
    CHECK(std::abs(hv.value - 17.0) < 5 * hv.stderr_value);
    CHECK(bound > 0.0);
    evt_walks_destroy(w);
    evt_driver_destroy(d);
}

TEST_CASE("diagnostics through the C interface") {
    std::vector<double> x;
    for (int t = 1; t <= 200; ++t) x.push_back(std::sin(1.3 * t) + 0.5 * std::cos(0.7 * t * t) + 0.01 * t);
    evt_test_report r{};
    REQUIRE(evt_portmanteau_test(x.data(), x.size(), 20, &r) == EVT_OK);
    CHECK(r.statistic == doctest::Approx(897.48644191747212).epsilon(1e-12));
    CHECK(r.reject_at_5pct == 1);
    REQUIRE(evt_turning_point_test(x.data(), x.size(), &r) == EVT_OK);
    CHECK(r.statistic == 84.0);
    REQUIRE(evt_difference_sign_test(x.data(), x.size(), &r) == EVT_OK);
    CHECK(r.statistic == 97.0);
    double bw = 0, dens = 0;
    const double g = 0.0;
    REQUIRE(evt_kde(x.data(), x.size(), &g, 1, &dens, &bw) == EVT_OK);
    CHECK(dens == doctest::Approx(0.25547031752074439).epsilon(1e-12));
    CHECK(bw == doctest::Approx(0.36137817664208194).epsilon(1e-13));
}

TEST_CASE("experiments through the C interface") {
    evt_model* m = model_b();
    const std::size_t grid[3] = {20, 50, 100};
    evt_experiment_config cfg{500, 16, grid, 3, 0.001, 9, 2, evt_estimator_options_default()};
    evt_experiment* ex = nullptr;
    REQUIRE(evt_experiment_run(m, &cfg, 7.0, &ex) == EVT_OK);
    evt_error_stats st{};
    REQUIRE(evt_experiment_stats(ex, EVT_ESTIMATOR_MODEL, 1, &st) == EVT_OK);
    CHECK(st.completed + st.missing == 16);
    std::vector<double> est(16);
    REQUIRE(evt_experiment_estimates(ex, EVT_ESTIMATOR_MODEL, 1, est.data(), est.size()) == EVT_OK);
    double sq = 0;
    for (double e : est) sq += (e - 7.0) * (e - 7.0);
    CHECK(std::sqrt(sq / 16.0) == doctest::Approx(st.rmse).epsilon(1e-12));
    CHECK(evt_experiment_estimates(ex, EVT_ESTIMATOR_MODEL, 1, est.data(), 4) == EVT_ERR_INVALID_ARGUMENT);
    CHECK(evt_experiment_stats(ex, EVT_ESTIMATOR_DIRECT, 3, &st) == EVT_ERR_INVALID_ARGUMENT);
    std::size_t k_rmse = 0, k_l1 = 0;
    double r = 0, l = 0;
    REQUIRE(evt_experiment_argmin(ex, EVT_ESTIMATOR_DIRECT, &k_rmse, &r, &k_l1, &l) == EVT_OK);
    CHECK((k_rmse == 20 || k_rmse == 50 || k_rmse == 100));
    evt_experiment_destroy(ex);

    cfg.workers = 1;
    evt_experiment* ex1 = nullptr;
    REQUIRE(evt_experiment_run(m, &cfg, 7.0, &ex1) == EVT_OK);
    std::vector<double> est1(16);
    REQUIRE(evt_experiment_estimates(ex1, EVT_ESTIMATOR_MODEL, 1, est1.data(), est1.size()) == EVT_OK);
    CHECK(std::memcmp(est.data(), est1.data(), est.size() * sizeof(double)) == 0);
    evt_experiment_destroy(ex1);

    cfg.k_count = 0;
    CHECK(evt_experiment_run(m, &cfg, 7.0, &ex) == EVT_ERR_CONFIG);

    evt_power_result pr{};
    std::vector<double> by_lag(5);
    REQUIRE(evt_power_experiment(m, 300, 50, 4, 1, 5, &pr, by_lag.data()) == EVT_OK);
    CHECK(pr.replicates == 50);
    CHECK(pr.ljung_box_argmax >= 1);

    std::vector<double> xp(99), xc(99);
    double phi = 0;
    REQUIRE(evt_scatter(m, 100, 4, xp.data(), xc.data(), &phi) == EVT_OK);
    CHECK(xc[0] == xp[1]);

    evt_truth truth{};
    CHECK(evt_true_quantile(m, 0.001, 4, 1000, 1, 1, &truth) == EVT_ERR_CONFIG);
    double q = 0;
    const double vals[4] = {4, 1, 3, 2};
    REQUIRE(evt_empirical_quantile(vals, 4, 0.5, &q) == EVT_OK);
    CHECK(q == 2.0);
    evt_model_destroy(m);
}

}
