#include "evtail.h"

#include <cmath>
#include <limits>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "evtail/diagnostics.hpp"
#include "evtail/distributions.hpp"
#include "evtail/errors.hpp"
#include "evtail/estimators.hpp"
#include "evtail/experiments.hpp"
#include "evtail/extremal.hpp"
#include "evtail/json_io.hpp"
#include "evtail/rng.hpp"
#include "evtail/simulate.hpp"
#include "evtail/special_functions.hpp"
#include "evtail/theory.hpp"

struct evt_rng {
    evt::RngState state;
};

struct evt_model {
    evt::SeriesModel model;
};

struct evt_driver {
    evt::SREDriver driver;
};

struct evt_walks {
    evt::WalkEnsemble ensemble;
};

struct evt_experiment {
    evt::ExperimentRun run;
};

namespace {

thread_local std::string g_last_error;

struct ArgumentError {
    std::string message;
};

evt_status fail(evt_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <class F>
evt_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return EVT_OK;
    } catch (const ArgumentError& e) {
        return fail(EVT_ERR_INVALID_ARGUMENT, e.message);
    } catch (const evt::SimulationError& e) {
        return fail(EVT_ERR_SIMULATION, e.what());
    } catch (const evt::ConfigError& e) {
        return fail(EVT_ERR_CONFIG, e.what());
    } catch (const evt::DomainError& e) {
        return fail(EVT_ERR_DOMAIN, e.what());
    } catch (const evt::DegenerateInputError& e) {
        return fail(EVT_ERR_DEGENERATE, e.what());
    } catch (const evt::NoRootError& e) {
        return fail(EVT_ERR_NO_ROOT, e.what());
    } catch (const evt::HorizonError& e) {
        return fail(EVT_ERR_HORIZON, e.what());
    } catch (const evt::Error& e) {
        return fail(EVT_ERR_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(EVT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(EVT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(EVT_ERR_INTERNAL, "unknown error");
    }
}

void need(const void* p, const char* name) {
    if (p == nullptr) throw ArgumentError{std::string(name) + " must not be null"};
}

std::span<const double> data_span(const double* data, std::size_t n) {
    if (n > 0) need(data, "data");
    return {data, n};
}

evt::InnovationSpec to_core(const evt_innovation& in) {
    evt::InnovationSpec spec;
    switch (in.kind) {
        case EVT_TWO_SIDED_PARETO:
            spec = evt::InnovationSpec::two_sided(in.gamma, in.p);
            break;
        case EVT_SHIFTED_TWO_SIDED_PARETO:
            spec = evt::InnovationSpec::shifted(in.gamma, in.p);
            break;
        default:
            throw ArgumentError{"unknown innovation kind"};
    }
    spec.validate();
    return spec;
}

evt_innovation from_core(const evt::InnovationSpec& spec) {
    evt_innovation out{};
    out.kind = spec.kind == evt::InnovationKind::ShiftedTwoSidedPareto
                   ? EVT_SHIFTED_TWO_SIDED_PARETO
                   : EVT_TWO_SIDED_PARETO;
    out.gamma = spec.gamma;
    out.p = spec.p;
    return out;
}

evt::CoefficientSequence sequence(const double* psi, std::size_t count) {
    if (count == 0) throw ArgumentError{"coefficient sequence is empty"};
    need(psi, "psi");
    return evt::CoefficientSequence::one_sided(std::vector<double>(psi, psi + count));
}

unsigned flag_bits(const std::vector<std::string>& flags) {
    unsigned bits = 0;
    for (const auto& f : flags) {
        if (f == "phi_clamped") bits |= EVT_FLAG_PHI_CLAMPED;
        else if (f == "hill_zero") bits |= EVT_FLAG_HILL_ZERO;
        else if (f == "absolute_values" || f == "absolute_residuals") bits |= EVT_FLAG_ABSOLUTE;
        else if (f == "uncentered") bits |= EVT_FLAG_UNCENTERED;
    }
    return bits;
}

void write_estimate(const evt::QuantileEstimate& e, evt_quantile_estimate* out) {
    out->value = e.value;
    out->gamma_hat = e.gamma_hat;
    out->phi_hat = e.phi_hat ? *e.phi_hat : std::numeric_limits<double>::quiet_NaN();
    out->k = e.k;
    out->t = e.t;
    out->flags = flag_bits(e.flags);
}

evt_estimator_options options_or_default(const evt_estimator_options* options) {
    return options ? *options : evt_estimator_options_default();
}

evt::ModelOptions model_options(const evt_estimator_options& o) {
    evt::ModelOptions m;
    m.center = o.center != 0;
    m.absolute_residuals = o.absolute != 0;
    if (o.phi_floor > 0.0) m.phi_floor = o.phi_floor;
    return m;
}

void write_report(const evt::TestReport& r, evt_test_report* out) {
    out->statistic = r.statistic;
    out->z_or_q = r.z_or_q;
    out->p_value = r.p_value;
    out->reject_at_5pct = r.reject_at_5pct ? 1 : 0;
}

std::size_t estimator_index(const evt_experiment* ex, evt_estimator_kind kind) {
    const char* name = nullptr;
    if (kind == EVT_ESTIMATOR_DIRECT) name = "direct";
    else if (kind == EVT_ESTIMATOR_MODEL) name = "model";
    else throw ArgumentError{"unknown estimator"};
    const auto& all = ex->run.summary.estimators;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i].name == name) return i;
    throw ArgumentError{"estimator not part of this experiment"};
}

}  // namespace

extern "C" {

const char* evt_version(void) { return "1.0.0"; }

const char* evt_last_error(void) { return g_last_error.c_str(); }

const char* evt_status_name(evt_status status) {
    switch (status) {
        case EVT_OK: return "ok";
        case EVT_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case EVT_ERR_CONFIG: return "config";
        case EVT_ERR_DOMAIN: return "domain";
        case EVT_ERR_DEGENERATE: return "degenerate-input";
        case EVT_ERR_NO_ROOT: return "no-root";
        case EVT_ERR_HORIZON: return "horizon";
        case EVT_ERR_SIMULATION: return "simulation";
        case EVT_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

// ---- rng

evt_status evt_rng_create(uint64_t master_seed, evt_rng** out) {
    return guarded([&] {
        need(out, "out");
        *out = new evt_rng{evt::RngState(master_seed)};
    });
}

evt_status evt_rng_substream(const evt_rng* rng, uint64_t index, evt_rng** out) {
    return guarded([&] {
        need(rng, "rng");
        need(out, "out");
        *out = new evt_rng{rng->state.substream(index)};
    });
}

void evt_rng_destroy(evt_rng* rng) { delete rng; }

evt_status evt_rng_next_u64(evt_rng* rng, uint64_t* out) {
    return guarded([&] {
        need(rng, "rng");
        need(out, "out");
        *out = rng->state.next_u64();
    });
}

evt_status evt_rng_uniform(evt_rng* rng, double* out) {
    return guarded([&] {
        need(rng, "rng");
        need(out, "out");
        *out = rng->state.uniform();
    });
}

uint64_t evt_substream_seed(uint64_t master_seed, uint64_t index) {
    return evt::substream_seed(master_seed, index);
}

// ---- innovations

evt_status evt_innovation_from_json(const char* json, evt_innovation* out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = from_core(evt::innovation_from_json(evt::parse_json_text(json)));
    });
}

evt_status evt_innovation_quantile(const evt_innovation* spec, double u, double* out) {
    return guarded([&] {
        need(spec, "spec");
        need(out, "out");
        *out = evt::quantile_fn(to_core(*spec), u);
    });
}

evt_status evt_innovation_survival(const evt_innovation* spec, double x, double* out) {
    return guarded([&] {
        need(spec, "spec");
        need(out, "out");
        *out = evt::survival_fn(to_core(*spec), x);
    });
}

evt_status evt_innovation_sample(const evt_innovation* spec, evt_rng* rng, size_t n, double* out) {
    return guarded([&] {
        need(spec, "spec");
        need(rng, "rng");
        if (n > 0) need(out, "out");
        const auto core = to_core(*spec);
        for (size_t i = 0; i < n; ++i) out[i] = evt::draw(core, rng->state);
    });
}

// ---- models

evt_status evt_model_from_json(const char* json, evt_model** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        auto model = evt::model_from_json(evt::parse_json_text(json));
        model.validate();
        *out = new evt_model{std::move(model)};
    });
}

evt_status evt_model_linear_ar1(double phi1, const evt_innovation* innovations, size_t burnin,
                                evt_model** out) {
    return guarded([&] {
        need(innovations, "innovations");
        need(out, "out");
        auto model = evt::SeriesModel::linear_ar1(phi1, to_core(*innovations), burnin);
        model.validate();
        *out = new evt_model{std::move(model)};
    });
}

evt_status evt_model_nonlinear_ar1(double phi1, double delta, const evt_innovation* innovations,
                                   size_t burnin, evt_model** out) {
    return guarded([&] {
        need(innovations, "innovations");
        need(out, "out");
        auto model = evt::SeriesModel::nonlinear_ar1(phi1, delta, to_core(*innovations), burnin);
        model.validate();
        *out = new evt_model{std::move(model)};
    });
}

void evt_model_destroy(evt_model* model) { delete model; }

evt_status evt_simulate_series(const evt_model* model, size_t n, evt_rng* rng, double* out,
                               size_t* failed_step) {
    return guarded([&] {
        need(model, "model");
        need(rng, "rng");
        if (n > 0) need(out, "out");
        try {
            const auto xs = evt::simulate_series(model->model, n, rng->state);
            std::copy(xs.begin(), xs.end(), out);
        } catch (const evt::SimulationError& e) {
            if (failed_step) *failed_step = e.step();
            throw;
        }
    });
}

evt_status evt_driver_from_json(const char* json, evt_driver** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new evt_driver{evt::driver_from_json(evt::parse_json_text(json))};
    });
}

evt_status evt_driver_two_point(double a_up, double a_down, double p_up, evt_driver** out) {
    return guarded([&] {
        need(out, "out");
        auto d = evt::SREDriver::two_point(a_up, a_down, p_up);
        d.validate();
        *out = new evt_driver{d};
    });
}

evt_status evt_driver_lognormal(double mu, double sigma, evt_driver** out) {
    return guarded([&] {
        need(out, "out");
        auto d = evt::SREDriver::lognormal(mu, sigma);
        d.validate();
        *out = new evt_driver{d};
    });
}

void evt_driver_destroy(evt_driver* driver) { delete driver; }

evt_status evt_solve_kappa(const evt_driver* driver, double* kappa) {
    return guarded([&] {
        need(driver, "driver");
        need(kappa, "kappa");
        *kappa = evt::solve_kappa(driver->driver);
    });
}

// ---- estimators

evt_estimator_options evt_estimator_options_default(void) {
    evt_estimator_options o{};
    o.absolute = 0;
    o.center = 1;
    o.phi_floor = 1e-6;
    return o;
}

evt_status evt_hill(const double* data, size_t n, size_t k, int absolute, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::hill(data_span(data, n), k, absolute != 0);
    });
}

evt_status evt_fit_ar1(const double* data, size_t n, int center, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::fit_ar1(data_span(data, n), center != 0);
    });
}

evt_status evt_residuals_ar1(const double* data, size_t n, double phi_hat, double* out) {
    return guarded([&] {
        if (n < 2) throw evt::DegenerateInputError("residuals need at least two observations");
        need(out, "out");
        const auto z = evt::residuals_ar1(data_span(data, n), phi_hat);
        std::copy(z.begin(), z.end(), out);
    });
}

evt_status evt_weissman_direct(const double* data, size_t n, size_t k, double t,
                               const evt_estimator_options* options, evt_quantile_estimate* out) {
    return guarded([&] {
        need(out, "out");
        const auto o = options_or_default(options);
        evt::QuantileTarget target{t, k, n};
        write_estimate(evt::weissman_direct(data_span(data, n), target,
                                            evt::DirectOptions{o.absolute != 0}),
                       out);
    });
}

evt_status evt_weissman_model_ar1(const double* data, size_t n, size_t k, double t,
                                  const evt_estimator_options* options,
                                  evt_quantile_estimate* out) {
    return guarded([&] {
        need(out, "out");
        evt::QuantileTarget target{t, k, n};
        write_estimate(evt::weissman_model_ar1(data_span(data, n), target,
                                               model_options(options_or_default(options))),
                       out);
    });
}

// ---- theory

evt_status evt_tail_ratio_ar1(double phi, double gamma, double p, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::tail_ratio_ar1(phi, gamma, p);
    });
}

evt_status evt_tail_ratio_linear(const double* psi, size_t count, double gamma, double p,
                                 double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::tail_ratio_linear(sequence(psi, count), gamma, p);
    });
}

evt_status evt_ar1_coefficients(double phi, double gamma, double tol, double* out,
                                size_t capacity, size_t* count) {
    return guarded([&] {
        need(count, "count");
        const auto seq = evt::CoefficientSequence::ar1(phi, gamma, tol > 0.0 ? tol : 1e-12);
        *count = seq.psi.size();
        if (out == nullptr && capacity == 0) return;
        if (capacity < seq.psi.size()) throw ArgumentError{"output buffer too small"};
        need(out, "out");
        for (std::size_t i = 0; i < seq.psi.size(); ++i) out[i] = seq.psi[i].second;
    });
}

evt_status evt_hill_avar_ar1(double phi, double gamma, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::hill_avar_ar1(phi, gamma);
    });
}

evt_status evt_hill_avar_linear(const double* psi, size_t count, double gamma, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::hill_avar_linear(sequence(psi, count), gamma);
    });
}

evt_status evt_rmse_ratio_ar1(double phi, double gamma, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::rmse_ratio_ar1(phi, gamma);
    });
}

evt_status evt_second_order_constants(const double* psi, size_t count, double gamma, double c,
                                      double d, double c_tilde, double d_tilde, double* d_psi,
                                      double* D_psi) {
    return guarded([&] {
        need(d_psi, "d_psi");
        need(D_psi, "D_psi");
        const auto r = evt::second_order_constants(sequence(psi, count), gamma,
                                                   evt::SecondOrderTail{c, d, c_tilde, d_tilde});
        *d_psi = r.d_psi;
        *D_psi = r.D_psi;
    });
}

evt_status evt_second_order_constants_ar1(double phi, double gamma, double p, double* d_psi,
                                          double* D_psi) {
    return guarded([&] {
        need(d_psi, "d_psi");
        need(D_psi, "D_psi");
        const auto r = evt::second_order_constants(evt::CoefficientSequence::ar1(phi, gamma),
                                                   gamma,
                                                   evt::SecondOrderTail::shifted_pareto(gamma, p));
        *d_psi = r.d_psi;
        *D_psi = r.D_psi;
    });
}

// ---- extremal

evt_status evt_walks_simulate(const evt_driver* driver, double kappa, size_t horizon,
                              size_t n_paths, uint64_t seed, unsigned workers, evt_walks** out) {
    return guarded([&] {
        need(driver, "driver");
        need(out, "out");
        *out = new evt_walks{evt::simulate_walks(driver->driver, kappa, horizon, n_paths,
                                                 evt::RngState(seed), workers)};
    });
}

void evt_walks_destroy(evt_walks* walks) { delete walks; }

evt_status evt_extremal_index(const evt_walks* walks, evt_estimate* out) {
    return guarded([&] {
        need(walks, "walks");
        need(out, "out");
        const auto r = evt::extremal_index(walks->ensemble);
        *out = {r.value, r.se};
    });
}

evt_status evt_cluster_sizes(const evt_walks* walks, size_t kmax, evt_cluster_summary* summary,
                             double* theta_k, double* theta_k_stderr, double* pi_k,
                             double* pi_k_stderr) {
    return guarded([&] {
        need(walks, "walks");
        const auto r = evt::cluster_size_probs(walks->ensemble, kmax);
        if (summary) {
            summary->theta = r.theta;
            summary->theta_stderr = r.theta_se;
            summary->mean_cluster_size = r.mean_cluster_size;
            summary->horizon_remainder = r.horizon_remainder;
        }
        if (theta_k) std::copy(r.theta_k.begin(), r.theta_k.end(), theta_k);
        if (theta_k_stderr) std::copy(r.theta_k_se.begin(), r.theta_k_se.end(), theta_k_stderr);
        if (pi_k) std::copy(r.pi_k.begin(), r.pi_k.end(), pi_k);
        if (pi_k_stderr) std::copy(r.pi_k_se.begin(), r.pi_k_se.end(), pi_k_stderr);
    });
}

evt_status evt_hill_avar_sre(const evt_walks* walks, double tail_tol, evt_estimate* out,
                             double* tail_bound) {
    return guarded([&] {
        need(walks, "walks");
        need(out, "out");
        const auto r = evt::hill_avar_sre(walks->ensemble, tail_tol);
        *out = {r.value, r.se};
        if (tail_bound) *tail_bound = r.tail_bound;
    });
}

evt_status evt_joint_exceedance(const evt_walks* walks, const double* x, size_t k,
                                evt_joint_mode mode, evt_estimate* out) {
    return guarded([&] {
        need(walks, "walks");
        need(out, "out");
        if (k > 0) need(x, "x");
        evt::JointExceedanceQuery q;
        q.x.assign(x, x + k);
        if (mode == EVT_JOINT_ALL) q.mode = evt::JointExceedanceQuery::Mode::All;
        else if (mode == EVT_JOINT_SOME) q.mode = evt::JointExceedanceQuery::Mode::Some;
        else throw ArgumentError{"unknown joint exceedance mode"};
        const auto r = evt::joint_exceedance(walks->ensemble, q);
        *out = {r.value, r.se};
    });
}

// ---- diagnostics

evt_status evt_turning_point_test(const double* data, size_t n, evt_test_report* out) {
    return guarded([&] {
        need(out, "out");
        write_report(evt::turning_point_test(data_span(data, n)), out);
    });
}

evt_status evt_difference_sign_test(const double* data, size_t n, evt_test_report* out) {
    return guarded([&] {
        need(out, "out");
        write_report(evt::difference_sign_test(data_span(data, n)), out);
    });
}

evt_status evt_portmanteau_test(const double* data, size_t n, size_t h, evt_test_report* out) {
    return guarded([&] {
        need(out, "out");
        write_report(evt::portmanteau_test(data_span(data, n), h), out);
    });
}

evt_status evt_chi_square_sf(double q, double dof, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::chi_square_sf(q, dof);
    });
}

// ---- experiments

evt_status evt_true_quantile(const evt_model* model, double t, size_t n_reps, size_t rep_length,
                             uint64_t seed, unsigned workers, evt_truth* out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        const auto r = evt::true_quantile(model->model, t, n_reps, rep_length,
                                          evt::RngState(seed), workers);
        out->value = r.value;
        out->half_width = r.half_width;
    });
}

evt_status evt_empirical_quantile(const double* data, size_t n, double q, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::empirical_quantile(data_span(data, n), q);
    });
}

evt_status evt_experiment_run(const evt_model* model, const evt_experiment_config* config,
                              double true_value, evt_experiment** out) {
    return guarded([&] {
        need(model, "model");
        need(config, "config");
        need(out, "out");
        evt::ExperimentSpec spec;
        spec.model = model->model;
        spec.n = config->n;
        spec.replicates = config->replicates;
        if (config->k_count > 0) {
            need(config->k_grid, "k_grid");
            spec.k_grid.assign(config->k_grid, config->k_grid + config->k_count);
        }
        spec.t = config->t;
        spec.master_seed = config->seed;
        const auto& o = config->options;
        spec.estimators = {evt::direct_estimator(evt::DirectOptions{o.absolute != 0}),
                           evt::model_estimator(model_options(o))};
        *out = new evt_experiment{
            evt::run_quantile_experiment_detailed(spec, true_value, config->workers)};
    });
}

void evt_experiment_destroy(evt_experiment* experiment) { delete experiment; }

evt_status evt_experiment_stats(const evt_experiment* experiment, evt_estimator_kind estimator,
                                size_t k_index, evt_error_stats* out) {
    return guarded([&] {
        need(experiment, "experiment");
        need(out, "out");
        const auto& es = experiment->run.summary.estimators[estimator_index(experiment, estimator)];
        if (k_index >= es.per_k.size()) throw ArgumentError{"k_index out of range"};
        const auto& s = es.per_k[k_index];
        *out = {s.rmse, s.l1, s.bias, s.stderr_sd, s.completed, s.missing};
    });
}

evt_status evt_experiment_argmin(const evt_experiment* experiment, evt_estimator_kind estimator,
                                 size_t* k_rmse, double* min_rmse, size_t* k_l1, double* min_l1) {
    return guarded([&] {
        need(experiment, "experiment");
        const auto& es = experiment->run.summary.estimators[estimator_index(experiment, estimator)];
        if (k_rmse) *k_rmse = es.min_rmse.k;
        if (min_rmse) *min_rmse = es.min_rmse.value;
        if (k_l1) *k_l1 = es.min_l1.k;
        if (min_l1) *min_l1 = es.min_l1.value;
    });
}

evt_status evt_experiment_estimates(const evt_experiment* experiment, evt_estimator_kind estimator,
                                    size_t k_index, double* out, size_t capacity) {
    return guarded([&] {
        need(experiment, "experiment");
        const auto& per_k = experiment->run.estimates[estimator_index(experiment, estimator)];
        if (k_index >= per_k.size()) throw ArgumentError{"k_index out of range"};
        const auto& values = per_k[k_index];
        if (capacity < values.size()) throw ArgumentError{"output buffer too small"};
        need(out, "out");
        std::copy(values.begin(), values.end(), out);
    });
}

evt_status evt_silverman_bandwidth(const double* values, size_t n, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = evt::silverman_bandwidth(data_span(values, n));
    });
}

evt_status evt_kde(const double* values, size_t n, const double* grid, size_t grid_count,
                   double* density, double* bandwidth) {
    return guarded([&] {
        if (grid_count > 0) {
            need(grid, "grid");
            need(density, "density");
        }
        const auto r = evt::kde(data_span(values, n), std::span<const double>(grid, grid_count));
        std::copy(r.density.begin(), r.density.end(), density);
        if (bandwidth) *bandwidth = r.bandwidth;
    });
}

evt_status evt_power_experiment(const evt_model* model, size_t n, size_t replicates,
                                uint64_t seed, unsigned workers, size_t max_lag,
                                evt_power_result* out, double* ljung_box_by_lag) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        const auto r = evt::test_power_experiment(model->model, n, replicates,
                                                  evt::RngState(seed), workers, max_lag);
        out->replicates = r.replicates;
        out->turning_point = r.turning_point;
        out->difference_sign = r.difference_sign;
        out->ljung_box_max = r.ljung_box_max;
        out->ljung_box_argmax = r.ljung_box_argmax;
        out->mean_phi_hat = r.mean_phi_hat;
        if (ljung_box_by_lag)
            std::copy(r.ljung_box_by_lag.begin(), r.ljung_box_by_lag.end(), ljung_box_by_lag);
    });
}

evt_status evt_scatter(const evt_model* model, size_t n, uint64_t seed, double* x_prev,
                       double* x_cur, double* phi_hat) {
    return guarded([&] {
        need(model, "model");
        evt::RngState rng(seed);
        const auto r = evt::scatter_data(model->model, n, rng);
        if (!r.x_prev.empty()) {
            need(x_prev, "x_prev");
            need(x_cur, "x_cur");
        }
        std::copy(r.x_prev.begin(), r.x_prev.end(), x_prev);
        std::copy(r.x_cur.begin(), r.x_cur.end(), x_cur);
        if (phi_hat) *phi_hat = r.phi_hat;
    });
}

}  // extern "C"
