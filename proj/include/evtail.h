/*
 * evtail: direct versus model-based extreme-value estimation for heavy-tailed
 * time series, and extremal dependence of stochastic recurrence equations.
 *
 * C interface. All functions return an evt_status; on failure the message of
 * the most recent error on the calling thread is available from
 * evt_last_error(). Objects behind opaque handles are owned by the caller and
 * released with the matching *_destroy function (which accepts NULL).
 */
#ifndef EVTAIL_H
#define EVTAIL_H

#include <stddef.h>
#include <stdint.h>

#if defined(EVTAIL_BUILDING_LIBRARY)
#define EVT_API __attribute__((visibility("default")))
#else
#define EVT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evt_status {
    EVT_OK = 0,
    EVT_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, buffer too small */
    EVT_ERR_CONFIG = 2,           /* invalid model, driver, or experiment configuration */
    EVT_ERR_DOMAIN = 3,           /* argument outside the domain of the operation */
    EVT_ERR_DEGENERATE = 4,       /* input without enough variation */
    EVT_ERR_NO_ROOT = 5,          /* E A^kappa = 1 has no root in the search range */
    EVT_ERR_HORIZON = 6,          /* walk horizon too short for the requested tolerance */
    EVT_ERR_SIMULATION = 7,       /* non-finite value in a simulated recursion */
    EVT_ERR_INTERNAL = 8
} evt_status;

EVT_API const char* evt_version(void);
EVT_API const char* evt_last_error(void);
EVT_API const char* evt_status_name(evt_status status);

/* ---- random streams ------------------------------------------------------ */

/* xoshiro256** seeded through SplitMix64; see README for the exact definition. */
typedef struct evt_rng evt_rng;

EVT_API evt_status evt_rng_create(uint64_t master_seed, evt_rng** out);
/* Stream for replicate `index`: seed mix64(master ^ mix64(index + 0x9E3779B97F4A7C15)). */
EVT_API evt_status evt_rng_substream(const evt_rng* rng, uint64_t index, evt_rng** out);
EVT_API void evt_rng_destroy(evt_rng* rng);
EVT_API evt_status evt_rng_next_u64(evt_rng* rng, uint64_t* out);
EVT_API evt_status evt_rng_uniform(evt_rng* rng, double* out);
/* Seed of the stream evt_rng_substream(master, index) would return. */
EVT_API uint64_t evt_substream_seed(uint64_t master_seed, uint64_t index);

/* ---- innovation laws ----------------------------------------------------- */

typedef enum evt_innovation_kind {
    EVT_TWO_SIDED_PARETO = 0,
    EVT_SHIFTED_TWO_SIDED_PARETO = 1
} evt_innovation_kind;

typedef struct evt_innovation {
    evt_innovation_kind kind;
    double gamma; /* extreme value index, > 0 */
    double p;     /* right-tail weight, in (0, 1] */
} evt_innovation;

EVT_API evt_status evt_innovation_from_json(const char* json, evt_innovation* out);
EVT_API evt_status evt_innovation_quantile(const evt_innovation* spec, double u, double* out);
EVT_API evt_status evt_innovation_survival(const evt_innovation* spec, double x, double* out);
EVT_API evt_status evt_innovation_sample(const evt_innovation* spec, evt_rng* rng, size_t n,
                                         double* out);

/* ---- models and simulation ----------------------------------------------- */

typedef struct evt_model evt_model;   /* linear AR(1), nonlinear AR(1), or recurrence */
typedef struct evt_driver evt_driver; /* law of (A_t, B_t) in X_t = A_t X_{t-1} + B_t */

EVT_API evt_status evt_model_from_json(const char* json, evt_model** out);
EVT_API evt_status evt_model_linear_ar1(double phi1, const evt_innovation* innovations,
                                        size_t burnin, evt_model** out);
EVT_API evt_status evt_model_nonlinear_ar1(double phi1, double delta,
                                           const evt_innovation* innovations, size_t burnin,
                                           evt_model** out);
EVT_API void evt_model_destroy(evt_model* model);
/* Writes n values to out. On EVT_ERR_SIMULATION the failing step is in *failed_step
 * (may be NULL). */
EVT_API evt_status evt_simulate_series(const evt_model* model, size_t n, evt_rng* rng,
                                       double* out, size_t* failed_step);

EVT_API evt_status evt_driver_from_json(const char* json, evt_driver** out);
EVT_API evt_status evt_driver_two_point(double a_up, double a_down, double p_up,
                                        evt_driver** out);
EVT_API evt_status evt_driver_lognormal(double mu, double sigma, evt_driver** out);
EVT_API void evt_driver_destroy(evt_driver* driver);
EVT_API evt_status evt_solve_kappa(const evt_driver* driver, double* kappa);

/* ---- estimators ---------------------------------------------------------- */

enum {
    EVT_FLAG_PHI_CLAMPED = 1u << 0,        /* 1 - |phi|^{1/gamma} hit the floor */
    EVT_FLAG_HILL_ZERO = 1u << 1,          /* top k + 1 order statistics tie */
    EVT_FLAG_ABSOLUTE = 1u << 2,           /* estimator used absolute values */
    EVT_FLAG_UNCENTERED = 1u << 3          /* AR(1) fit without mean centring */
};

typedef struct evt_estimator_options {
    int absolute;     /* nonzero: order statistics of |X| (direct) or |Z| (model) */
    int center;       /* nonzero: centred lag-one autocorrelation */
    double phi_floor; /* floor of 1 - |phi|^{1/gamma}; <= 0 selects 1e-6 */
} evt_estimator_options;

EVT_API evt_estimator_options evt_estimator_options_default(void);

typedef struct evt_quantile_estimate {
    double value;
    double gamma_hat;
    double phi_hat; /* NaN for the direct estimator */
    size_t k;
    double t;
    unsigned flags;
} evt_quantile_estimate;

EVT_API evt_status evt_hill(const double* data, size_t n, size_t k, int absolute, double* out);
EVT_API evt_status evt_fit_ar1(const double* data, size_t n, int center, double* out);
/* out receives n - 1 values. */
EVT_API evt_status evt_residuals_ar1(const double* data, size_t n, double phi_hat, double* out);
EVT_API evt_status evt_weissman_direct(const double* data, size_t n, size_t k, double t,
                                       const evt_estimator_options* options,
                                       evt_quantile_estimate* out);
EVT_API evt_status evt_weissman_model_ar1(const double* data, size_t n, size_t k, double t,
                                          const evt_estimator_options* options,
                                          evt_quantile_estimate* out);

/* ---- closed-form theory -------------------------------------------------- */

EVT_API evt_status evt_tail_ratio_ar1(double phi, double gamma, double p, double* out);
/* psi[j] is the coefficient of lag j, j = 0..count-1. */
EVT_API evt_status evt_tail_ratio_linear(const double* psi, size_t count, double gamma,
                                         double p, double* out);
/* psi_j = phi^j, j = 0, 1, ..., stopping before |psi_j|^{1/gamma} < tol (tol <= 0: 1e-12).
 * *count receives the number of terms; fails when it exceeds capacity. out may be
 * NULL with capacity 0 to query the count. */
EVT_API evt_status evt_ar1_coefficients(double phi, double gamma, double tol, double* out,
                                        size_t capacity, size_t* count);
EVT_API evt_status evt_hill_avar_ar1(double phi, double gamma, double* out);
EVT_API evt_status evt_hill_avar_linear(const double* psi, size_t count, double gamma,
                                        double* out);
EVT_API evt_status evt_rmse_ratio_ar1(double phi, double gamma, double* out);
EVT_API evt_status evt_second_order_constants(const double* psi, size_t count, double gamma,
                                              double c, double d, double c_tilde,
                                              double d_tilde, double* d_psi, double* D_psi);
/* Same for psi_j = phi^j and shifted two-sided Pareto innovations with weight p. */
EVT_API evt_status evt_second_order_constants_ar1(double phi, double gamma, double p,
                                                  double* d_psi, double* D_psi);

/* ---- extremal dependence of the recurrence ------------------------------- */

typedef struct evt_walks evt_walks;

typedef struct evt_estimate {
    double value;
    double stderr_value;
} evt_estimate;

EVT_API evt_status evt_walks_simulate(const evt_driver* driver, double kappa, size_t horizon,
                                      size_t n_paths, uint64_t seed, unsigned workers,
                                      evt_walks** out);
EVT_API void evt_walks_destroy(evt_walks* walks);
EVT_API evt_status evt_extremal_index(const evt_walks* walks, evt_estimate* out);

/* theta_k for k = 1..kmax+1 and pi_k for k = 1..kmax. Arrays may be NULL. */
typedef struct evt_cluster_summary {
    double theta;
    double theta_stderr;
    double mean_cluster_size;
    double horizon_remainder;
} evt_cluster_summary;

EVT_API evt_status evt_cluster_sizes(const evt_walks* walks, size_t kmax,
                                     evt_cluster_summary* summary, double* theta_k,
                                     double* theta_k_stderr, double* pi_k, double* pi_k_stderr);

EVT_API evt_status evt_hill_avar_sre(const evt_walks* walks, double tail_tol, evt_estimate* out,
                                     double* tail_bound);

typedef enum evt_joint_mode { EVT_JOINT_ALL = 0, EVT_JOINT_SOME = 1 } evt_joint_mode;

EVT_API evt_status evt_joint_exceedance(const evt_walks* walks, const double* x, size_t k,
                                        evt_joint_mode mode, evt_estimate* out);

/* ---- residual diagnostics ------------------------------------------------ */

typedef struct evt_test_report {
    double statistic;
    double z_or_q;
    double p_value;
    int reject_at_5pct;
} evt_test_report;

EVT_API evt_status evt_turning_point_test(const double* data, size_t n, evt_test_report* out);
EVT_API evt_status evt_difference_sign_test(const double* data, size_t n, evt_test_report* out);
EVT_API evt_status evt_portmanteau_test(const double* data, size_t n, size_t h,
                                        evt_test_report* out);
EVT_API evt_status evt_chi_square_sf(double q, double dof, double* out);

/* ---- experiments --------------------------------------------------------- */

typedef struct evt_truth {
    double value;
    double half_width;
} evt_truth;

EVT_API evt_status evt_true_quantile(const evt_model* model, double t, size_t n_reps,
                                     size_t rep_length, uint64_t seed, unsigned workers,
                                     evt_truth* out);
EVT_API evt_status evt_empirical_quantile(const double* data, size_t n, double q, double* out);

typedef struct evt_experiment evt_experiment;

typedef enum evt_estimator_kind { EVT_ESTIMATOR_DIRECT = 0, EVT_ESTIMATOR_MODEL = 1 } evt_estimator_kind;

typedef struct evt_experiment_config {
    size_t n;          /* series length */
    size_t replicates; /* Monte Carlo replicates */
    const size_t* k_grid;
    size_t k_count;
    double t;
    uint64_t seed;
    unsigned workers;
    evt_estimator_options options; /* shared by both estimators */
} evt_experiment_config;

typedef struct evt_error_stats {
    double rmse;
    double l1;
    double bias;
    double stderr_sd; /* sample standard deviation of the estimates */
    size_t completed;
    size_t missing;
} evt_error_stats;

/* Runs the direct and the model-based estimator on the same replicates. */
EVT_API evt_status evt_experiment_run(const evt_model* model, const evt_experiment_config* config,
                                      double true_value, evt_experiment** out);
EVT_API void evt_experiment_destroy(evt_experiment* experiment);
EVT_API evt_status evt_experiment_stats(const evt_experiment* experiment,
                                        evt_estimator_kind estimator, size_t k_index,
                                        evt_error_stats* out);
EVT_API evt_status evt_experiment_argmin(const evt_experiment* experiment,
                                         evt_estimator_kind estimator, size_t* k_rmse,
                                         double* min_rmse, size_t* k_l1, double* min_l1);
/* Raw estimates of all replicates at grid position k_index; NaN marks missing. */
EVT_API evt_status evt_experiment_estimates(const evt_experiment* experiment,
                                            evt_estimator_kind estimator, size_t k_index,
                                            double* out, size_t capacity);

/* Gaussian kernel density with Silverman's bandwidth on a caller-provided grid. */
EVT_API evt_status evt_silverman_bandwidth(const double* values, size_t n, double* out);
EVT_API evt_status evt_kde(const double* values, size_t n, const double* grid, size_t grid_count,
                           double* density, double* bandwidth);

typedef struct evt_power_result {
    size_t replicates;
    double turning_point;
    double difference_sign;
    double ljung_box_max;
    size_t ljung_box_argmax;
    double mean_phi_hat;
} evt_power_result;

/* ljung_box_by_lag (may be NULL) receives max_lag rejection rates for h = 1..max_lag. */
EVT_API evt_status evt_power_experiment(const evt_model* model, size_t n, size_t replicates,
                                        uint64_t seed, unsigned workers, size_t max_lag,
                                        evt_power_result* out, double* ljung_box_by_lag);

/* x_prev and x_cur receive n - 1 lag-one pairs. */
EVT_API evt_status evt_scatter(const evt_model* model, size_t n, uint64_t seed, double* x_prev,
                               double* x_cur, double* phi_hat);

#ifdef __cplusplus
}
#endif

#endif /* EVTAIL_H */
