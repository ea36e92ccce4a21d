#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evtail/estimators.hpp"
#include "evtail/rng.hpp"
#include "evtail/simulate.hpp"

namespace evt {

/// ceil(q n)-th smallest value (1-based), q in (0, 1). q n within 1e-9 of an
/// integer is taken as that integer so 0.999 * 10^6 selects the 999000th value.
double empirical_quantile(std::span<const double> series, double q);

struct QuantileTruth {
    double value = 0.0;
    double half_width = 0.0;  // 2.58 standard errors of the replicate mean
    std::vector<double> per_replicate;
};

/// Mean over n_reps simulated series of length rep_length of the empirical
/// (1 - t)-quantile. Replicate r uses rng.substream(r).
/// Throws ConfigError unless rep_length * t >= 100.
QuantileTruth true_quantile(const SeriesModel& model, double t, std::size_t n_reps,
                            std::size_t rep_length, const RngState& rng, unsigned workers = 1);

/// Writes one estimate per k (or nullopt when undefined for that k).
using EstimatorFn = std::function<void(std::span<const double> series,
                                       std::span<const std::size_t> k_grid, double t,
                                       std::span<std::optional<double>> out)>;

struct EstimatorSpec {
    std::string name;
    EstimatorFn fn;
};

EstimatorSpec direct_estimator(DirectOptions options = {});
EstimatorSpec model_estimator(ModelOptions options = {});

/// 10, 15, ..., 1000.
std::vector<std::size_t> default_k_grid();

struct ExperimentSpec {
    SeriesModel model;
    std::size_t n = 2000;
    std::size_t replicates = 500;
    std::vector<std::size_t> k_grid = default_k_grid();
    double t = 0.001;
    std::vector<EstimatorSpec> estimators;
    std::uint64_t master_seed = kDefaultSeed;

    void validate() const;
};

struct ErrorStats {
    double rmse = 0.0;
    double l1 = 0.0;
    double bias = 0.0;
    double stderr_sd = 0.0;  // sample standard deviation of the estimates
    std::size_t completed = 0;
    std::size_t missing = 0;
};

struct ArgMin {
    std::size_t k = 0;
    double value = 0.0;
};

struct EstimatorSummary {
    std::string name;
    std::vector<ErrorStats> per_k;  // aligned with ErrorSummary::k_grid
    ArgMin min_rmse;
    ArgMin min_l1;

    const ErrorStats& at_k(const std::vector<std::size_t>& grid, std::size_t k) const;
};

struct ErrorSummary {
    double true_value = 0.0;
    double true_half_width = 0.0;
    std::size_t replicates = 0;
    std::vector<std::size_t> k_grid;
    std::vector<EstimatorSummary> estimators;

    const EstimatorSummary& estimator(const std::string& name) const;
};

struct ExperimentRun {
    ErrorSummary summary;
    /// estimates[e][ki][r]; NaN marks a missing estimate.
    std::vector<std::vector<std::vector<double>>> estimates;
};

/// Replicate r simulates from RngState(master_seed).substream(r). Results do not
/// depend on `workers`.
ExperimentRun run_quantile_experiment_detailed(const ExperimentSpec& spec, double true_value,
                                               unsigned workers = 1);
ErrorSummary run_quantile_experiment(const ExperimentSpec& spec, double true_value,
                                     unsigned workers = 1);

/// Aggregates raw estimates (NaN = missing) against the truth.
ErrorStats summarize_errors(std::span<const double> estimates, double true_value);

struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

/// 1.06 min(sd, iqr/1.34) n^{-1/5}; falls back to sd when the IQR is 0.
double silverman_bandwidth(std::span<const double> values);

/// `points` equally spaced values over [min - 3h, max + 3h].
std::vector<double> kde_grid(std::span<const double> values, double bandwidth,
                             std::size_t points = 512);

/// Gaussian kernel density with Silverman's bandwidth, evaluated on `grid`.
/// Throws DegenerateInputError when all values coincide.
DensityEstimate kde(std::span<const double> values, std::span<const double> grid);
DensityEstimate kde(std::span<const double> values);

struct PowerResult {
    std::size_t replicates = 0;
    double turning_point = 0.0;
    double difference_sign = 0.0;
    std::vector<double> ljung_box_by_lag;  // h = 1..max_lag
    double ljung_box_max = 0.0;
    std::size_t ljung_box_argmax = 0;
    double mean_phi_hat = 0.0;
};

inline constexpr std::size_t kPowerMaxLag = 30;

/// Per replicate: simulate, fit a linear AR(1), run all three tests on the
/// residuals at level 0.05. Replicate r uses rng.substream(r).
PowerResult test_power_experiment(const SeriesModel& model, std::size_t n,
                                  std::size_t replicates, const RngState& rng,
                                  unsigned workers = 1, std::size_t max_lag = kPowerMaxLag);

struct ScatterData {
    std::vector<double> x_prev;
    std::vector<double> x_cur;
    double phi_hat = 0.0;
};

/// Lag-one pairs of one simulated series with its fitted AR(1) coefficient.
ScatterData scatter_data(const SeriesModel& model, std::size_t n, RngState& rng);

}  // namespace evt
