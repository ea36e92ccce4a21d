#include "evtail/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "evtail/diagnostics.hpp"
#include "evtail/errors.hpp"
#include "evtail/parallel.hpp"

namespace evt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t quantile_rank(double q, std::size_t n) {
    const double pos = q * static_cast<double>(n);
    const double nearest = std::round(pos);
    double rank = std::abs(pos - nearest) <= 1e-9 * std::max(1.0, pos) ? nearest : std::ceil(pos);
    rank = std::clamp(rank, 1.0, static_cast<double>(n));
    return static_cast<std::size_t>(rank);
}

}  // namespace

double empirical_quantile(std::span<const double> series, double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    if (series.empty()) throw DomainError("empirical quantile of an empty series");
    std::vector<double> v(series.begin(), series.end());
    const std::size_t rank = quantile_rank(q, v.size());
    auto nth = v.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(v.begin(), nth, v.end());
    return *nth;
}

QuantileTruth true_quantile(const SeriesModel& model, double t, std::size_t n_reps,
                            std::size_t rep_length, const RngState& rng, unsigned workers) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("t must lie in (0, 1)");
    if (n_reps == 0) throw ConfigError("need at least one replicate");
    if (static_cast<double>(rep_length) * t < 100.0)
        throw ConfigError("rep_length * t must be at least 100");
    QuantileTruth out;
    out.per_replicate.resize(n_reps);
    parallel_for(n_reps, workers, [&](std::size_t r) {
        RngState stream = rng.substream(r);
        const auto series = simulate_series(model, rep_length, stream);
        out.per_replicate[r] = empirical_quantile(series, 1.0 - t);
    });
    const auto m = mean_and_error(out.per_replicate);
    out.value = m.mean;
    out.half_width = 2.58 * m.se;
    return out;
}

EstimatorSpec direct_estimator(DirectOptions options) {
    return {"direct", [options](std::span<const double> series, std::span<const std::size_t> ks,
                                double t, std::span<std::optional<double>> out) {
                const DirectQuantileEstimator est(series, options);
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    try {
                        out[i] = est.estimate(ks[i], t).value;
                    } catch (const Error&) {
                        out[i].reset();
                    }
                }
            }};
}

EstimatorSpec model_estimator(ModelOptions options) {
    return {"model", [options](std::span<const double> series, std::span<const std::size_t> ks,
                               double t, std::span<std::optional<double>> out) {
                std::optional<ModelQuantileEstimator> est;
                try {
                    est.emplace(series, options);
                } catch (const Error&) {
                    for (auto& o : out) o.reset();
                    return;
                }
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    try {
                        out[i] = est->estimate(ks[i], t).value;
                    } catch (const Error&) {
                        out[i].reset();
                    }
                }
            }};
}

std::vector<std::size_t> default_k_grid() {
    std::vector<std::size_t> grid;
    for (std::size_t k = 10; k <= 1000; k += 5) grid.push_back(k);
    return grid;
}

void ExperimentSpec::validate() const {
    model.validate();
    if (replicates < 1) throw ConfigError("replicates must be at least 1");
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("t must lie in (0, 1)");
    if (k_grid.empty()) throw ConfigError("k grid is empty");
    for (std::size_t k : k_grid)
        if (k < 1 || k >= n) throw ConfigError("every k must satisfy 1 <= k < n");
    if (estimators.empty()) throw ConfigError("no estimators selected");
}

const ErrorStats& EstimatorSummary::at_k(const std::vector<std::size_t>& grid,
                                         std::size_t k) const {
    const auto it = std::find(grid.begin(), grid.end(), k);
    if (it == grid.end()) throw ConfigError("k not in grid");
    return per_k.at(static_cast<std::size_t>(it - grid.begin()));
}

const EstimatorSummary& ErrorSummary::estimator(const std::string& name) const {
    for (const auto& e : estimators)
        if (e.name == name) return e;
    throw ConfigError("unknown estimator " + name);
}

ErrorStats summarize_errors(std::span<const double> estimates, double true_value) {
    ErrorStats s;
    std::vector<double> values;
    values.reserve(estimates.size());
    for (double v : estimates) {
        if (std::isnan(v))
            ++s.missing;
        else
            values.push_back(v);
    }
    s.completed = values.size();
    if (values.empty()) {
        s.rmse = s.l1 = s.bias = s.stderr_sd = kNaN;
        return s;
    }
    const double count = static_cast<double>(values.size());
    std::vector<double> err(values.size()), sq(values.size()), ab(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        err[i] = values[i] - true_value;
        sq[i] = err[i] * err[i];
        ab[i] = std::abs(err[i]);
    }
    s.rmse = std::sqrt(pairwise_sum(sq) / count);
    s.l1 = pairwise_sum(ab) / count;
    s.bias = pairwise_sum(err) / count;
    s.stderr_sd = mean_and_error(values).sd;
    return s;
}

ExperimentRun run_quantile_experiment_detailed(const ExperimentSpec& spec, double true_value,
                                               unsigned workers) {
    spec.validate();
    const std::size_t ne = spec.estimators.size();
    const std::size_t nk = spec.k_grid.size();
    const std::size_t reps = spec.replicates;

    ExperimentRun run;
    run.estimates.assign(ne, std::vector<std::vector<double>>(nk, std::vector<double>(reps, kNaN)));
    const RngState master(spec.master_seed);
    parallel_for(reps, workers, [&](std::size_t r) {
        RngState stream = master.substream(r);
        const auto series = simulate_series(spec.model, spec.n, stream);
        std::vector<std::optional<double>> out(nk);
        for (std::size_t e = 0; e < ne; ++e) {
            spec.estimators[e].fn(series, spec.k_grid, spec.t, out);
            for (std::size_t ki = 0; ki < nk; ++ki)
                if (out[ki]) run.estimates[e][ki][r] = *out[ki];
        }
    });

    ErrorSummary& summary = run.summary;
    summary.true_value = true_value;
    summary.replicates = reps;
    summary.k_grid = spec.k_grid;
    for (std::size_t e = 0; e < ne; ++e) {
        EstimatorSummary es;
        es.name = spec.estimators[e].name;
        es.min_rmse.value = es.min_l1.value = std::numeric_limits<double>::infinity();
        for (std::size_t ki = 0; ki < nk; ++ki) {
            es.per_k.push_back(summarize_errors(run.estimates[e][ki], true_value));
            const ErrorStats& st = es.per_k.back();
            if (st.rmse < es.min_rmse.value) es.min_rmse = {spec.k_grid[ki], st.rmse};
            if (st.l1 < es.min_l1.value) es.min_l1 = {spec.k_grid[ki], st.l1};
        }
        summary.estimators.push_back(std::move(es));
    }
    return run;
}

ErrorSummary run_quantile_experiment(const ExperimentSpec& spec, double true_value,
                                     unsigned workers) {
    return run_quantile_experiment_detailed(spec, true_value, workers).summary;
}

namespace {

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double interpolated_quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> values) {
    if (values.size() < 2) throw DegenerateInputError("density estimate needs 2 or more values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw DegenerateInputError("density estimate of identical values");
    const double sd = mean_and_error(values).sd;
    const double iqr = interpolated_quantile(sorted, 0.75) - interpolated_quantile(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 1.06 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

std::vector<double> kde_grid(std::span<const double> values, double bandwidth,
                             std::size_t points) {
    if (points < 2) throw ConfigError("density grid needs at least 2 points");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it - 3.0 * bandwidth;
    const double hi = *hi_it + 3.0 * bandwidth;
    std::vector<double> grid(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
    return grid;
}

DensityEstimate kde(std::span<const double> values, std::span<const double> grid) {
    DensityEstimate out;
    out.bandwidth = silverman_bandwidth(values);
    out.grid.assign(grid.begin(), grid.end());
    out.density.resize(grid.size());
    const double h = out.bandwidth;
    const double norm =
        1.0 / (static_cast<double>(values.size()) * h * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double s = 0.0;
        for (double v : values) {
            const double z = (grid[g] - v) / h;
            s += std::exp(-0.5 * z * z);
        }
        out.density[g] = s * norm;
    }
    return out;
}

DensityEstimate kde(std::span<const double> values) {
    const auto grid = kde_grid(values, silverman_bandwidth(values));
    return kde(values, grid);
}

PowerResult test_power_experiment(const SeriesModel& model, std::size_t n,
                                  std::size_t replicates, const RngState& rng, unsigned workers,
                                  std::size_t max_lag) {
    if (replicates < 1) throw ConfigError("replicates must be at least 1");
    if (max_lag < 1 || max_lag + 2 >= n) throw ConfigError("lag sweep too long for series");
    std::vector<double> tp(replicates), ds(replicates), phi(replicates);
    std::vector<std::vector<double>> lb(max_lag, std::vector<double>(replicates));
    parallel_for(replicates, workers, [&](std::size_t r) {
        RngState stream = rng.substream(r);
        const auto series = simulate_series(model, n, stream);
        phi[r] = fit_ar1(series);
        const auto res = residuals_ar1(series, phi[r]);
        tp[r] = turning_point_test(res).reject_at_5pct ? 1.0 : 0.0;
        ds[r] = difference_sign_test(res).reject_at_5pct ? 1.0 : 0.0;
        const auto sweep = portmanteau_sweep(res, max_lag);
        for (std::size_t h = 0; h < max_lag; ++h) lb[h][r] = sweep[h].reject_at_5pct ? 1.0 : 0.0;
    });
    PowerResult out;
    out.replicates = replicates;
    out.turning_point = mean_and_error(tp).mean;
    out.difference_sign = mean_and_error(ds).mean;
    out.mean_phi_hat = mean_and_error(phi).mean;
    for (std::size_t h = 0; h < max_lag; ++h) {
        const double rate = mean_and_error(lb[h]).mean;
        out.ljung_box_by_lag.push_back(rate);
        if (rate > out.ljung_box_max || h == 0) {
            out.ljung_box_max = rate;
            out.ljung_box_argmax = h + 1;
        }
    }
    return out;
}

ScatterData scatter_data(const SeriesModel& model, std::size_t n, RngState& rng) {
    if (n < 3) throw ConfigError("scatter needs at least 3 observations");
    const auto series = simulate_series(model, n, rng);
    ScatterData out;
    out.x_prev.assign(series.begin(), series.end() - 1);
    out.x_cur.assign(series.begin() + 1, series.end());
    out.phi_hat = fit_ar1(series);
    return out;
}

}  // namespace evt
