#include "evtail/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "evtail/errors.hpp"

namespace evt {

void QuantileTarget::validate(std::size_t sample_size) const {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("exceedance probability t must lie in (0, 1)");
    if (n != 0 && n != sample_size) throw ConfigError("target sample size does not match data");
    if (k < 1 || k >= sample_size) throw ConfigError("k must satisfy 1 <= k < n");
}

UpperOrderStatistics::UpperOrderStatistics(std::span<const double> sample, bool absolute)
    : desc_(sample.begin(), sample.end()) {
    if (absolute)
        for (auto& v : desc_) v = std::abs(v);
    std::stable_sort(desc_.begin(), desc_.end(), std::greater<>());
    logs_.reserve(desc_.size());
    for (double v : desc_) {
        if (!(v > 0.0)) break;
        logs_.push_back(std::log(v));
    }
}

double UpperOrderStatistics::hill(std::size_t k) const {
    if (k < 1) throw DomainError("Hill estimator needs k >= 1");
    if (k + 1 > desc_.size()) throw DomainError("Hill estimator needs k + 1 order statistics");
    if (k >= logs_.size()) throw DomainError("threshold order statistic is not positive");
    const double base = logs_[k];
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += logs_[i] - base;
    return sum / static_cast<double>(k);
}

double hill(std::span<const double> sample, std::size_t k, bool absolute) {
    return UpperOrderStatistics(sample, absolute).hill(k);
}

double fit_ar1(std::span<const double> series, bool center) {
    const std::size_t n = series.size();
    if (n < 3) throw DegenerateInputError("AR(1) fit needs at least 3 observations");
    double mean = 0.0;
    if (center) {
        for (double x : series) mean += x;
        mean /= static_cast<double>(n);
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double d = series[t] - mean;
        den += d * d;
        if (t + 1 < n) num += d * (series[t + 1] - mean);
    }
    if (!(den > 0.0)) throw DegenerateInputError("AR(1) fit on a series with zero variation");
    return num / den;
}

std::vector<double> residuals_ar1(std::span<const double> series, double phi_hat) {
    if (series.size() < 2) throw DegenerateInputError("residuals need at least 2 observations");
    std::vector<double> out(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t) out[t - 1] = series[t] - phi_hat * series[t - 1];
    return out;
}

double weissman_extrapolate(double threshold, double gamma, std::size_t n, std::size_t k,
                            double t) {
    return threshold * std::pow(static_cast<double>(k) / (static_cast<double>(n) * t), gamma);
}

ModelExtrapolation weissman_model_extrapolate(double threshold, double gamma, double phi,
                                              std::size_t n, std::size_t k, double t,
                                              double floor) {
    ModelExtrapolation out;
    double factor = 1.0 - std::pow(std::abs(phi), 1.0 / gamma);
    if (!(factor >= floor)) {
        factor = floor;
        out.clamped = true;
    }
    out.u = factor * t;
    out.value =
        threshold * std::pow(static_cast<double>(n) * out.u / static_cast<double>(k), -gamma);
    return out;
}

DirectQuantileEstimator::DirectQuantileEstimator(std::span<const double> series,
                                                 DirectOptions options)
    : options_(options), stats_(series, options.absolute) {}

QuantileEstimate DirectQuantileEstimator::estimate(std::size_t k, double t) const {
    QuantileTarget{t, k, 0}.validate(stats_.size());
    QuantileEstimate out;
    out.k = k;
    out.t = t;
    out.gamma_hat = stats_.hill(k);
    out.value = weissman_extrapolate(stats_.threshold(k), out.gamma_hat, stats_.size(), k, t);
    if (options_.absolute) out.flags.emplace_back("absolute_values");
    if (out.gamma_hat == 0.0) out.flags.emplace_back("hill_zero");
    return out;
}

ModelQuantileEstimator::ModelQuantileEstimator(std::span<const double> series,
                                               ModelOptions options)
    : options_(options),
      phi_hat_(fit_ar1(series, options.center)),
      residuals_(residuals_ar1(series, phi_hat_)),
      stats_(residuals_, options.absolute_residuals) {}

QuantileEstimate ModelQuantileEstimator::estimate(std::size_t k, double t) const {
    QuantileTarget{t, k, 0}.validate(stats_.size());
    QuantileEstimate out;
    out.k = k;
    out.t = t;
    out.phi_hat = phi_hat_;
    out.gamma_hat = stats_.hill(k);
    const auto ext = weissman_model_extrapolate(stats_.threshold(k), out.gamma_hat, phi_hat_,
                                                stats_.size(), k, t, options_.phi_floor);
    out.value = ext.value;
    if (ext.clamped) out.flags.emplace_back("phi_clamped");
    if (!options_.center) out.flags.emplace_back("uncentered");
    if (options_.absolute_residuals) out.flags.emplace_back("absolute_residuals");
    if (out.gamma_hat == 0.0) out.flags.emplace_back("hill_zero");
    return out;
}

QuantileEstimate weissman_direct(std::span<const double> series, const QuantileTarget& target,
                                 DirectOptions options) {
    target.validate(series.size());
    return DirectQuantileEstimator(series, options).estimate(target.k, target.t);
}

QuantileEstimate weissman_model_ar1(std::span<const double> series,
                                    const QuantileTarget& target, ModelOptions options) {
    target.validate(series.size());
    return ModelQuantileEstimator(series, options).estimate(target.k, target.t);
}

}  // namespace evt
