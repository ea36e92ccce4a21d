#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace evt {

/// Extreme quantile F^{-1}(1 - t) estimated from the k largest observations.
struct QuantileTarget {
    double t = 0.001;
    std::size_t k = 100;
    std::size_t n = 0;  // sample size; 0 means "take it from the data"

    /// Throws ConfigError unless 0 < t < 1 and 1 <= k < n.
    void validate(std::size_t sample_size) const;
};

/// Sample sorted in decreasing order, with the logs of its positive values.
class UpperOrderStatistics {
public:
    explicit UpperOrderStatistics(std::span<const double> sample, bool absolute = false);

    std::size_t size() const noexcept { return desc_.size(); }

    /// i-th largest value, 1-based: X_{n-i+1:n}.
    double largest(std::size_t i) const { return desc_.at(i - 1); }

    /// X_{n-k:n}, the (k+1)-th largest value.
    double threshold(std::size_t k) const { return desc_.at(k); }

    /// (1/k) sum_{i=1..k} log(X_{n-i+1:n} / X_{n-k:n}). Throws DomainError when
    /// k + 1 > n or the threshold is not positive. Exactly 0 when the top k + 1 tie.
    double hill(std::size_t k) const;

private:
    std::vector<double> desc_;
    std::vector<double> logs_;  // logs_[i] = log desc_[i] while desc_[i] > 0
};

double hill(std::span<const double> sample, std::size_t k, bool absolute = false);

/// Lag-one sample autocorrelation (centred) or least squares through the origin.
/// Throws DegenerateInputError on a constant series or n < 3.
double fit_ar1(std::span<const double> series, bool center = true);

/// Z_t = X_t - phi_hat X_{t-1}, t = 2..n.
std::vector<double> residuals_ar1(std::span<const double> series, double phi_hat);

/// threshold * (k / (n t))^gamma.
double weissman_extrapolate(double threshold, double gamma, std::size_t n, std::size_t k,
                            double t);

struct ModelExtrapolation {
    double value = 0.0;
    double u = 0.0;  // (1 - |phi|^{1/gamma}) t after clamping
    bool clamped = false;
};

/// threshold * (n u / k)^(-gamma), u = max(1 - |phi|^{1/gamma}, floor) * t.
ModelExtrapolation weissman_model_extrapolate(double threshold, double gamma, double phi,
                                              std::size_t n, std::size_t k, double t,
                                              double floor = 1e-6);

struct QuantileEstimate {
    double value = 0.0;
    double gamma_hat = 0.0;
    std::optional<double> phi_hat;
    std::size_t k = 0;
    double t = 0.0;
    std::vector<std::string> flags;
};

struct DirectOptions {
    bool absolute = false;
};

struct ModelOptions {
    bool center = true;
    bool absolute_residuals = false;
    double phi_floor = 1e-6;
};

/// Weissman estimator on the observations themselves. Sorting is done once,
/// so evaluating many k on the same series is cheap.
class DirectQuantileEstimator {
public:
    explicit DirectQuantileEstimator(std::span<const double> series, DirectOptions options = {});

    QuantileEstimate estimate(std::size_t k, double t) const;

private:
    DirectOptions options_;
    UpperOrderStatistics stats_;
};

/// Weissman estimator on AR(1) residuals, mapped back to X through the
/// linear-process tail ratio 1 / (1 - |phi|^{1/gamma}).
///
/// The residual sample has m = n - 1 values; the threshold is its (k+1)-th
/// largest value (the same order statistic the residual Hill estimator divides
/// by) and m is the sample size in the extrapolation factor.
class ModelQuantileEstimator {
public:
    explicit ModelQuantileEstimator(std::span<const double> series, ModelOptions options = {});

    double phi_hat() const noexcept { return phi_hat_; }
    std::span<const double> residuals() const noexcept { return residuals_; }

    QuantileEstimate estimate(std::size_t k, double t) const;

private:
    ModelOptions options_;
    double phi_hat_;
    std::vector<double> residuals_;
    UpperOrderStatistics stats_;
};

QuantileEstimate weissman_direct(std::span<const double> series, const QuantileTarget& target,
                                 DirectOptions options = {});

QuantileEstimate weissman_model_ar1(std::span<const double> series,
                                    const QuantileTarget& target, ModelOptions options = {});

}  // namespace evt
