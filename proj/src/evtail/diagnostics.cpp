#include "evtail/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "evtail/errors.hpp"
#include "evtail/special_functions.hpp"

namespace evt {

namespace {

TestReport normal_report(std::string name, double statistic, double mean, double variance) {
    TestReport r;
    r.test = std::move(name);
    r.statistic = statistic;
    r.z_or_q = (statistic - mean) / std::sqrt(variance);
    r.p_value = std::min(1.0, 2.0 * normal_cdf(-std::abs(r.z_or_q)));
    r.reject_at_5pct = r.p_value < kNominalSize;
    return r;
}

}  // namespace

TestReport turning_point_test(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 3) throw DomainError("turning point test needs at least 3 observations");
    std::size_t turns = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double a = series[i - 1], b = series[i], c = series[i + 1];
        if ((a < b && b > c) || (a > b && b < c)) ++turns;
    }
    const double nd = static_cast<double>(n);
    return normal_report("turning_point", static_cast<double>(turns), 2.0 * (nd - 2.0) / 3.0,
                         (16.0 * nd - 29.0) / 90.0);
}

TestReport difference_sign_test(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) throw DomainError("difference-sign test needs at least 2 observations");
    std::size_t rises = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (series[i] > series[i - 1]) ++rises;
    const double nd = static_cast<double>(n);
    return normal_report("difference_sign", static_cast<double>(rises), (nd - 1.0) / 2.0,
                         (nd + 1.0) / 12.0);
}

std::vector<double> autocorrelations(std::span<const double> series, std::size_t h) {
    const std::size_t n = series.size();
    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= static_cast<double>(n);
    std::vector<double> d(n);
    double c0 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        d[t] = series[t] - mean;
        c0 += d[t] * d[t];
    }
    if (!(c0 > 0.0)) throw DegenerateInputError("autocorrelation of a constant series");
    std::vector<double> rho(h);
    for (std::size_t j = 1; j <= h; ++j) {
        double c = 0.0;
        for (std::size_t t = 0; t + j < n; ++t) c += d[t] * d[t + j];
        rho[j - 1] = c / c0;
    }
    return rho;
}

std::vector<TestReport> portmanteau_sweep(std::span<const double> series, std::size_t h_max) {
    const std::size_t n = series.size();
    if (h_max < 1 || h_max >= n) throw DomainError("portmanteau lag must satisfy 1 <= h < n");
    const auto rho = autocorrelations(series, h_max);
    const double nd = static_cast<double>(n);
    std::vector<TestReport> out;
    out.reserve(h_max);
    double acc = 0.0;
    for (std::size_t j = 1; j <= h_max; ++j) {
        acc += rho[j - 1] * rho[j - 1] / (nd - static_cast<double>(j));
        TestReport r;
        r.test = "ljung_box";
        r.statistic = nd * (nd + 2.0) * acc;
        r.z_or_q = r.statistic;
        r.p_value = chi_square_sf(r.statistic, static_cast<double>(j));
        r.reject_at_5pct = r.p_value < kNominalSize;
        out.push_back(r);
    }
    return out;
}

TestReport portmanteau_test(std::span<const double> series, std::size_t h) {
    return portmanteau_sweep(series, h).back();
}

}  // namespace evt
