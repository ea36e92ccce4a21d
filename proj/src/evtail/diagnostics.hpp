#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace evt {

struct TestReport {
    std::string test;
    double statistic = 0.0;  // turning points, rising steps, or Q
    double z_or_q = 0.0;     // standardized statistic (normal tests) or Q
    double p_value = 1.0;
    bool reject_at_5pct = false;
};

inline constexpr double kNominalSize = 0.05;
inline constexpr std::size_t kDefaultPortmanteauLag = 20;

/// Turning points X_{i-1} < X_i > X_{i+1} or X_{i-1} > X_i < X_{i+1} (strict).
/// Under i.i.d. data mean 2(n-2)/3, variance (16n-29)/90; two-sided normal test.
TestReport turning_point_test(std::span<const double> series);

/// Count of X_i > X_{i-1}. Mean (n-1)/2, variance (n+1)/12; two-sided normal test.
TestReport difference_sign_test(std::span<const double> series);

/// Mean-centred sample autocorrelations rho_1..rho_h.
std::vector<double> autocorrelations(std::span<const double> series, std::size_t h);

/// Ljung-Box Q = n(n+2) sum_{j<=h} rho_j^2 / (n-j), referred to chi^2_h.
TestReport portmanteau_test(std::span<const double> series, std::size_t h = kDefaultPortmanteauLag);

/// Ljung-Box reports for every lag 1..h_max from one autocorrelation pass.
std::vector<TestReport> portmanteau_sweep(std::span<const double> series, std::size_t h_max);

}  // namespace evt
