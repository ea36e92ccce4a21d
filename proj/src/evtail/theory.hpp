#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace evt {

/// Finite truncation of the MA(infinity) weights psi_j of a linear process.
struct CoefficientSequence {
    std::vector<std::pair<long, double>> psi;  // (index j, psi_j)
    double truncation_tol = 1e-12;

    /// psi_j = phi^j, j = 0, 1, ..., stopping before |psi_j|^{1/gamma} < tol.
    static CoefficientSequence ar1(double phi, double gamma, double tol = 1e-12);

    /// psi_j = values[j], j = 0, 1, ....
    static CoefficientSequence one_sided(std::vector<double> values, double tol = 1e-12);

    /// Throws DomainError when empty or identically zero.
    void validate() const;
};

/// Second-order tail expansion F̄_Z(x) = x^{-1/gamma}(c + d x^{-1} + o(x^{-1})),
/// F_Z(-x) = x^{-1/gamma}(c_tilde + d_tilde x^{-1} + o(x^{-1})).
struct SecondOrderTail {
    double c = 0.5;
    double d = 0.0;
    double c_tilde = 0.5;
    double d_tilde = 0.0;

    /// Constants of the shifted two-sided Pareto law: c = p, d = -p/gamma
    /// (and 1-p on the left), from (x+1)^{-1/gamma} = x^{-1/gamma}(1 - x^{-1}/gamma + ...).
    static SecondOrderTail shifted_pareto(double gamma, double p);
};

/// lim F̄_X(x)/F̄_Z(x) = (1/p) sum_j [p psi_j^{1/g} 1{psi_j>0} + (1-p)|psi_j|^{1/g} 1{psi_j<0}].
/// Holds under the usual summability conditions on psi (and E Z = 0 when
/// gamma < 1); these are not checked.
double tail_ratio_linear(const CoefficientSequence& seq, double gamma, double p);

/// Closed form of tail_ratio_linear for psi_j = phi^j.
double tail_ratio_ar1(double phi, double gamma, double p);

struct SeriesValue {
    double value = 0.0;
    double remainder_bound = 0.0;  // bound on the truncated tail of the series
};

/// gamma^2 (1 + 2 sum_{j>=1} sum_{i>=0} min(|psi_j|^{1/g}, |psi_{i+j}|^{1/g}) / sum_i |psi_i|^{1/g})
/// for a one-sided sequence (indices 0, 1, ...). The remainder bound assumes
/// the omitted weights decay at least geometrically at the rate of the last two terms.
SeriesValue hill_avar_linear_detail(const CoefficientSequence& seq, double gamma);
double hill_avar_linear(const CoefficientSequence& seq, double gamma);

/// gamma^2 (1 + q)/(1 - q) with q = |phi|^{1/gamma}.
double hill_avar_ar1(double phi, double gamma);

/// [ (1-|phi|^{1/g+1})^2 / ((1-|phi|^{1/g})^2 (1+|phi|^{1/g})^{2g}) ]^{1/(2g+1)}:
/// ratio of minimal asymptotic RMSEs of the residual-based and direct Hill
/// estimators under shifted-Pareto innovations.
double rmse_ratio_ar1(double phi, double gamma);

struct SecondOrderConstants {
    double d_psi = 0.0;
    double D_psi = 0.0;
};

/// d_psi = sum_j [c psi_j^{1/g} 1{psi_j>0} + c~ |psi_j|^{1/g} 1{psi_j<0}],
/// D_psi = sum_j [c d psi_j^{1/g+1} 1{psi_j>0} + c~ d~ |psi_j|^{1/g+1} 1{psi_j<0}].
SecondOrderConstants second_order_constants(const CoefficientSequence& seq, double gamma,
                                            const SecondOrderTail& tail);

}  // namespace evt
