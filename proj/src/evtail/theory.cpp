#include "evtail/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evtail/errors.hpp"

namespace evt {

CoefficientSequence CoefficientSequence::ar1(double phi, double gamma, double tol) {
    if (!(std::abs(phi) < 1.0)) throw DomainError("AR(1) coefficients need |phi| < 1");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    CoefficientSequence seq;
    seq.truncation_tol = tol;
    double psi = 1.0;
    for (long j = 0; std::pow(std::abs(psi), 1.0 / gamma) >= tol; ++j) {
        seq.psi.emplace_back(j, psi);
        psi *= phi;
    }
    return seq;
}

CoefficientSequence CoefficientSequence::one_sided(std::vector<double> values, double tol) {
    CoefficientSequence seq;
    seq.truncation_tol = tol;
    for (std::size_t j = 0; j < values.size(); ++j)
        seq.psi.emplace_back(static_cast<long>(j), values[j]);
    return seq;
}

void CoefficientSequence::validate() const {
    if (psi.empty()) throw DomainError("coefficient sequence is empty");
    if (std::none_of(psi.begin(), psi.end(), [](const auto& e) { return e.second != 0.0; }))
        throw DomainError("coefficient sequence is identically zero");
}

SecondOrderTail SecondOrderTail::shifted_pareto(double gamma, double p) {
    return SecondOrderTail{p, -p / gamma, 1.0 - p, -(1.0 - p) / gamma};
}

double tail_ratio_linear(const CoefficientSequence& seq, double gamma, double p) {
    seq.validate();
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
    const double inv = 1.0 / gamma;
    double sum = 0.0;
    for (const auto& [j, psi] : seq.psi) {
        if (psi > 0.0)
            sum += p * std::pow(psi, inv);
        else if (psi < 0.0)
            sum += (1.0 - p) * std::pow(-psi, inv);
    }
    return sum / p;
}

double tail_ratio_ar1(double phi, double gamma, double p) {
    if (!(std::abs(phi) < 1.0)) throw DomainError("tail ratio needs |phi| < 1");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
    const double q = std::pow(std::abs(phi), 1.0 / gamma);
    if (phi >= 0.0) return 1.0 / (1.0 - q);
    return (1.0 + q * (1.0 - p) / p) / (1.0 - std::pow(std::abs(phi), 2.0 / gamma));
}

SeriesValue hill_avar_linear_detail(const CoefficientSequence& seq, double gamma) {
    seq.validate();
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    long last = 0;
    for (const auto& [j, psi] : seq.psi) {
        if (j < 0) throw DomainError("asymptotic Hill variance needs a one-sided sequence");
        last = std::max(last, j);
    }
    const double inv = 1.0 / gamma;
    std::vector<double> a(static_cast<std::size_t>(last) + 1, 0.0);
    for (const auto& [j, psi] : seq.psi) a[static_cast<std::size_t>(j)] += std::abs(psi);
    for (auto& v : a) v = std::pow(v, inv);

    double norm = 0.0;
    for (double v : a) norm += v;
    if (!std::isfinite(norm) || !(norm > 0.0))
        throw DomainError("normalizing sum of |psi|^{1/gamma} diverges or vanishes");

    const std::size_t m = a.size();
    double cross = 0.0;
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t l = j; l < m; ++l) cross += std::min(a[j], a[l]);

    SeriesValue out;
    out.value = gamma * gamma * (1.0 + 2.0 * cross / norm);
    if (m >= 2 && a[m - 1] > 0.0) {
        const double r = a[m - 1] / a[m - 2];
        if (r < 1.0) {
            // sum_{l>last} l a_l with a_l <= a_last r^{l-last}
            const double md = static_cast<double>(m - 1);
            const double tail = a[m - 1] * (md * r / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
            out.remainder_bound = gamma * gamma * 2.0 * tail / norm;
        } else {
            out.remainder_bound = std::numeric_limits<double>::infinity();
        }
    }
    return out;
}

double hill_avar_linear(const CoefficientSequence& seq, double gamma) {
    return hill_avar_linear_detail(seq, gamma).value;
}

double hill_avar_ar1(double phi, double gamma) {
    if (!(std::abs(phi) < 1.0)) throw DomainError("Hill variance needs |phi| < 1");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    const double q = std::pow(std::abs(phi), 1.0 / gamma);
    return gamma * gamma * (1.0 + q) / (1.0 - q);
}

double rmse_ratio_ar1(double phi, double gamma) {
    if (!(std::abs(phi) < 1.0)) throw DomainError("RMSE ratio needs |phi| < 1");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    const double a = std::abs(phi);
    const double q = std::pow(a, 1.0 / gamma);
    const double r = std::pow(a, 1.0 / gamma + 1.0);
    const double num = (1.0 - r) * (1.0 - r);
    const double den = (1.0 - q) * (1.0 - q) * std::pow(1.0 + q, 2.0 * gamma);
    return std::pow(num / den, 1.0 / (2.0 * gamma + 1.0));
}

SecondOrderConstants second_order_constants(const CoefficientSequence& seq, double gamma,
                                            const SecondOrderTail& tail) {
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    const double inv = 1.0 / gamma;
    SecondOrderConstants out;
    for (const auto& [j, psi] : seq.psi) {
        if (psi > 0.0) {
            out.d_psi += tail.c * std::pow(psi, inv);
            out.D_psi += tail.c * tail.d * std::pow(psi, inv + 1.0);
        } else if (psi < 0.0) {
            out.d_psi += tail.c_tilde * std::pow(-psi, inv);
            out.D_psi += tail.c_tilde * tail.d_tilde * std::pow(-psi, inv + 1.0);
        }
    }
    return out;
}

}  // namespace evt
