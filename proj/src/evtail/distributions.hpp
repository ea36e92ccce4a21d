#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "evtail/rng.hpp"

namespace evt {

enum class InnovationKind {
    TwoSidedPareto,         // survival p*x^(-1/g) for x >= 1, no mass on (-1, 1)
    ShiftedTwoSidedPareto,  // survival p*(x+1)^(-1/g) for x >= 0
    Constant,               // degenerate at `value`; test hook only, not accepted from JSON
};

/// Balanced two-sided Pareto innovation law.
///
/// Right tail F̄(x) = p * x^(-1/gamma) (unshifted, x >= 1) or p * (x+1)^(-1/gamma)
/// (shifted, x >= 0); the left tail mirrors it with weight 1 - p.
struct InnovationSpec {
    InnovationKind kind = InnovationKind::TwoSidedPareto;
    double gamma = 0.5;
    double p = 0.5;
    double value = 0.0;  // Constant kind only

    static InnovationSpec two_sided(double gamma, double p = 0.5);
    static InnovationSpec shifted(double gamma, double p = 0.5);
    static InnovationSpec constant_for_testing(double value);

    /// Throws ConfigError unless gamma > 0 and 0 < p <= 1.
    void validate() const;

    /// Smallest point of the support.
    double lower_edge() const;

    bool operator==(const InnovationSpec&) const = default;
};

std::string_view to_string(InnovationKind kind);

/// Generalized inverse inf{x : F(x) >= u}. Throws DomainError unless 0 < u < 1.
double quantile_fn(const InnovationSpec& spec, double u);

/// F̄(x) = P{Z > x}.
double survival_fn(const InnovationSpec& spec, double x);

/// F(x) = P{Z <= x}.
double cdf_fn(const InnovationSpec& spec, double x);

/// One inverse-CDF draw; consumes exactly one uniform (none for Constant).
double draw(const InnovationSpec& spec, RngState& rng);

std::vector<double> sample(const InnovationSpec& spec, RngState& rng, std::size_t n);

}  // namespace evt
