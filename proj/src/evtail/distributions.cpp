#include "evtail/distributions.hpp"

#include <cmath>

#include "evtail/errors.hpp"

namespace evt {

InnovationSpec InnovationSpec::two_sided(double gamma, double p) {
    InnovationSpec s{InnovationKind::TwoSidedPareto, gamma, p, 0.0};
    s.validate();
    return s;
}

InnovationSpec InnovationSpec::shifted(double gamma, double p) {
    InnovationSpec s{InnovationKind::ShiftedTwoSidedPareto, gamma, p, 0.0};
    s.validate();
    return s;
}

InnovationSpec InnovationSpec::constant_for_testing(double value) {
    return InnovationSpec{InnovationKind::Constant, 1.0, 1.0, value};
}

void InnovationSpec::validate() const {
    if (kind == InnovationKind::Constant) return;
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ConfigError("innovation gamma must be positive and finite");
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("innovation p must lie in (0, 1]");
}

double InnovationSpec::lower_edge() const {
    switch (kind) {
        case InnovationKind::TwoSidedPareto:
            return p < 1.0 ? -INFINITY : 1.0;
        case InnovationKind::ShiftedTwoSidedPareto:
            return p < 1.0 ? -INFINITY : 0.0;
        case InnovationKind::Constant:
            return value;
    }
    return -INFINITY;
}

std::string_view to_string(InnovationKind kind) {
    switch (kind) {
        case InnovationKind::TwoSidedPareto:
            return "two-sided-pareto";
        case InnovationKind::ShiftedTwoSidedPareto:
            return "shifted-two-sided-pareto";
        case InnovationKind::Constant:
            return "constant";
    }
    return "unknown";
}

double quantile_fn(const InnovationSpec& spec, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    const double q = 1.0 - spec.p;
    switch (spec.kind) {
        case InnovationKind::TwoSidedPareto:
            // Left branch is closed at u = 1 - p, which maps to -1: the flat CDF
            // segment on (-1, 1) belongs to the left edge of the gap.
            if (u <= q) return -std::pow(u / q, -spec.gamma);
            return std::pow(spec.p / (1.0 - u), spec.gamma);
        case InnovationKind::ShiftedTwoSidedPareto:
            if (u <= q) return 1.0 - std::pow(u / q, -spec.gamma);
            return std::pow(spec.p / (1.0 - u), spec.gamma) - 1.0;
        case InnovationKind::Constant:
            return spec.value;
    }
    return NAN;
}

double survival_fn(const InnovationSpec& spec, double x) {
    const double inv = 1.0 / spec.gamma;
    const double q = 1.0 - spec.p;
    switch (spec.kind) {
        case InnovationKind::TwoSidedPareto:
            if (x >= 1.0) return spec.p * std::pow(x, -inv);
            if (x >= -1.0) return spec.p;
            return 1.0 - q * std::pow(-x, -inv);
        case InnovationKind::ShiftedTwoSidedPareto:
            if (x >= 0.0) return spec.p * std::pow(x + 1.0, -inv);
            return 1.0 - q * std::pow(1.0 - x, -inv);
        case InnovationKind::Constant:
            return x < spec.value ? 1.0 : 0.0;
    }
    return NAN;
}

double cdf_fn(const InnovationSpec& spec, double x) {
    const double inv = 1.0 / spec.gamma;
    const double q = 1.0 - spec.p;
    switch (spec.kind) {
        case InnovationKind::TwoSidedPareto:
            if (x <= -1.0) return q * std::pow(-x, -inv);
            if (x < 1.0) return q;
            return 1.0 - spec.p * std::pow(x, -inv);
        case InnovationKind::ShiftedTwoSidedPareto:
            if (x < 0.0) return q * std::pow(1.0 - x, -inv);
            return 1.0 - spec.p * std::pow(x + 1.0, -inv);
        case InnovationKind::Constant:
            return x < spec.value ? 0.0 : 1.0;
    }
    return NAN;
}

double draw(const InnovationSpec& spec, RngState& rng) {
    if (spec.kind == InnovationKind::Constant) return spec.value;
    return quantile_fn(spec, rng.uniform());
}

std::vector<double> sample(const InnovationSpec& spec, RngState& rng, std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = draw(spec, rng);
    return out;
}

}  // namespace evt
