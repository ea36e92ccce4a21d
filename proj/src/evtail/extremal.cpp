#include "evtail/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "evtail/errors.hpp"
#include "evtail/parallel.hpp"

namespace evt {

McEstimate extremal_index(const WalkEnsemble& ensemble) {
    const std::size_t paths = ensemble.n_paths();
    std::vector<double> capped(paths);
    for (std::size_t p = 0; p < paths; ++p) {
        const auto w = ensemble.path(p);
        capped[p] = std::min(*std::max_element(w.begin(), w.end()), 1.0);
    }
    const auto m = mean_and_error(capped);
    return {1.0 - m.mean, m.se};
}

ExtremalSummary cluster_size_probs(const WalkEnsemble& ensemble, std::size_t kmax) {
    if (kmax < 1) throw ConfigError("kmax must be at least 1");
    if (ensemble.horizon() <= kmax) throw ConfigError("horizon must exceed kmax");
    const std::size_t paths = ensemble.n_paths();
    const std::size_t depth = kmax + 1;

    // capped[k][p] = min(U_k, 1) on path p, k = 0..kmax+1
    std::vector<std::vector<double>> capped(depth + 1, std::vector<double>(paths, 1.0));
    std::vector<double> top(ensemble.horizon());
    for (std::size_t p = 0; p < paths; ++p) {
        const auto w = ensemble.path(p);
        std::copy(w.begin(), w.end(), top.begin());
        std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(depth), top.end(),
                          std::greater<>());
        for (std::size_t k = 1; k <= depth; ++k) capped[k][p] = std::min(top[k - 1], 1.0);
    }

    std::vector<double> means(depth + 1, 1.0);
    for (std::size_t k = 1; k <= depth; ++k) means[k] = mean_and_error(capped[k]).mean;

    ExtremalSummary out;
    std::vector<double> diff(paths);
    for (std::size_t k = 1; k <= depth; ++k) {
        for (std::size_t p = 0; p < paths; ++p) diff[p] = capped[k - 1][p] - capped[k][p];
        out.theta_k.push_back(means[k - 1] - means[k]);
        out.theta_k_se.push_back(mean_and_error(diff).se);
    }
    out.theta = out.theta_k[0];
    out.theta_se = out.theta_k_se[0];
    out.horizon_remainder = means[depth];

    std::vector<double> influence(paths);
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double pi = out.theta > 0.0 ? (out.theta_k[k - 1] - out.theta_k[k]) / out.theta : 0.0;
        out.pi_k.push_back(pi);
        if (out.theta > 0.0) {
            // delta method for a ratio of means
            for (std::size_t p = 0; p < paths; ++p) {
                const double num = capped[k - 1][p] - 2.0 * capped[k][p] + capped[k + 1][p];
                const double den = 1.0 - capped[1][p];
                influence[p] = (num - pi * den) / out.theta;
            }
            out.pi_k_se.push_back(mean_and_error(influence).se);
        } else {
            out.pi_k_se.push_back(0.0);
        }
        out.mean_cluster_size += static_cast<double>(k) * pi;
    }
    return out;
}

namespace {

/// Smallest geometric rate m(s) over s in (0, 1) and the tail sum it implies.
double geometric_tail(const std::function<double(double)>& rate, std::size_t horizon) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 100; ++i) {
        const double m = rate(i / 100.0);
        if (!(m < 1.0)) continue;
        const double tail = std::pow(m, static_cast<double>(horizon + 1)) / (1.0 - m);
        best = std::min(best, tail);
    }
    return best;
}

}  // namespace

HillVariance hill_avar_sre(const WalkEnsemble& ensemble, double tail_tol) {
    const std::size_t paths = ensemble.n_paths();
    const std::size_t horizon = ensemble.horizon();
    const double kappa = ensemble.kappa();
    std::vector<double> sums(paths);
    for (std::size_t p = 0; p < paths; ++p) {
        const auto w = ensemble.path(p);
        double s = 0.0;
        for (double v : w) s += std::min(v, 1.0);
        sums[p] = s;
    }
    const auto m = mean_and_error(sums);
    const double scale = 1.0 / (kappa * kappa);

    double tail = 0.0;
    if (ensemble.driver()) {
        const SREDriver& d = *ensemble.driver();
        tail = geometric_tail([&](double s) { return d.moment(kappa * s); }, horizon);
    } else {
        std::vector<double> last(paths);
        for (std::size_t p = 0; p < paths; ++p) last[p] = ensemble.path(p)[horizon - 1];
        tail = geometric_tail(
            [&](double s) {
                std::vector<double> pw(paths);
                for (std::size_t p = 0; p < paths; ++p) pw[p] = std::pow(last[p], s);
                return std::pow(mean_and_error(pw).mean, 1.0 / static_cast<double>(horizon));
            },
            horizon);
    }

    HillVariance out;
    out.value = scale * (1.0 + 2.0 * m.mean);
    out.se = scale * 2.0 * m.se;
    out.tail_bound = scale * 2.0 * tail;
    if (!(out.tail_bound <= tail_tol))
        throw HorizonError("horizon too small: omitted tail bound exceeds tolerance");
    return out;
}

McEstimate joint_exceedance(const WalkEnsemble& ensemble, const JointExceedanceQuery& query) {
    const std::size_t k = query.x.size();
    if (k == 0) throw ConfigError("joint exceedance query needs at least one threshold");
    if (k > ensemble.horizon() + 1) throw ConfigError("query longer than horizon + 1");
    const double kappa = ensemble.kappa();
    std::vector<double> weight(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (!(query.x[j] > 0.0)) throw DomainError("joint exceedance thresholds must be positive");
        weight[j] = std::pow(query.x[j], -kappa);
    }
    if (k == 1) return {weight[0], 0.0};  // W_0 = 1 on every path
    const bool all = query.mode == JointExceedanceQuery::Mode::All;
    std::vector<double> vals(ensemble.n_paths());
    for (std::size_t p = 0; p < ensemble.n_paths(); ++p) {
        const auto w = ensemble.path(p);
        double acc = weight[0];
        for (std::size_t j = 1; j < k; ++j) {
            const double v = weight[j] * w[j - 1];
            acc = all ? std::min(acc, v) : std::max(acc, v);
        }
        vals[p] = acc;
    }
    const auto m = mean_and_error(vals);
    return {m.mean, m.se};
}

}  // namespace evt
