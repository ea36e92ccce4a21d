#pragma once

#include <cstddef>
#include <vector>

#include "evtail/simulate.hpp"

namespace evt {

/// Monte Carlo point estimate with its standard error.
struct McEstimate {
    double value = 0.0;
    double se = 0.0;
};

struct ExtremalSummary {
    double theta = 0.0;
    double theta_se = 0.0;
    std::vector<double> theta_k;  // k = 1..kmax+1
    std::vector<double> theta_k_se;
    std::vector<double> pi_k;  // k = 1..kmax
    std::vector<double> pi_k_se;
    double mean_cluster_size = 0.0;  // sum_{k<=kmax} k pi_k
    double horizon_remainder = 0.0;  // E min(U_{kmax+1}, 1)
};

struct JointExceedanceQuery {
    enum class Mode { All, Some };
    std::vector<double> x;
    Mode mode = Mode::All;
};

struct HillVariance {
    double value = 0.0;
    double se = 0.0;
    double tail_bound = 0.0;  // bound on the omitted sum over j > J, scaled like value
};

/// theta = 1 - E min(U_1, 1) with U_1 = max_{j<=J} W_j.
McEstimate extremal_index(const WalkEnsemble& ensemble);

/// theta_k = E(min(U_{k-1},1) - min(U_k,1)) with min(U_0, 1) = 1, and
/// pi_k = (theta_k - theta_{k+1}) / theta. Needs horizon > kmax.
ExtremalSummary cluster_size_probs(const WalkEnsemble& ensemble, std::size_t kmax);

/// kappa^{-2} (1 + 2 sum_{j=1..J} E min(W_j, 1)). The omitted tail is bounded by
/// E min(W, 1) <= E W^s = m(s)^j, s in (0, 1), with m(s) = E A^{kappa s} taken
/// from the driver (or estimated from W_J when the ensemble has none).
/// Throws HorizonError when that bound exceeds `tail_tol`.
HillVariance hill_avar_sre(const WalkEnsemble& ensemble, double tail_tol = 1e-3);

/// E min_j (x_j^{-kappa} W_j) (mode All) or E max_j (...) (mode Some), j = 0..k-1, W_0 = 1.
McEstimate joint_exceedance(const WalkEnsemble& ensemble, const JointExceedanceQuery& query);

}  // namespace evt
