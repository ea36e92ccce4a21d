#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "evtail/distributions.hpp"
#include "evtail/rng.hpp"

namespace evt {

inline constexpr std::size_t kDefaultBurnin = 10000;

/// Law of the multiplicative coefficient A_t (and the additive B_t) of
/// X_t = A_t X_{t-1} + B_t.
struct SREDriver {
    enum class ALaw { TwoPoint, LogNormal };
    enum class BLaw { Constant, Innovation };

    ALaw a_law = ALaw::TwoPoint;
    double a_up = 2.0;
    double a_down = 0.5;
    double p_up = 1.0 / 3.0;
    double mu = -0.5;
    double sigma = 1.0;

    BLaw b_law = BLaw::Constant;
    double b_constant = 1.0;
    InnovationSpec b_innovation = InnovationSpec::shifted(0.5, 1.0);

    static SREDriver two_point(double a_up, double a_down, double p_up);
    static SREDriver lognormal(double mu, double sigma);

    /// Throws ConfigError on an invalid law. Does not check the drift.
    void validate() const;

    double mean_log_a() const;
    /// E A^s.
    double moment(double s) const;
    double prob_a_above_one() const;

    double draw_a(RngState& rng) const;
    double draw_b(RngState& rng) const;
};

struct LinearAR1 {
    double phi1 = 0.8;
    InnovationSpec innovations;
};

/// X_t = phi1 X_{t-1} + delta sgn(X_{t-1}) log(max(|X_{t-1}|, 1)) + Z_t, sgn(0) = 0.
struct NonlinearAR1 {
    double phi1 = 0.8;
    double delta = 0.6;
    InnovationSpec innovations;
};

struct StochasticRecurrence {
    SREDriver driver;
};

struct SeriesModel {
    std::variant<LinearAR1, NonlinearAR1, StochasticRecurrence> variant;
    std::size_t burnin = kDefaultBurnin;

    static SeriesModel linear_ar1(double phi1, InnovationSpec innovations,
                                  std::size_t burnin = kDefaultBurnin);
    static SeriesModel nonlinear_ar1(double phi1, double delta, InnovationSpec innovations,
                                     std::size_t burnin = kDefaultBurnin);
    static SeriesModel sre(SREDriver driver, std::size_t burnin = kDefaultBurnin);

    void validate() const;

    /// Innovation law of the AR variants, empty for the recurrence.
    std::optional<InnovationSpec> innovations() const;
};

/// Runs burnin + n steps from X = 0 (AR variants) or X = B_1 (recurrence) and
/// returns the last n. Throws SimulationError on a non-finite state; its step()
/// counts recursion steps from 1, burn-in included.
std::vector<double> simulate_series(const SeriesModel& model, std::size_t n, RngState& rng);

/// Paths W_j = prod_{i<=j} A_i^kappa, j = 1..horizon; path p draws from rng.substream(p).
class WalkEnsemble {
public:
    WalkEnsemble(double kappa, std::size_t horizon, std::size_t n_paths,
                 std::vector<double> values, std::optional<SREDriver> driver = std::nullopt);

    double kappa() const noexcept { return kappa_; }
    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t n_paths() const noexcept { return n_paths_; }
    const std::optional<SREDriver>& driver() const noexcept { return driver_; }

    /// W_1..W_J of path p.
    std::span<const double> path(std::size_t p) const {
        return {values_.data() + p * horizon_, horizon_};
    }

private:
    double kappa_;
    std::size_t horizon_;
    std::size_t n_paths_;
    std::vector<double> values_;
    std::optional<SREDriver> driver_;
};

WalkEnsemble simulate_walks(const SREDriver& driver, double kappa, std::size_t horizon,
                            std::size_t n_paths, const RngState& rng, unsigned workers = 1);

/// Root kappa > 0 of E A^kappa = 1. Closed form -2 mu / sigma^2 for the lognormal law.
double solve_kappa(const SREDriver& driver);

/// Root of a convex moment map m(s) with m(0) = 1, m'(0) < 0: bracket on
/// [1e-6, 64] with doubling, then Illinois false position guarded by bisection.
/// Throws NoRootError when m stays below 1 on the bracket.
double solve_moment_root(const std::function<double(double)>& moment);

}  // namespace evt
