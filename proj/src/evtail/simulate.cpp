#include "evtail/simulate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "evtail/errors.hpp"
#include "evtail/parallel.hpp"

namespace evt {

SREDriver SREDriver::two_point(double a_up, double a_down, double p_up) {
    SREDriver d;
    d.a_law = ALaw::TwoPoint;
    d.a_up = a_up;
    d.a_down = a_down;
    d.p_up = p_up;
    d.validate();
    return d;
}

SREDriver SREDriver::lognormal(double mu, double sigma) {
    SREDriver d;
    d.a_law = ALaw::LogNormal;
    d.mu = mu;
    d.sigma = sigma;
    d.validate();
    return d;
}

void SREDriver::validate() const {
    if (a_law == ALaw::TwoPoint) {
        if (!(a_up > 0.0) || !(a_down > 0.0) || !std::isfinite(a_up) || !std::isfinite(a_down))
            throw ConfigError("two-point driver values must be positive and finite");
        if (!(p_up > 0.0 && p_up < 1.0)) throw ConfigError("two-point p_up must lie in (0, 1)");
    } else {
        if (!std::isfinite(mu)) throw ConfigError("lognormal mu must be finite");
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw ConfigError("lognormal sigma must be positive");
    }
    if (b_law == BLaw::Constant) {
        if (!(b_constant > 0.0) || !std::isfinite(b_constant))
            throw ConfigError("constant B must be positive");
    } else {
        b_innovation.validate();
        if (b_innovation.kind == InnovationKind::Constant || b_innovation.p != 1.0)
            throw ConfigError("B innovation law must have positive support (p = 1)");
    }
}

double SREDriver::mean_log_a() const {
    if (a_law == ALaw::TwoPoint)
        return p_up * std::log(a_up) + (1.0 - p_up) * std::log(a_down);
    return mu;
}

double SREDriver::moment(double s) const {
    if (a_law == ALaw::TwoPoint)
        return p_up * std::pow(a_up, s) + (1.0 - p_up) * std::pow(a_down, s);
    return std::exp(s * mu + 0.5 * s * s * sigma * sigma);
}

double SREDriver::prob_a_above_one() const {
    if (a_law == ALaw::TwoPoint)
        return (a_up > 1.0 ? p_up : 0.0) + (a_down > 1.0 ? 1.0 - p_up : 0.0);
    // P{log A > 0} for log A ~ N(mu, sigma^2)
    return 0.5 * std::erfc(-mu / (sigma * std::numbers::sqrt2));
}

double SREDriver::draw_a(RngState& rng) const {
    if (a_law == ALaw::TwoPoint) return rng.uniform() < p_up ? a_up : a_down;
    // Box-Muller, cosine branch only: two uniforms per draw.
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return std::exp(mu + sigma * z);
}

double SREDriver::draw_b(RngState& rng) const {
    if (b_law == BLaw::Constant) return b_constant;
    return draw(b_innovation, rng);
}

SeriesModel SeriesModel::linear_ar1(double phi1, InnovationSpec innovations, std::size_t burnin) {
    SeriesModel m{LinearAR1{phi1, innovations}, burnin};
    m.validate();
    return m;
}

SeriesModel SeriesModel::nonlinear_ar1(double phi1, double delta, InnovationSpec innovations,
                                       std::size_t burnin) {
    SeriesModel m{NonlinearAR1{phi1, delta, innovations}, burnin};
    m.validate();
    return m;
}

SeriesModel SeriesModel::sre(SREDriver driver, std::size_t burnin) {
    SeriesModel m{StochasticRecurrence{driver}, burnin};
    m.validate();
    return m;
}

void SeriesModel::validate() const {
    if (const auto* lin = std::get_if<LinearAR1>(&variant)) {
        if (!(std::abs(lin->phi1) < 1.0)) throw ConfigError("linear AR(1) requires |phi1| < 1");
        lin->innovations.validate();
    } else if (const auto* nl = std::get_if<NonlinearAR1>(&variant)) {
        if (!std::isfinite(nl->phi1) || !std::isfinite(nl->delta))
            throw ConfigError("nonlinear AR(1) coefficients must be finite");
        nl->innovations.validate();
    } else {
        std::get<StochasticRecurrence>(variant).driver.validate();
    }
}

std::optional<InnovationSpec> SeriesModel::innovations() const {
    if (const auto* lin = std::get_if<LinearAR1>(&variant)) return lin->innovations;
    if (const auto* nl = std::get_if<NonlinearAR1>(&variant)) return nl->innovations;
    return std::nullopt;
}

namespace {

template <class Step>
std::vector<double> run_recursion(double start, std::size_t burnin, std::size_t n, Step&& step) {
    std::vector<double> out(n);
    double x = start;
    const std::size_t total = burnin + n;
    for (std::size_t s = 0; s < total; ++s) {
        x = step(x);
        if (!std::isfinite(x)) throw SimulationError("non-finite value in simulated series", s + 1);
        if (s >= burnin) out[s - burnin] = x;
    }
    return out;
}

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::vector<double> simulate_series(const SeriesModel& model, std::size_t n, RngState& rng) {
    if (n == 0) throw ConfigError("series length must be at least 1");
    model.validate();
    if (const auto* lin = std::get_if<LinearAR1>(&model.variant)) {
        const double phi = lin->phi1;
        const InnovationSpec& z = lin->innovations;
        return run_recursion(0.0, model.burnin, n,
                             [&](double x) { return phi * x + draw(z, rng); });
    }
    if (const auto* nl = std::get_if<NonlinearAR1>(&model.variant)) {
        const double phi = nl->phi1;
        const double delta = nl->delta;
        const InnovationSpec& z = nl->innovations;
        return run_recursion(0.0, model.burnin, n, [&](double x) {
            const double drift = phi * x + delta * (sgn(x) * std::log(std::max(std::abs(x), 1.0)));
            return drift + draw(z, rng);
        });
    }
    const SREDriver& d = std::get<StochasticRecurrence>(model.variant).driver;
    const double start = d.draw_b(rng);
    return run_recursion(start, model.burnin, n, [&](double x) {
        const double a = d.draw_a(rng);
        return a * x + d.draw_b(rng);
    });
}

WalkEnsemble::WalkEnsemble(double kappa, std::size_t horizon, std::size_t n_paths,
                           std::vector<double> values, std::optional<SREDriver> driver)
    : kappa_(kappa),
      horizon_(horizon),
      n_paths_(n_paths),
      values_(std::move(values)),
      driver_(std::move(driver)) {
    if (!(kappa_ > 0.0)) throw ConfigError("kappa must be positive");
    if (horizon_ == 0 || n_paths_ == 0) throw ConfigError("walk ensemble must be nonempty");
    if (values_.size() != horizon_ * n_paths_)
        throw ConfigError("walk values do not match horizon x paths");
}

WalkEnsemble simulate_walks(const SREDriver& driver, double kappa, std::size_t horizon,
                            std::size_t n_paths, const RngState& rng, unsigned workers) {
    driver.validate();
    if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
    if (!(driver.mean_log_a() < 0.0))
        throw ConfigError("drift check failed: E log A must be negative");
    if (horizon == 0 || n_paths == 0) throw ConfigError("horizon and path count must be positive");

    std::vector<double> values(horizon * n_paths);
    parallel_for(n_paths, workers, [&](std::size_t p) {
        RngState stream = rng.substream(p);
        double w = 1.0;
        double* row = values.data() + p * horizon;
        for (std::size_t j = 0; j < horizon; ++j) {
            w *= std::pow(driver.draw_a(stream), kappa);
            row[j] = w;
        }
    });
    return WalkEnsemble(kappa, horizon, n_paths, std::move(values), driver);
}

double solve_moment_root(const std::function<double(double)>& moment) {
    constexpr double kLower = 1e-6;
    constexpr double kUpper = 64.0;
    constexpr double kTol = 1e-12;
    auto f = [&](double s) { return moment(s) - 1.0; };

    double lo = kLower;
    double flo = f(lo);
    if (!(flo < 0.0)) throw NoRootError("moment map is not below 1 near zero");
    double hi = 1.0;
    double fhi = f(hi);
    while (fhi < 0.0) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        if (hi > kUpper) throw NoRootError("no sign change of E A^kappa - 1 on (0, 64]");
        fhi = f(hi);
    }
    if (fhi == 0.0) return hi;

    // Illinois false position, with a bisection step whenever the bracket
    // fails to shrink by half.
    int stale_side = 0;
    for (int iter = 0; iter < 300; ++iter) {
        const double width = hi - lo;
        double x = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        double fx = f(x);
        if (std::abs(fx) <= kTol || width <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            return x;
        if (fx < 0.0) {
            lo = x;
            flo = fx;
            if (stale_side == -1) fhi *= 0.5;
            stale_side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (stale_side == 1) flo *= 0.5;
            stale_side = 1;
        }
        if (hi - lo > 0.5 * width) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (std::abs(fm) <= kTol) return mid;
            if (fm < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
                fhi = fm;
            }
            stale_side = 0;
        }
    }
    return 0.5 * (lo + hi);
}

double solve_kappa(const SREDriver& driver) {
    driver.validate();
    if (!(driver.mean_log_a() < 0.0))
        throw NoRootError("E log A must be negative for a Kesten root to exist");
    if (!(driver.prob_a_above_one() > 0.0)) throw NoRootError("P{A > 1} is zero");
    if (driver.a_law == SREDriver::ALaw::LogNormal)
        return -2.0 * driver.mu / (driver.sigma * driver.sigma);
    return solve_moment_root([&](double s) { return driver.moment(s); });
}

}  // namespace evt
