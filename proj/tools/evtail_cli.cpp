// evtail command-line front end. Links only the C interface.

#include <evtail.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr std::uint64_t kDefaultSeed = 20240601ULL;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void usage_error(const std::string& message) { throw Failure{kExitUsage, message}; }

void check(evt_status status) {
    if (status == EVT_OK) return;
    const int code = (status == EVT_ERR_CONFIG || status == EVT_ERR_INVALID_ARGUMENT)
                         ? kExitUsage
                         : kExitNumeric;
    throw Failure{code, std::string(evt_status_name(status)) + ": " + evt_last_error()};
}

struct RngDel { void operator()(evt_rng* p) const { evt_rng_destroy(p); } };
struct ModelDel { void operator()(evt_model* p) const { evt_model_destroy(p); } };
struct DriverDel { void operator()(evt_driver* p) const { evt_driver_destroy(p); } };
struct WalksDel { void operator()(evt_walks* p) const { evt_walks_destroy(p); } };
struct ExperimentDel { void operator()(evt_experiment* p) const { evt_experiment_destroy(p); } };

using Rng = std::unique_ptr<evt_rng, RngDel>;
using Model = std::unique_ptr<evt_model, ModelDel>;
using Driver = std::unique_ptr<evt_driver, DriverDel>;
using Walks = std::unique_ptr<evt_walks, WalksDel>;
using Experiment = std::unique_ptr<evt_experiment, ExperimentDel>;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) usage_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline JSON when the argument starts with '{', a file path otherwise.
std::string json_argument(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') return arg;
    return read_file(arg);
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        usage_error(what + ": " + e.what());
    }
}

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) usage_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) usage_error("'" + path + "' is empty");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;
    if (col == header.size()) {
        if (header.size() != 1) usage_error("no column '" + column + "' in '" + path + "'");
        col = 0;
    }
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t i = 0; i <= col; ++i)
            if (!std::getline(ss, cell, ',')) usage_error("short row " + std::to_string(row));
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str() || !std::isfinite(v))
            usage_error("bad number '" + cell + "' in row " + std::to_string(row));
        values.push_back(v);
    }
    return values;
}

void emit(json j) {
    json out;
    out["schema_version"] = kSchemaVersion;
    for (auto& [k, v] : j.items()) out[k] = v;
    std::cout << out.dump(2) << '\n';
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Model model_from_text(const std::string& text) {
    evt_model* m = nullptr;
    check(evt_model_from_json(text.c_str(), &m));
    return Model(m);
}

Driver driver_from_text(const std::string& text) {
    evt_driver* d = nullptr;
    check(evt_driver_from_json(text.c_str(), &d));
    return Driver(d);
}

// ---- options of every subcommand

struct Common {
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::string config;
};

void add_common(CLI::App* sub, Common& c, bool seeded) {
    if (seeded)
        sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
    sub->add_option("--workers", c.workers, "worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    sub->add_option("--config", c.config,
                    "JSON file of option values; explicit flags take precedence");
}

struct SimulateArgs {
    Common common;
    std::string model;
    std::size_t n = 0;
};

struct EstimateArgs {
    Common common;
    std::string input;
    std::string column = "x";
    std::string method;
    std::size_t k = 0;
    double t = 0.001;
    bool absolute = false;
    bool no_center = false;
};

struct TheoryArgs {
    Common common;
    std::string quantity;
    double phi = 0.0;
    double gamma = 0.0;
    double p = 0.5;
    double tol = 1e-12;
};

struct ExtremalArgs {
    Common common;
    std::string quantity;
    std::string driver;
    std::string kappa = "auto";
    std::size_t paths = 100000;
    std::size_t horizon = 200;
    std::size_t kmax = 20;
    std::vector<double> x{1.0, 1.0};
    std::string mode = "all";
    double tail_tol = 1e-3;
};

struct DiagnoseArgs {
    Common common;
    std::string input;
    std::string column = "x";
    std::vector<std::string> tests{"tp", "ds", "lb"};
    std::size_t h = 20;
    bool residuals = false;
};

struct ExperimentArgs {
    Common common;
    std::string preset;
    std::size_t replicates = 0;  // 0: preset default
    std::string out;
    std::string scale = "desk";
    std::size_t n = 2000;
    double t = 0.001;
    std::size_t k_min = 10;
    std::size_t k_max = 1000;
    std::size_t k_step = 5;
    std::size_t truth_reps = 0;    // 0: from scale
    std::size_t truth_length = 0;  // 0: from scale
    std::size_t max_lag = 30;
};

struct Args {
    SimulateArgs simulate;
    EstimateArgs estimate;
    TheoryArgs theory;
    ExtremalArgs extremal;
    DiagnoseArgs diagnose;
    ExperimentArgs experiment;
};

std::unique_ptr<CLI::App> build_app(Args& a) {
    auto app = std::make_unique<CLI::App>(
        "Direct and model-based extreme quantile estimation for heavy-tailed time series",
        "evtail");
    app->require_subcommand(1);
    app->set_version_flag("--version", std::string(evt_version()));

    auto* sim = app->add_subcommand("simulate", "simulate a series, CSV t,x on stdout");
    sim->add_option("--model", a.simulate.model, "model JSON (file or inline)")->required();
    sim->add_option("--n", a.simulate.n, "series length")->required()->check(CLI::PositiveNumber);
    add_common(sim, a.simulate.common, true);

    auto* est = app->add_subcommand("estimate", "tail index or extreme quantile of a CSV series");
    est->add_option("--input", a.estimate.input, "CSV file")->required();
    est->add_option("--column", a.estimate.column, "column to read")->capture_default_str();
    est->add_option("--method", a.estimate.method)
        ->required()
        ->check(CLI::IsMember({"hill", "weissman-direct", "weissman-model"}));
    est->add_option("--k", a.estimate.k, "number of upper order statistics")->required();
    est->add_option("--t", a.estimate.t, "exceedance probability")->capture_default_str();
    est->add_flag("--abs", a.estimate.absolute, "absolute values (residuals for weissman-model)");
    est->add_flag("--no-center", a.estimate.no_center, "AR(1) fit without mean centring");
    add_common(est, a.estimate.common, false);

    auto* th = app->add_subcommand("theory", "closed-form asymptotics of AR(1) processes");
    th->add_option("quantity", a.theory.quantity)
        ->required()
        ->check(CLI::IsMember({"tail-ratio", "hill-avar", "rmse-ratio", "second-order"}));
    th->add_option("--phi", a.theory.phi)->required();
    th->add_option("--gamma", a.theory.gamma)->required();
    th->add_option("--p", a.theory.p, "right-tail weight")->capture_default_str();
    th->add_option("--tol", a.theory.tol, "series truncation tolerance")->capture_default_str();
    add_common(th, a.theory.common, false);

    auto* ex = app->add_subcommand("extremal", "extremal dependence of X = A X + B");
    ex->add_option("quantity", a.extremal.quantity)
        ->required()
        ->check(CLI::IsMember({"theta", "cluster", "hill-avar", "joint"}));
    ex->add_option("--driver", a.extremal.driver, "driver JSON (file or inline)")->required();
    ex->add_option("--kappa", a.extremal.kappa, "'auto' or a positive value")
        ->capture_default_str();
    ex->add_option("--paths", a.extremal.paths)->capture_default_str()->check(CLI::PositiveNumber);
    ex->add_option("--horizon", a.extremal.horizon)
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    ex->add_option("--kmax", a.extremal.kmax, "largest cluster size (cluster)")
        ->capture_default_str();
    ex->add_option("--x", a.extremal.x, "thresholds x_0,...,x_{k-1} (joint)")->delimiter(',');
    ex->add_option("--mode", a.extremal.mode, "all or some (joint)")
        ->check(CLI::IsMember({"all", "some"}))
        ->capture_default_str();
    ex->add_option("--tail-tol", a.extremal.tail_tol, "bound on the truncated tail (hill-avar)")
        ->capture_default_str();
    add_common(ex, a.extremal.common, true);

    auto* dg = app->add_subcommand("diagnose", "independence tests on a CSV series");
    dg->set_help_flag("--help", "Print this help message and exit");  // frees --h for the lag
    dg->add_option("--input", a.diagnose.input, "CSV file")->required();
    dg->add_option("--column", a.diagnose.column, "column to read")->capture_default_str();
    dg->add_option("--tests", a.diagnose.tests, "subset of tp,ds,lb")
        ->delimiter(',')
        ->check(CLI::IsMember({"tp", "ds", "lb"}));
    dg->add_option("--h", a.diagnose.h, "Ljung-Box lag")->capture_default_str();
    dg->add_flag("--residuals", a.diagnose.residuals, "test AR(1) residuals of the series");
    add_common(dg, a.diagnose.common, false);

    auto* xp = app->add_subcommand("experiment", "Monte Carlo studies");
    xp->add_option("preset", a.experiment.preset)
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "figure1", "figure3", "figure4",
                               "figure2-scatter", "power"}));
    xp->add_option("--replicates", a.experiment.replicates,
                   "replicates (default 500, power 2000)");
    xp->add_option("--out", a.experiment.out, "output directory")->required();
    xp->add_option("--scale", a.experiment.scale, "ground-truth effort")
        ->check(CLI::IsMember({"desk", "paper"}))
        ->capture_default_str();
    xp->add_option("--n", a.experiment.n, "series length")->capture_default_str();
    xp->add_option("--t", a.experiment.t, "exceedance probability")->capture_default_str();
    xp->add_option("--k-min", a.experiment.k_min)->capture_default_str();
    xp->add_option("--k-max", a.experiment.k_max)->capture_default_str();
    xp->add_option("--k-step", a.experiment.k_step)->capture_default_str();
    xp->add_option("--truth-reps", a.experiment.truth_reps, "override the scale's replicate count");
    xp->add_option("--truth-length", a.experiment.truth_length, "override the scale's length");
    xp->add_option("--max-lag", a.experiment.max_lag, "largest Ljung-Box lag (power)")
        ->capture_default_str();
    add_common(xp, a.experiment.common, true);
    return app;
}

bool given_on_command_line(const std::vector<std::string>& argv, const std::string& flag) {
    return std::any_of(argv.begin(), argv.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

// Turns `{"key": value}` of a config file into `--key value` tokens for the
// options of `sub` that are not on the command line.
std::vector<std::string> config_tokens(const CLI::App& sub, const std::string& path,
                                       const std::vector<std::string>& argv) {
    const json cfg = parse_json(read_file(path), "config '" + path + "'");
    if (!cfg.is_object()) usage_error("config '" + path + "' must hold a JSON object");
    std::vector<std::string> tokens;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        const CLI::Option* opt = sub.get_option_no_throw(flag);
        if (opt == nullptr || key == "config" || key == "help")
            usage_error("unknown key '" + key + "' in config for " + sub.get_name());
        if (given_on_command_line(argv, flag)) continue;
        const bool is_switch = opt->get_expected_min() == 0;
        if (value.is_boolean()) {
            if (!is_switch) usage_error("'" + key + "' is not a switch");
            if (value.get<bool>()) tokens.push_back(flag);
        } else if (is_switch) {
            usage_error("'" + key + "' must be true or false");
        } else if (value.is_string()) {
            tokens.push_back(flag);
            tokens.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            tokens.push_back(flag);
            tokens.push_back(value.dump());
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& v : value) {
                if (!joined.empty()) joined += ',';
                joined += v.is_string() ? v.get<std::string>() : v.dump();
            }
            tokens.push_back(flag);
            tokens.push_back(joined);
        } else {
            usage_error("unsupported value for '" + key + "' in config");
        }
    }
    return tokens;
}

// ---- simulate

void cmd_simulate(const SimulateArgs& a) {
    auto model = model_from_text(json_argument(a.model));
    evt_rng* r = nullptr;
    check(evt_rng_create(a.common.seed, &r));
    Rng rng(r);
    std::vector<double> x(a.n);
    std::size_t failed = 0;
    const evt_status s = evt_simulate_series(model.get(), a.n, rng.get(), x.data(), &failed);
    if (s == EVT_ERR_SIMULATION)
        throw Failure{kExitNumeric, std::string("simulation: ") + evt_last_error()};
    check(s);
    std::string out = "t,x\n";
    for (std::size_t i = 0; i < x.size(); ++i) out += std::to_string(i + 1) + ',' + g17(x[i]) + '\n';
    std::cout << out;
}

// ---- estimate

json flag_names(unsigned bits, bool model_based) {
    json flags = json::array();
    if (bits & EVT_FLAG_ABSOLUTE) flags.push_back(model_based ? "absolute_residuals" : "absolute_values");
    if (bits & EVT_FLAG_UNCENTERED) flags.push_back("uncentered");
    if (bits & EVT_FLAG_PHI_CLAMPED) flags.push_back("phi_clamped");
    if (bits & EVT_FLAG_HILL_ZERO) flags.push_back("hill_zero");
    return flags;
}

void cmd_estimate(const EstimateArgs& a) {
    const auto data = read_csv_column(a.input, a.column);
    json j;
    j["method"] = a.method;
    if (a.method == "hill") {
        double g = 0.0;
        check(evt_hill(data.data(), data.size(), a.k, a.absolute ? 1 : 0, &g));
        j["estimate"] = g;
        j["k"] = a.k;
        j["gamma_hat"] = g;
        json flags = json::array();
        if (a.absolute) flags.push_back("absolute_values");
        if (g == 0.0) flags.push_back("hill_zero");
        j["flags"] = flags;
        emit(j);
        return;
    }
    evt_estimator_options o = evt_estimator_options_default();
    o.absolute = a.absolute ? 1 : 0;
    o.center = a.no_center ? 0 : 1;
    evt_quantile_estimate e{};
    const bool model_based = a.method == "weissman-model";
    if (model_based)
        check(evt_weissman_model_ar1(data.data(), data.size(), a.k, a.t, &o, &e));
    else
        check(evt_weissman_direct(data.data(), data.size(), a.k, a.t, &o, &e));
    j["estimate"] = e.value;
    j["k"] = e.k;
    j["t"] = e.t;
    j["gamma_hat"] = e.gamma_hat;
    if (model_based) j["phi_hat"] = e.phi_hat;
    j["flags"] = flag_names(e.flags, model_based);
    emit(j);
}

// ---- theory

std::vector<double> ar1_psi(double phi, double gamma, double tol) {
    std::size_t count = 0;
    check(evt_ar1_coefficients(phi, gamma, tol, nullptr, 0, &count));
    std::vector<double> psi(count);
    check(evt_ar1_coefficients(phi, gamma, tol, psi.data(), psi.size(), &count));
    return psi;
}

void cmd_theory(const TheoryArgs& a) {
    json j;
    j["quantity"] = a.quantity;
    j["phi"] = a.phi;
    j["gamma"] = a.gamma;
    if (a.quantity == "tail-ratio") {
        double closed = 0.0, series = 0.0;
        check(evt_tail_ratio_ar1(a.phi, a.gamma, a.p, &closed));
        const auto psi = ar1_psi(a.phi, a.gamma, a.tol);
        check(evt_tail_ratio_linear(psi.data(), psi.size(), a.gamma, a.p, &series));
        j["p"] = a.p;
        j["value"] = closed;
        j["series_value"] = series;
        j["series_terms"] = psi.size();
    } else if (a.quantity == "hill-avar") {
        double closed = 0.0, series = 0.0;
        check(evt_hill_avar_ar1(a.phi, a.gamma, &closed));
        const auto psi = ar1_psi(a.phi, a.gamma, a.tol);
        check(evt_hill_avar_linear(psi.data(), psi.size(), a.gamma, &series));
        j["value"] = closed;
        j["series_value"] = series;
        j["series_terms"] = psi.size();
    } else if (a.quantity == "rmse-ratio") {
        double v = 0.0;
        check(evt_rmse_ratio_ar1(a.phi, a.gamma, &v));
        j["value"] = v;
        // 1.03 is the value usually quoted at phi = 0.8, gamma = 0.3; the
        // formula evaluates to 1.0643 there, so both are reported.
        if (a.phi == 0.8 && a.gamma == 0.3) {
            constexpr double reported = 1.03;
            j["reported_value"] = reported;
            j["difference"] = v - reported;
            j["agrees_to_two_decimals"] = std::abs(v - reported) < 0.005;
        }
    } else {
        double d = 0.0, D = 0.0;
        check(evt_second_order_constants_ar1(a.phi, a.gamma, a.p, &d, &D));
        j["p"] = a.p;
        j["innovations"] = "shifted-two-sided-pareto";
        j["d_psi"] = d;
        j["D_psi"] = D;
    }
    emit(j);
}

// ---- extremal

void cmd_extremal(const ExtremalArgs& a) {
    auto driver = driver_from_text(json_argument(a.driver));
    double kappa = 0.0;
    const bool solved = a.kappa == "auto";
    if (solved) {
        check(evt_solve_kappa(driver.get(), &kappa));
    } else {
        char* end = nullptr;
        kappa = std::strtod(a.kappa.c_str(), &end);
        if (end == a.kappa.c_str() || *end != '\0' || !(kappa > 0.0))
            usage_error("--kappa must be 'auto' or a positive number");
    }
    evt_walks* w = nullptr;
    check(evt_walks_simulate(driver.get(), kappa, a.horizon, a.paths, a.common.seed,
                             a.common.workers, &w));
    Walks walks(w);

    json j;
    j["quantity"] = a.quantity;
    j["kappa"] = kappa;
    j["kappa_source"] = solved ? "solved" : "given";
    j["paths"] = a.paths;
    j["horizon"] = a.horizon;
    j["seed"] = a.common.seed;
    if (a.quantity == "theta") {
        evt_estimate e{};
        check(evt_extremal_index(walks.get(), &e));
        j["theta"] = e.value;
        j["theta_stderr"] = e.stderr_value;
    } else if (a.quantity == "cluster") {
        evt_cluster_summary s{};
        std::vector<double> tk(a.kmax + 1), tk_se(a.kmax + 1), pk(a.kmax), pk_se(a.kmax);
        check(evt_cluster_sizes(walks.get(), a.kmax, &s, tk.data(), tk_se.data(), pk.data(),
                                pk_se.data()));
        j["theta"] = s.theta;
        j["theta_stderr"] = s.theta_stderr;
        j["kmax"] = a.kmax;
        j["theta_k"] = tk;
        j["theta_k_stderr"] = tk_se;
        j["pi_k"] = pk;
        j["pi_k_stderr"] = pk_se;
        j["mean_cluster_size"] = s.mean_cluster_size;
        j["horizon_remainder"] = s.horizon_remainder;
    } else if (a.quantity == "hill-avar") {
        evt_estimate e{};
        double bound = 0.0;
        check(evt_hill_avar_sre(walks.get(), a.tail_tol, &e, &bound));
        j["value"] = e.value;
        j["stderr"] = e.stderr_value;
        j["tail_bound"] = bound;
    } else {
        evt_estimate e{};
        check(evt_joint_exceedance(walks.get(), a.x.data(), a.x.size(),
                                   a.mode == "all" ? EVT_JOINT_ALL : EVT_JOINT_SOME, &e));
        j["mode"] = a.mode;
        j["x"] = a.x;
        j["value"] = e.value;
        j["stderr"] = e.stderr_value;
    }
    emit(j);
}

// ---- diagnose

void cmd_diagnose(const DiagnoseArgs& a) {
    auto data = read_csv_column(a.input, a.column);
    double phi = 0.0;
    if (a.residuals) {
        check(evt_fit_ar1(data.data(), data.size(), 1, &phi));
        std::vector<double> z(data.size() - 1);
        check(evt_residuals_ar1(data.data(), data.size(), phi, z.data()));
        data = std::move(z);
    }
    json out = json::array();
    for (const auto& t : a.tests) {
        evt_test_report r{};
        json j;
        j["schema_version"] = kSchemaVersion;
        if (t == "tp") {
            check(evt_turning_point_test(data.data(), data.size(), &r));
            j["test"] = "turning-point";
            j["statistic"] = r.statistic;
            j["z"] = r.z_or_q;
        } else if (t == "ds") {
            check(evt_difference_sign_test(data.data(), data.size(), &r));
            j["test"] = "difference-sign";
            j["statistic"] = r.statistic;
            j["z"] = r.z_or_q;
        } else {
            check(evt_portmanteau_test(data.data(), data.size(), a.h, &r));
            j["test"] = "ljung-box";
            j["h"] = a.h;
            j["statistic"] = r.statistic;
        }
        j["p_value"] = r.p_value;
        j["reject_at_5pct"] = r.reject_at_5pct != 0;
        j["n"] = data.size();
        if (a.residuals) j["phi_hat"] = phi;
        out.push_back(j);
    }
    std::cout << out.dump(2) << '\n';
}

// ---- experiment

struct PresetModel {
    std::string name;  // output subdirectory
    std::string json_text;
    std::uint64_t tag;  // stream index under the master seed
};

const char* kModelA = R"({"kind":"two-sided-pareto","gamma":0.5,"p":0.5})";
const char* kModelB = R"({"kind":"shifted-two-sided-pareto","gamma":0.3,"p":0.5})";

PresetModel linear_model(char which) {
    const std::string innov = which == 'a' ? kModelA : kModelB;
    return {std::string("linear-") + which,
            R"({"type":"linear-ar1","phi1":0.8,"innovations":)" + innov + "}",
            which == 'a' ? 1u : 2u};
}

PresetModel nonlinear_model(char which) {
    const std::string innov = which == 'a' ? kModelA : kModelB;
    return {std::string("nonlinear-") + which,
            R"({"type":"nonlinear-ar1","phi1":0.8,"delta":0.6,"innovations":)" + innov + "}",
            which == 'a' ? 3u : 4u};
}

// Stream offsets under the master seed, per model tag.
constexpr std::uint64_t kTruthStream = 100;
constexpr std::uint64_t kScatterStream = 200;
constexpr std::uint64_t kPowerStream = 300;

std::ofstream open_out(const fs::path& p) {
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) usage_error("cannot write '" + p.string() + "'");
    return f;
}

void write_json_file(const fs::path& p, json j, bool one_line = false) {
    json out;
    out["schema_version"] = kSchemaVersion;
    for (auto& [k, v] : j.items()) out[k] = v;
    auto f = open_out(p);
    f << (one_line ? out.dump() : out.dump(2)) << '\n';
}

void log(const std::string& msg) { std::cerr << "evtail: " << msg << '\n'; }

struct QuantileStudy {
    evt_truth truth{};
    std::size_t truth_reps = 0;
    std::size_t truth_length = 0;
    std::vector<std::size_t> k_grid;
    Experiment run;
};

QuantileStudy run_study(const ExperimentArgs& a, const PresetModel& pm, std::size_t replicates) {
    QuantileStudy s;
    auto model = model_from_text(pm.json_text);
    s.truth_reps = a.truth_reps ? a.truth_reps : (a.scale == "paper" ? 200 : 50);
    s.truth_length = a.truth_length ? a.truth_length : (a.scale == "paper" ? 9000000 : 1000000);
    log(pm.name + ": ground truth from " + std::to_string(s.truth_reps) + " series of length " +
        std::to_string(s.truth_length));
    check(evt_true_quantile(model.get(), a.t, s.truth_reps, s.truth_length,
                            evt_substream_seed(a.common.seed, kTruthStream + pm.tag),
                            a.common.workers, &s.truth));

    if (a.k_step == 0 || a.k_min == 0 || a.k_min > a.k_max) usage_error("invalid k grid");
    for (std::size_t k = a.k_min; k <= a.k_max; k += a.k_step) s.k_grid.push_back(k);

    evt_experiment_config cfg{};
    cfg.n = a.n;
    cfg.replicates = replicates;
    cfg.k_grid = s.k_grid.data();
    cfg.k_count = s.k_grid.size();
    cfg.t = a.t;
    cfg.seed = evt_substream_seed(a.common.seed, pm.tag);
    cfg.workers = a.common.workers;
    cfg.options = evt_estimator_options_default();
    log(pm.name + ": " + std::to_string(replicates) + " replicates of length " +
        std::to_string(a.n));
    evt_experiment* ex = nullptr;
    check(evt_experiment_run(model.get(), &cfg, s.truth.value, &ex));
    s.run.reset(ex);
    return s;
}

const std::pair<const char*, evt_estimator_kind> kEstimators[] = {
    {"direct", EVT_ESTIMATOR_DIRECT}, {"model", EVT_ESTIMATOR_MODEL}};

json study_json(const QuantileStudy& s, const PresetModel& pm, std::size_t replicates) {
    json j;
    j["model"] = parse_json(pm.json_text, "model");
    j["true_value"] = s.truth.value;
    j["true_half_width"] = s.truth.half_width;
    j["truth_replicates"] = s.truth_reps;
    j["truth_length"] = s.truth_length;
    j["replicates"] = replicates;
    j["k_grid"] = s.k_grid;
    json ests;
    for (const auto& [name, kind] : kEstimators) {
        std::size_t k_rmse = 0, k_l1 = 0;
        double rmse = 0.0, l1 = 0.0;
        check(evt_experiment_argmin(s.run.get(), kind, &k_rmse, &rmse, &k_l1, &l1));
        const auto pos = static_cast<std::size_t>(
            std::find(s.k_grid.begin(), s.k_grid.end(), k_rmse) - s.k_grid.begin());
        evt_error_stats at{};
        check(evt_experiment_stats(s.run.get(), kind, pos, &at));
        json e;
        e["argmin_rmse"] = {{"k", k_rmse}, {"value", rmse}};
        e["argmin_l1"] = {{"k", k_l1}, {"value", l1}};
        e["at_argmin_rmse"] = {{"bias", at.bias}, {"stderr", at.stderr_sd}, {"missing", at.missing}};
        json per_k = json::array();
        for (std::size_t i = 0; i < s.k_grid.size(); ++i) {
            evt_error_stats st{};
            check(evt_experiment_stats(s.run.get(), kind, i, &st));
            per_k.push_back({{"k", s.k_grid[i]},
                             {"rmse", number_or_null(st.rmse)},
                             {"l1", number_or_null(st.l1)},
                             {"bias", number_or_null(st.bias)},
                             {"stderr", number_or_null(st.stderr_sd)},
                             {"missing", st.missing}});
        }
        e["per_k"] = per_k;
        ests[name] = e;
    }
    j["estimators"] = ests;
    return j;
}

void write_errors_csv(const fs::path& p, const QuantileStudy& s) {
    auto f = open_out(p);
    f << "estimator,k,rmse,l1,bias,stderr,missing\n";
    for (const auto& [name, kind] : kEstimators) {
        for (std::size_t i = 0; i < s.k_grid.size(); ++i) {
            evt_error_stats st{};
            check(evt_experiment_stats(s.run.get(), kind, i, &st));
            f << name << ',' << s.k_grid[i] << ',' << g17(st.rmse) << ',' << g17(st.l1) << ','
              << g17(st.bias) << ',' << g17(st.stderr_sd) << ',' << st.missing << '\n';
        }
    }
}

json run_header(const ExperimentArgs& a, std::size_t replicates) {
    json j;
    j["preset"] = a.preset;
    j["seed"] = a.common.seed;
    j["scale"] = a.scale;
    j["n"] = a.n;
    j["t"] = a.t;
    j["replicates"] = replicates;
    return j;
}

void experiment_tables(const ExperimentArgs& a, bool nonlinear) {
    const std::size_t reps = a.replicates ? a.replicates : 500;
    json summary = run_header(a, reps);
    json models;
    for (char which : {'a', 'b'}) {
        const auto pm = nonlinear ? nonlinear_model(which) : linear_model(which);
        const auto s = run_study(a, pm, reps);
        write_errors_csv(fs::path(a.out) / pm.name / "errors_vs_k.csv", s);
        models[pm.name] = study_json(s, pm, reps);
    }
    summary["models"] = models;
    write_json_file(fs::path(a.out) / "summary.json", summary);
}

void experiment_density(const ExperimentArgs& a) {
    const std::size_t reps = a.replicates ? a.replicates : 500;
    const auto pm = nonlinear_model('b');
    const auto s = run_study(a, pm, reps);
    write_errors_csv(fs::path(a.out) / pm.name / "errors_vs_k.csv", s);

    // Laws of both estimators at their RMSE-optimal k, on one common grid.
    std::vector<std::vector<double>> samples;
    std::vector<std::size_t> ks;
    std::vector<double> bandwidths;
    for (const auto& [name, kind] : kEstimators) {
        std::size_t k = 0;
        check(evt_experiment_argmin(s.run.get(), kind, &k, nullptr, nullptr, nullptr));
        const auto pos = static_cast<std::size_t>(
            std::find(s.k_grid.begin(), s.k_grid.end(), k) - s.k_grid.begin());
        std::vector<double> est(reps);
        check(evt_experiment_estimates(s.run.get(), kind, pos, est.data(), est.size()));
        est.erase(std::remove_if(est.begin(), est.end(), [](double v) { return std::isnan(v); }),
                  est.end());
        double h = 0.0;
        check(evt_silverman_bandwidth(est.data(), est.size(), &h));
        samples.push_back(std::move(est));
        ks.push_back(k);
        bandwidths.push_back(h);
    }
    double lo = samples[0].front(), hi = lo;
    for (std::size_t e = 0; e < samples.size(); ++e) {
        const auto [mn, mx] = std::minmax_element(samples[e].begin(), samples[e].end());
        lo = std::min(lo, *mn - 3.0 * bandwidths[e]);
        hi = std::max(hi, *mx + 3.0 * bandwidths[e]);
    }
    constexpr std::size_t kPoints = 512;
    std::vector<double> grid(kPoints);
    for (std::size_t i = 0; i < kPoints; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kPoints - 1);
    std::vector<std::vector<double>> dens(samples.size(), std::vector<double>(kPoints));
    for (std::size_t e = 0; e < samples.size(); ++e)
        check(evt_kde(samples[e].data(), samples[e].size(), grid.data(), grid.size(),
                      dens[e].data(), nullptr));

    auto f = open_out(fs::path(a.out) / "density.csv");
    f << "x,direct,model\n";
    for (std::size_t i = 0; i < kPoints; ++i)
        f << g17(grid[i]) << ',' << g17(dens[0][i]) << ',' << g17(dens[1][i]) << '\n';

    json summary = run_header(a, reps);
    json kde_info;
    for (std::size_t e = 0; e < samples.size(); ++e)
        kde_info[kEstimators[e].first] = {{"k", ks[e]},
                                          {"bandwidth", bandwidths[e]},
                                          {"estimates", samples[e].size()}};
    summary["density"] = kde_info;
    summary["models"] = {{pm.name, study_json(s, pm, reps)}};
    write_json_file(fs::path(a.out) / "summary.json", summary);
}

void experiment_scatter(const ExperimentArgs& a) {
    const auto pm = nonlinear_model('b');
    auto model = model_from_text(pm.json_text);
    if (a.n < 3) usage_error("--n must be at least 3");
    std::vector<double> xp(a.n - 1), xc(a.n - 1);
    double phi = 0.0;
    const std::uint64_t seed = evt_substream_seed(a.common.seed, kScatterStream + pm.tag);
    check(evt_scatter(model.get(), a.n, seed, xp.data(), xc.data(), &phi));
    auto f = open_out(fs::path(a.out) / "scatter.csv");
    f << "x_prev,x_cur\n";
    for (std::size_t i = 0; i < xp.size(); ++i) f << g17(xp[i]) << ',' << g17(xc[i]) << '\n';
    json fit;
    fit["preset"] = a.preset;
    fit["seed"] = a.common.seed;
    fit["n"] = a.n;
    fit["model"] = parse_json(pm.json_text, "model");
    fit["phi_hat"] = phi;
    write_json_file(fs::path(a.out) / "fit.json", fit, true);
}

void experiment_power(const ExperimentArgs& a) {
    const std::size_t reps = a.replicates ? a.replicates : 2000;
    if (a.max_lag < 20) usage_error("--max-lag must be at least 20");
    json summary = run_header(a, reps);
    summary["max_lag"] = a.max_lag;
    json models;
    std::vector<std::vector<double>> by_lag;
    std::vector<std::string> names;
    for (const auto& pm : {nonlinear_model('b'), linear_model('b')}) {
        auto model = model_from_text(pm.json_text);
        evt_power_result r{};
        std::vector<double> lb(a.max_lag);
        log(pm.name + ": " + std::to_string(reps) + " replicates");
        check(evt_power_experiment(model.get(), a.n, reps,
                                   evt_substream_seed(a.common.seed, kPowerStream + pm.tag),
                                   a.common.workers, a.max_lag, &r, lb.data()));
        json j;
        j["model"] = parse_json(pm.json_text, "model");
        j["turning_point"] = r.turning_point;
        j["difference_sign"] = r.difference_sign;
        j["ljung_box_h20"] = lb[19];
        j["ljung_box_max"] = r.ljung_box_max;
        j["ljung_box_argmax"] = r.ljung_box_argmax;
        j["mean_phi_hat"] = r.mean_phi_hat;
        models[pm.name] = j;
        by_lag.push_back(std::move(lb));
        names.push_back(pm.name);
    }
    summary["models"] = models;
    write_json_file(fs::path(a.out) / "summary.json", summary);
    auto f = open_out(fs::path(a.out) / "power_vs_lag.csv");
    f << "h," << names[0] << ',' << names[1] << '\n';
    for (std::size_t h = 0; h < a.max_lag; ++h)
        f << h + 1 << ',' << g17(by_lag[0][h]) << ',' << g17(by_lag[1][h]) << '\n';
}

void cmd_experiment(const ExperimentArgs& a) {
    if (a.preset == "table1" || a.preset == "figure1") experiment_tables(a, false);
    else if (a.preset == "table2" || a.preset == "figure3") experiment_tables(a, true);
    else if (a.preset == "figure4") experiment_density(a);
    else if (a.preset == "figure2-scatter") experiment_scatter(a);
    else experiment_power(a);
    log("wrote " + a.out);
}

int parse(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? -1 : kExitUsage;  // -1: help or version printed
    }
    return 0;
}

// Value of --config, looked up before parsing so that a config file can
// supply required options.
std::string config_path(const std::vector<std::string>& argv) {
    for (std::size_t i = 0; i < argv.size(); ++i) {
        if (argv[i] == "--config" && i + 1 < argv.size()) return argv[i + 1];
        if (argv[i].rfind("--config=", 0) == 0) return argv[i].substr(9);
    }
    return {};
}

int run(const std::vector<std::string>& argv) {
    Args args;
    auto app = build_app(args);
    auto merged = argv;
    if (const auto config = config_path(argv); !config.empty()) {
        const CLI::App* sub = nullptr;
        for (const auto& a : argv) {
            if (a.rfind("-", 0) == 0) continue;
            if ((sub = app->get_subcommand_no_throw(a)) != nullptr) break;
        }
        if (sub == nullptr) usage_error("--config needs a subcommand");
        const auto extra = config_tokens(*sub, config, argv);
        merged.insert(merged.end(), extra.begin(), extra.end());
    }
    if (int rc = parse(*app, merged); rc != 0) return rc < 0 ? 0 : rc;

    const std::string name = app->get_subcommands().front()->get_name();
    if (name == "simulate") cmd_simulate(args.simulate);
    else if (name == "estimate") cmd_estimate(args.estimate);
    else if (name == "theory") cmd_theory(args.theory);
    else if (name == "extremal") cmd_extremal(args.extremal);
    else if (name == "diagnose") cmd_diagnose(args.diagnose);
    else cmd_experiment(args.experiment);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const Failure& f) {
        std::cerr << "evtail: " << f.message << '\n';
        return f.code;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "evtail: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "evtail: " << e.what() << '\n';
        return kExitNumeric;
    }
}
