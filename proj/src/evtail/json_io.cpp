#include "evtail/json_io.hpp"

#include <initializer_list>
#include <string>

#include "evtail/errors.hpp"

namespace evt {

using nlohmann::json;

namespace {

void require_object(const json& j, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw ConfigError(std::string("unknown key '") + key + "' in " + what);
    }
}

double number(const json& j, const char* key, const char* what) {
    if (!j.contains(key)) throw ConfigError(std::string(what) + " is missing '" + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::size_t burnin_of(const json& j) {
    if (!j.contains("burnin")) return kDefaultBurnin;
    const json& v = j.at("burnin");
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError("'burnin' must be a nonnegative integer");
    return v.get<std::size_t>();
}

}  // namespace

json to_json(const InnovationSpec& spec) {
    if (spec.kind == InnovationKind::Constant)
        throw ConfigError("constant innovations are a test hook and have no JSON form");
    return json{{"kind", std::string(to_string(spec.kind))}, {"gamma", spec.gamma}, {"p", spec.p}};
}

InnovationSpec innovation_from_json(const json& j) {
    require_object(j, "innovation spec");
    reject_unknown(j, {"kind", "gamma", "p"}, "innovation spec");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError("innovation spec needs a string 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    const double gamma = number(j, "gamma", "innovation spec");
    const double p = number_or(j, "p", 0.5);
    if (kind == "two-sided-pareto") return InnovationSpec::two_sided(gamma, p);
    if (kind == "shifted-two-sided-pareto") return InnovationSpec::shifted(gamma, p);
    throw ConfigError("unknown innovation kind '" + kind + "'");
}

json to_json(const SREDriver& d) {
    json j;
    if (d.a_law == SREDriver::ALaw::TwoPoint) {
        j = {{"law", "two-point"}, {"a_up", d.a_up}, {"a_down", d.a_down}, {"p_up", d.p_up}};
    } else {
        j = {{"law", "lognormal"}, {"mu", d.mu}, {"sigma", d.sigma}};
    }
    if (d.b_law == SREDriver::BLaw::Constant)
        j["b"] = d.b_constant;
    else
        j["b"] = to_json(d.b_innovation);
    return j;
}

SREDriver driver_from_json(const json& j) {
    require_object(j, "driver");
    if (!j.contains("law") || !j.at("law").is_string())
        throw ConfigError("driver needs a string 'law'");
    const auto law = j.at("law").get<std::string>();
    SREDriver d;
    if (law == "two-point") {
        reject_unknown(j, {"law", "a_up", "a_down", "p_up", "b"}, "driver");
        d.a_law = SREDriver::ALaw::TwoPoint;
        d.a_up = number(j, "a_up", "driver");
        d.a_down = number(j, "a_down", "driver");
        d.p_up = number(j, "p_up", "driver");
    } else if (law == "lognormal") {
        reject_unknown(j, {"law", "mu", "sigma", "b"}, "driver");
        d.a_law = SREDriver::ALaw::LogNormal;
        d.mu = number(j, "mu", "driver");
        d.sigma = number(j, "sigma", "driver");
    } else {
        throw ConfigError("unknown driver law '" + law + "'");
    }
    if (j.contains("b")) {
        const json& b = j.at("b");
        if (b.is_number()) {
            d.b_law = SREDriver::BLaw::Constant;
            d.b_constant = b.get<double>();
        } else {
            d.b_law = SREDriver::BLaw::Innovation;
            d.b_innovation = innovation_from_json(b);
        }
    }
    d.validate();
    return d;
}

json to_json(const SeriesModel& model) {
    json j;
    if (const auto* lin = std::get_if<LinearAR1>(&model.variant)) {
        j = {{"type", "linear-ar1"}, {"phi1", lin->phi1}, {"innovations", to_json(lin->innovations)}};
    } else if (const auto* nl = std::get_if<NonlinearAR1>(&model.variant)) {
        j = {{"type", "nonlinear-ar1"},
             {"phi1", nl->phi1},
             {"delta", nl->delta},
             {"innovations", to_json(nl->innovations)}};
    } else {
        j = {{"type", "sre"}, {"driver", to_json(std::get<StochasticRecurrence>(model.variant).driver)}};
    }
    j["burnin"] = model.burnin;
    return j;
}

SeriesModel model_from_json(const json& j) {
    require_object(j, "series model");
    if (!j.contains("type") || !j.at("type").is_string())
        throw ConfigError("series model needs a string 'type'");
    const auto type = j.at("type").get<std::string>();
    if (type == "linear-ar1") {
        reject_unknown(j, {"type", "phi1", "innovations", "burnin"}, "series model");
        if (!j.contains("innovations")) throw ConfigError("series model needs 'innovations'");
        return SeriesModel::linear_ar1(number(j, "phi1", "series model"),
                                       innovation_from_json(j.at("innovations")), burnin_of(j));
    }
    if (type == "nonlinear-ar1") {
        reject_unknown(j, {"type", "phi1", "delta", "innovations", "burnin"}, "series model");
        if (!j.contains("innovations")) throw ConfigError("series model needs 'innovations'");
        return SeriesModel::nonlinear_ar1(number(j, "phi1", "series model"),
                                          number(j, "delta", "series model"),
                                          innovation_from_json(j.at("innovations")), burnin_of(j));
    }
    if (type == "sre") {
        reject_unknown(j, {"type", "driver", "burnin"}, "series model");
        if (!j.contains("driver")) throw ConfigError("series model needs 'driver'");
        return SeriesModel::sre(driver_from_json(j.at("driver")), burnin_of(j));
    }
    throw ConfigError("unknown series model type '" + type + "'");
}

json parse_json_text(const char* text) {
    if (text == nullptr) throw ConfigError("null JSON text");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace evt
