#pragma once

#include <json.hpp>

#include "evtail/distributions.hpp"
#include "evtail/simulate.hpp"

namespace evt {

// Schemas (unknown keys are rejected with ConfigError):
//
//   InnovationSpec  {"kind": "two-sided-pareto" | "shifted-two-sided-pareto",
//                    "gamma": g, "p": p}                       p defaults to 0.5
//   SREDriver       {"law": "two-point", "a_up": a, "a_down": b, "p_up": q,
//                    "b": <number> | InnovationSpec}           b defaults to 1
//                   {"law": "lognormal", "mu": m, "sigma": s, "b": ...}
//   SeriesModel     {"type": "linear-ar1", "phi1": f, "innovations": InnovationSpec,
//                    "burnin": n}
//                   {"type": "nonlinear-ar1", "phi1": f, "delta": d,
//                    "innovations": InnovationSpec, "burnin": n}
//                   {"type": "sre", "driver": SREDriver, "burnin": n}

nlohmann::json to_json(const InnovationSpec& spec);
InnovationSpec innovation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SREDriver& driver);
SREDriver driver_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SeriesModel& model);
SeriesModel model_from_json(const nlohmann::json& j);

/// Parses text, converting parse failures into ConfigError.
nlohmann::json parse_json_text(const char* text);

}  // namespace evt
