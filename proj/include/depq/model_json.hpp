#pragma once

#include <string>

#include <json.hpp>

#include "depq/models.hpp"

namespace depq {

/// Model description, e.g.
///   {"family": "negative", "c": 1, "lambda": 1, "mu": 2, "K": 3}
/// Mixed-Erlang families take exactly one of "K" (uniform on 1..K), "weights", or "alpha" + "T".
/// "kibble_moran" takes lambda, mu, m, p; "cheriyan_ramabhadran" takes orders and beta (three each).
/// Unknown or missing fields throw InvalidArgument.
DependenceModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const DependenceModel& m);

/// Parses text; JSON syntax errors become InvalidArgument.
DependenceModel parse_model(const std::string& text);

}  // namespace depq
