#pragma once

#include <string>

#include <json.hpp>

#include "ivp/polynomial.hpp"

namespace ivp {

/// Canonical text form: terms sorted leading-first under grevlex, explicit
/// exponents, e.g. "3/2*x^2*y - 1". Round-trips exactly through parse_poly.
std::string poly_to_string(const Polynomial& p);

/// Parses polynomial expressions: rational literals, variable names, + - * ^
/// and parentheses. Unknown names become ring variables only when they are
/// present in `ctx`; anything else is a parse error with its position.
Polynomial parse_poly(const std::string& text, const VarCtx& ctx);

/// JSON form: {"variables": [...], "terms": [{"c": "3/2", "e": [2,1]}, ...]}.
nlohmann::json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const nlohmann::json& j);

}  // namespace ivp
