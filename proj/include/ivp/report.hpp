#pragma once

#include <string>

#include <json.hpp>

namespace ivp {

inline constexpr const char* kVersion = "0.1.0";

/// Report skeleton shared by every CLI command: version, command, timestamp,
/// and an `config` echo slot. The timestamp is the only field exempt from
/// byte-for-byte reproducibility.
nlohmann::json base_report(const std::string& command);

std::string iso_timestamp();

/// Writes pretty JSON to the path, or stdout when path is empty.
void emit_json(const nlohmann::json& j, const std::string& path);

}  // namespace ivp
