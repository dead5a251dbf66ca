#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ochaus/quad.hpp"

namespace ochaus {

/// QuadConfig field names in declaration order.
const std::vector<std::string>& config_keys();

/// Sets one field from text. Throws DomainError for an unknown key or a bad value.
void set_config_value(QuadConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` text; blank lines and `#` comments are skipped.
/// Keys absent from the text keep their value in `base`. Errors carry the line number.
QuadConfig parse_config_text(const std::string& text, QuadConfig base = {});
/// Reads `path` with parse_config_text. Throws std::runtime_error naming the path on I/O failure.
QuadConfig read_config_file(const std::string& path, QuadConfig base = {});

/// One `key = value` line per field, values with 17 significant digits.
std::string format_config(const QuadConfig& cfg);

nlohmann::json config_to_json(const QuadConfig& cfg);
/// Missing keys keep their defaults; unknown keys are an error.
QuadConfig config_from_json(const nlohmann::json& j);

}  // namespace ochaus
