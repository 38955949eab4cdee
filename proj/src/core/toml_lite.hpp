#pragma once
#include <string>

#include <json.hpp>

namespace pdm {

// Minimal TOML reader covering what scenario files need: [a.b] tables, bare
// or quoted keys, strings, booleans, integers, floats, homogeneous (possibly
// nested, possibly multiline) arrays, inline tables, and # comments. Parses
// into a JSON tree so TOML and JSON scenarios share one loader. Throws
// Error(ConfigParse) with a line number on malformed input.
nlohmann::json toml_lite_parse(const std::string& text);

} // namespace pdm
