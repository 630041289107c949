#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qae::cli {

// Minimal TOML subset: [section] headers, key = value pairs, comments,
// strings, integers, floats, booleans and flat (possibly multi-line)
// arrays.  Enough for experiment configs; nested tables, dotted keys and
// datetimes are rejected.
struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<bool, std::int64_t, double, std::string, TomlArray> data;

  bool is_array() const { return std::holds_alternative<TomlArray>(data); }
};

// section -> key -> value; top-level keys live under the "" section
using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

TomlTable parse_toml(const std::string& text, const std::string& origin);
TomlTable parse_toml_file(const std::filesystem::path& file);

}  // namespace qae::cli
