#pragma once

#include <stdexcept>
#include <string>

namespace qae {

// Malformed or inconsistent input data (files, tables, ensembles on disk).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid experiment configuration (unknown keys, bad values, missing files
// referenced from a config).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qae
