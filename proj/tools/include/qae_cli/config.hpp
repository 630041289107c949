#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qae/optimize.hpp"

namespace qae::cli {

struct ExperimentConfig {
  std::string name;
  // h2 | h4 | hubbard2x1 | hubbard2x2 | coefficient-file
  std::string system;
  std::string template_kind = "a";  // a | b
  int cells = 1;
  int n_latent = 0;
  std::uint64_t seed = 1;

  // molecular systems: directory containing index.json
  std::filesystem::path fixtures;
  // coefficient-file system: explicit file lists
  std::vector<std::filesystem::path> train_files;
  std::vector<std::filesystem::path> test_files;
  // geometry grids: r (angstrom), d (bohr) or hopping t
  std::vector<double> train;
  std::vector<double> test;
  double hubbard_u = 2.0;

  int restarts = 5;
  int threads = 0;
  OptimizerConfig optimizer;

  std::filesystem::path output;

  int n_qubits = 0;  // derived from the system
  int n_trash() const { return n_qubits - n_latent; }
};

// Parses and validates a TOML experiment config.  Relative paths are
// resolved against the config file's directory.  Unknown keys are errors.
ExperimentConfig load_config(const std::filesystem::path& file);

}  // namespace qae::cli
