#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qae/hamiltonians.hpp"
#include "qae_cli/config.hpp"

namespace qae::cli {

struct CommandOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<std::filesystem::path> output;
};

// one prepared instance: Hamiltonian plus exact ground-state data
struct SystemEntry {
  double geometry = 0.0;
  PauliSum hamiltonian;
  double energy = 0.0;
  StateVector ground;
};

struct SystemData {
  std::vector<SystemEntry> train;
  std::vector<SystemEntry> test;
};

// Builds Hamiltonians and exact ground states for every grid point (or
// coefficient file) named by the config.
SystemData build_system(const ExperimentConfig& cfg);

void cmd_gen_data(const ExperimentConfig& cfg);
void cmd_train(const ExperimentConfig& cfg);
void cmd_evaluate(const ExperimentConfig& cfg);
// states: indices into each ensemble; empty means every state.  An index
// outside any selected ensemble throws std::invalid_argument.
void cmd_export_latent(const ExperimentConfig& cfg,
                       const std::vector<int>& states);
// Per-state SWAP-test study of the trained model's trash fidelities.
// shots == 0 throws std::invalid_argument; exact skips sampling.
void cmd_swap_demo(const ExperimentConfig& cfg, std::uint64_t shots,
                   bool exact);

ExperimentConfig apply_overrides(ExperimentConfig cfg,
                                 const CommandOverrides& overrides);

}  // namespace qae::cli
