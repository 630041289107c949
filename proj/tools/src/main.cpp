#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qae/errors.hpp"
#include "qae_cli/commands.hpp"
#include "qae_cli/config.hpp"

namespace {

// exit codes: 0 ok, 2 bad config/usage, 3 bad or missing data, 4 numerical
// or internal failure
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kDataError = 3;
constexpr int kInternalError = 4;

struct CommonArgs {
  std::string config;
  qae::cli::CommandOverrides overrides;
};

void attach_common(CLI::App& sub, CommonArgs& args) {
  sub.add_option("-c,--config", args.config, "experiment config (TOML)")
      ->required()
      ->check(CLI::ExistingFile);
  sub.add_option_function<std::uint64_t>(
      "--seed", [&args](std::uint64_t v) { args.overrides.seed = v; },
      "override the experiment seed");
  sub.add_option_function<int>(
         "--restarts",
         [&args](int v) { args.overrides.restarts = v; },
         "override the restart count")
      ->check(CLI::PositiveNumber);
  sub.add_option_function<std::string>(
      "--out", [&args](const std::string& v) { args.overrides.output = v; },
      "override the output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum autoencoder training and evaluation toolkit"};
  app.require_subcommand(1);

  struct Verb {
    CLI::App* sub;
    CommonArgs args;
    std::function<void(const qae::cli::ExperimentConfig&)> run;
  };
  std::vector<Verb> verbs(5);

  verbs[0].sub = app.add_subcommand(
      "gen-data", "prepare ground-state ensembles and a manifest");
  verbs[0].run = qae::cli::cmd_gen_data;

  verbs[1].sub = app.add_subcommand(
      "train", "fit the circuit template to the training ensemble");
  verbs[1].run = qae::cli::cmd_train;

  verbs[2].sub = app.add_subcommand(
      "evaluate", "round-trip fidelities and energies for a trained model");
  verbs[2].run = qae::cli::cmd_evaluate;

  verbs[3].sub = app.add_subcommand(
      "export-latent",
      "input and latent density matrices for a trained model");
  auto states = std::make_shared<std::vector<int>>();
  verbs[3].sub->add_option("--states", *states,
                           "state indices to export (default: all)")
      ->delimiter(',');
  verbs[3].run = [states](const qae::cli::ExperimentConfig& cfg) {
    qae::cli::cmd_export_latent(cfg, *states);
  };

  verbs[4].sub = app.add_subcommand(
      "swap-demo", "sampled SWAP-test estimates of trash fidelities");
  auto shots = std::make_shared<std::uint64_t>(100000);
  auto exact = std::make_shared<bool>(false);
  verbs[4].sub->add_option("--shots", *shots,
                           "measurement shots per state (default 100000)");
  verbs[4].sub->add_flag("--exact", *exact,
                         "skip sampling and report exact fidelities");
  verbs[4].run = [shots, exact](const qae::cli::ExperimentConfig& cfg) {
    qae::cli::cmd_swap_demo(cfg, *shots, *exact);
  };

  for (Verb& v : verbs) attach_common(*v.sub, v.args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  for (Verb& v : verbs) {
    if (!v.sub->parsed()) continue;
    try {
      qae::cli::ExperimentConfig cfg = qae::cli::apply_overrides(
          qae::cli::load_config(v.args.config), v.args.overrides);
      v.run(cfg);
      return kOk;
    } catch (const qae::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kConfigError;
    } catch (const std::invalid_argument& e) {
      std::cerr << "invalid argument: " << e.what() << "\n";
      return kConfigError;
    } catch (const qae::DataError& e) {
      std::cerr << "data error: " << e.what() << "\n";
      return kDataError;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInternalError;
    }
  }
  return kConfigError;
}
