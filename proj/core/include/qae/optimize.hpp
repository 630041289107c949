#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qae/autoencoder.hpp"
#include "qae/circuits.hpp"

namespace qae {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimizerConfig {
  int max_iterations = 1000;   // L-BFGS iterations per local minimization
  double tolerance = 1e-9;     // projected-gradient infinity norm
  double fd_step = 1e-8;       // central-difference step
  int history = 10;            // L-BFGS memory
  int max_line_search = 40;    // backtracking halvings per iteration
  int hops = 4;                // basin hops after the initial minimization
  double hop_scale = 1.0;      // uniform perturbation half-width
  double hop_temperature = 0.1;  // Metropolis acceptance temperature
  double lower = kParamLo;
  double upper = kParamHi;
};

struct OptResult {
  Eigen::VectorXd best_params;
  double best_value = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
  // objective value at every evaluation, in evaluation order
  std::vector<double> trace;
  std::uint64_t seed = 0;
};

// Central differences with probes clipped into [lower, upper]; falls back
// to a one-sided difference at an active bound.  x itself must be feasible.
Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x,
                            double step, double lower, double upper);

// Bound-constrained limited-memory BFGS with projected backtracking line
// search.  Deterministic given x0.
OptResult local_minimize(const Objective& f, const Eigen::VectorXd& x0,
                         const OptimizerConfig& cfg);

// local_minimize followed by cfg.hops Metropolis-accepted restarts from
// uniformly perturbed points (wrapped back into bounds, since the
// objective is periodic over the box).
OptResult basin_hop(const Objective& f, const Eigen::VectorXd& x0,
                    const OptimizerConfig& cfg, std::uint64_t seed);

struct TrainResult {
  OptResult best;                 // lowest-value restart (ties: lowest index)
  std::vector<OptResult> restarts;
};

// Multi-start training of the autoencoder objective
// log10(1 - C2 + epsilon).  Restart r runs basin_hop from a uniform random
// start with seed mix_seed(seed, r); restarts execute in parallel without
// affecting results.
TrainResult train(const CircuitTemplate& tpl, const TrainingEnsemble& ens,
                  const OptimizerConfig& cfg, int restarts,
                  std::uint64_t seed, int threads = 0);

}  // namespace qae
