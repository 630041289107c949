#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qae/circuits.hpp"
#include "qae/state.hpp"

namespace qae {

// Weighted pure-state ensemble to be compressed from n_latent + n_trash
// qubits down to n_latent.  The trash register is the high qubit block
// [n_latent, n_latent + n_trash); after a perfect encoding it ends up in
// the reference state.
class TrainingEnsemble {
 public:
  TrainingEnsemble(int n_latent, int n_trash, StateVector reference,
                   std::vector<StateVector> states,
                   std::vector<double> weights);

  static TrainingEnsemble uniform(int n_latent, int n_trash,
                                  StateVector reference,
                                  std::vector<StateVector> states);

  int n_latent() const { return n_latent_; }
  int n_trash() const { return n_trash_; }
  int n_qubits() const { return n_latent_ + n_trash_; }
  const StateVector& reference() const { return reference_; }
  const std::vector<StateVector>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int n_latent_;
  int n_trash_;
  StateVector reference_;
  std::vector<StateVector> states_;
  std::vector<double> weights_;
};

// Reduced state of the trash register after encoding psi.
DensityMatrix trash_state(const Eigen::VectorXd& params,
                          const CircuitTemplate& tpl, const StateVector& psi,
                          int n_latent);
DensityMatrix trash_state(const Matrix& u, const StateVector& psi,
                          int n_latent);

// Weighted mean trash-register fidelity with the reference.
double cost_c2(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
               const TrainingEnsemble& ensemble);
double cost_c2(const Matrix& u, const TrainingEnsemble& ensemble);

// Weighted mean round-trip fidelity (encode, discard trash, re-prepare
// reference, decode).  cost_c1 <= cost_c2 always.
double cost_c1(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
               const TrainingEnsemble& ensemble);
double cost_c1(const Matrix& u, const TrainingEnsemble& ensemble);

// Training objective: log10(1 - C2 + epsilon), minimized.
double objective(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
                 const TrainingEnsemble& ensemble);

struct RoundTripResult {
  double fidelity;        // <psi| rho_out |psi>
  DensityMatrix rho_out;  // decoded output state
  std::optional<double> energy;  // Tr[H rho_out] when H is supplied
};

RoundTripResult roundtrip(const Eigen::VectorXd& params,
                          const CircuitTemplate& tpl, const StateVector& psi,
                          int n_latent, const StateVector& reference,
                          const Matrix* hamiltonian = nullptr);

// U^dagger (latent x reference); the state a perfect round trip would
// produce from a latent register.
StateVector decode(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
                   const StateVector& latent, const StateVector& reference);

struct SwapTestResult {
  double estimate;     // clamped to [0, 1]
  double p0;           // ancilla-zero probability (sampled or exact)
  std::uint64_t shots; // 0 means exact mode
};

// SWAP-test estimate of a known fidelity (works for mixed targets too,
// where F = <a|rho|a>).  shots == 0 returns the exact expectation;
// otherwise p0 is a seeded binomial sample of the ancilla-zero rate
// (1 + F) / 2 and estimate = max(0, 2 p0 - 1).
SwapTestResult swap_test(double fidelity, std::uint64_t shots,
                         std::uint64_t seed);
// Destructive SWAP-test estimate of |<a|b>|^2 for pure states.
SwapTestResult swap_test(const StateVector& a, const StateVector& b,
                         std::uint64_t shots, std::uint64_t seed);

}  // namespace qae
