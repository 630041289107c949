#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qae/pauli.hpp"
#include "qae/state.hpp"

namespace qae {

// Spin-orbital integrals for a molecular Hamiltonian
//   H = h_nuc + sum_pq h_pq a+_p a_q
//            + 1/2 sum_pqrs h_pqrs a+_p a+_q a_r a_s
// with h_pqrs = <pq|sr> and spin-orbital index p = 2*spatial + spin.
class IntegralTable {
 public:
  IntegralTable(int n_spin_orbitals, double h_nuc,
                Eigen::MatrixXd h_pq, std::vector<double> h_pqrs);

  int n_spin_orbitals() const { return n_; }
  double h_nuc() const { return h_nuc_; }
  const Eigen::MatrixXd& h_pq() const { return h_pq_; }
  double h_pqrs(int p, int q, int r, int s) const {
    return h_pqrs_[static_cast<std::size_t>(((p * n_ + q) * n_ + r)) * n_ + s];
  }

  std::optional<double> reference_energy;
  std::string system;
  // scalar geometry parameter (bond length, sheet separation, ...)
  std::optional<double> geometry;

 private:
  int n_;
  double h_nuc_;
  Eigen::MatrixXd h_pq_;
  std::vector<double> h_pqrs_;  // flattened [p][q][r][s]
};

// Loads a JSON integral table and validates the declared <pq|sr> index
// symmetries (h_pqrs = h_qpsr = h_sqrp = h_prqs) and the symmetry of h_pq.
IntegralTable load_integral_table(const std::filesystem::path& file);

PauliSum build_molecular(const IntegralTable& table);

struct CoefficientHamiltonian {
  int n_qubits;
  PauliSum terms;
  std::optional<double> geometry;
  std::optional<double> reference_energy;
};

// Text file: optional "# geometry <v>" / "# reference_energy <v>" comment
// directives, a "qubits <n>" header, then one Pauli term per line.
// All coefficients must be real.
CoefficientHamiltonian load_coefficients(const std::filesystem::path& file);

// Fermi-Hubbard on a rows x cols grid.  Mode index = 2*site + spin with
// sites numbered row-major.  Horizontal bonds are periodic (duplicates from
// wrap-around on two-column grids are kept once); vertical bonds are open.
//   H = -t sum_<ij>,s (a+_is a_js + a+_js a_is) + U sum_i n_iu n_id
struct LatticeSpec {
  int rows;
  int cols;
  double t;
  double u;
};

PauliSum build_hubbard(const LatticeSpec& lattice);

// sum_p n_p as a Pauli sum (n_p = (I - Z_p)/2)
PauliSum number_operator(int n_modes);

struct GroundState {
  double energy;
  StateVector state;
};

// Lowest eigenpair by dense diagonalization.
GroundState ground_state(const PauliSum& h);
// Lowest eigenpair restricted to eigenvectors whose expectation of
// number_op equals n_particles within 1e-8.
GroundState ground_state(const PauliSum& h, const PauliSum& number_op,
                         double n_particles);

// log2 of the dimension of the n_particles sector of n_modes fermionic
// modes, i.e. log2 C(n_modes, n_particles): qubits needed to hold any state
// from that sector.
double compression_bound(int n_modes, int n_particles);

}  // namespace qae
