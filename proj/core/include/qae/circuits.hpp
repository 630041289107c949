#pragma once

#include <numbers>
#include <vector>

#include "qae/state.hpp"

namespace qae {

// Parameters live in [kParamLo, kParamHi); the objective is 4pi-periodic
// in every coordinate.
inline constexpr double kParamLo = 0.0;
inline constexpr double kParamHi = 4.0 * std::numbers::pi;

// Rz(t1) Ry(t2) Rz(t3) with Rz(t) = diag(e^{-it/2}, e^{it/2}); an SU(2)
// element, so circuits built from it carry no parameter-dependent global
// phase.
Eigen::Matrix2cd rot_zyz(double t1, double t2, double t3);

// General two-qubit unitary (up to global phase) from 15 parameters:
//   (A1 x A2) exp(-i (a XX + b YY + c ZZ)) (B1 x B2)
// layout: [0..2] A1, [3..5] A2, [6] a, [7] b, [8] c, [9..11] B1, [12..14] B2.
// The first qubit of the pair is the low bit of the returned 4x4 matrix.
Eigen::Matrix4cd two_qubit_general(const Eigen::VectorXd& params);

enum class GateKind {
  kSingle,      // rot_zyz on one qubit, 3 parameters
  kControlled,  // rot_zyz on target controlled by |1> on control, 3 params
  kTwoQubit,    // two_qubit_general on a qubit pair, 15 parameters
  kExponential  // exp(-i sum_i p_i G_i) over the whole register
};

struct GateSlot {
  GateKind kind;
  int qubit_a;  // single/target qubit, control qubit, or low pair member
  int qubit_b;  // -1, target qubit, or high pair member
  int param_offset;
  int param_count;
};

enum class TemplateKind { kA, kB, kExponential };

// A parameterized circuit shape: an ordered list of gate slots over a
// fixed register, plus the generators when kind is kExponential.
class CircuitTemplate {
 public:
  TemplateKind kind() const { return kind_; }
  int n_qubits() const { return n_qubits_; }
  int cells() const { return cells_; }
  int param_count() const { return param_count_; }
  const std::vector<GateSlot>& slots() const { return slots_; }
  const std::vector<Matrix>& generators() const { return generators_; }

  friend CircuitTemplate template_a(int n_qubits, int cells);
  friend CircuitTemplate template_b(int n_qubits, int cells);
  friend CircuitTemplate template_exponential(int n_qubits,
                                              std::vector<Matrix> generators);

 private:
  CircuitTemplate() = default;
  TemplateKind kind_ = TemplateKind::kA;
  int n_qubits_ = 0;
  int cells_ = 0;
  int param_count_ = 0;
  std::vector<GateSlot> slots_;
  std::vector<Matrix> generators_;
};

// Unit cell: one two-qubit general gate per unordered pair, pairs in
// lexicographic order.  15 n(n-1)/2 parameters per cell.
CircuitTemplate template_a(int n_qubits, int cells);

// Unit cell: single-qubit rotations on every qubit, controlled rotations
// for every ordered (control, target) pair with controls ascending and
// targets ascending within each control, then a final layer of
// single-qubit rotations.  3n(n-1) + 6n parameters per cell.
CircuitTemplate template_b(int n_qubits, int cells);

// U(p) = exp(-i sum_i p_i G_i) for Hermitian generators G_i, evaluated
// exactly by eigendecomposition (global phase retained).  One parameter
// per generator.
CircuitTemplate template_exponential(int n_qubits,
                                     std::vector<Matrix> generators);

// Full unitary of the bound circuit.  Throws std::invalid_argument if the
// parameter count does not match or any parameter is not finite.
Matrix bind(const CircuitTemplate& tpl, const Eigen::VectorXd& params);

// In-place gate-by-gate action on raw amplitudes; the workhorse for cost
// evaluations (never materializes the full unitary for kA/kB).
void apply_circuit(const CircuitTemplate& tpl, const Eigen::VectorXd& params,
                   Vector& amplitudes);
void apply_circuit_adjoint(const CircuitTemplate& tpl,
                           const Eigen::VectorXd& params, Vector& amplitudes);

StateVector apply_circuit(const CircuitTemplate& tpl,
                          const Eigen::VectorXd& params,
                          const StateVector& psi);
StateVector apply_circuit_adjoint(const CircuitTemplate& tpl,
                                  const Eigen::VectorXd& params,
                                  const StateVector& psi);

}  // namespace qae
