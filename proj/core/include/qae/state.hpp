#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qae {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Computational-basis convention used throughout: qubit 0 is the least
// significant bit of the basis index.  tensor(a, b) therefore places the
// qubits of `a` at indices [0, a.n_qubits()) and those of `b` above them.

class StateVector {
 public:
  StateVector(int n_qubits, Vector amplitudes);

  static StateVector basis_state(int n_qubits, std::uint64_t index);
  static StateVector zero_state(int n_qubits);
  // Haar-random pure state (complex normal amplitudes, normalized)
  static StateVector random_state(int n_qubits, std::mt19937_64& rng);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

 private:
  int n_qubits_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Matrix matrix);

  static DensityMatrix from_pure(const StateVector& psi);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  double purity() const;  // Tr[rho^2]

 private:
  int n_qubits_;
  Matrix matrix_;
};

// Strictly increasing list of qubit indices naming a tensor factor.
class QubitSubset {
 public:
  QubitSubset(std::initializer_list<int> indices);
  explicit QubitSubset(std::vector<int> indices);

  // contiguous range [first, first + count)
  static QubitSubset range(int first, int count);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }

 private:
  std::vector<int> indices_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state on `keep`; complement qubits are traced out.
DensityMatrix partial_trace(const StateVector& psi, const QubitSubset& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep);

double fidelity_pure(const StateVector& a, const StateVector& b);
double fidelity_pure(const StateVector& a, const DensityMatrix& rho);

// Throws std::invalid_argument unless u is unitary within tol::kUnitary.
StateVector apply_unitary(const Matrix& u, const StateVector& psi);
DensityMatrix apply_unitary(const Matrix& u, const DensityMatrix& rho);

// Throws std::invalid_argument unless h is Hermitian within tol::kObservable.
double expectation(const Matrix& h, const StateVector& psi);
double expectation(const Matrix& h, const DensityMatrix& rho);

bool is_unitary(const Matrix& u, double tolerance);
bool is_hermitian(const Matrix& m, double tolerance);

}  // namespace qae
