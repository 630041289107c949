#include "qae/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qae/rng.hpp"
#include "qae/tolerances.hpp"

namespace qae {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 0 || n_qubits > 30)
    throw std::invalid_argument("qubit count out of range: " +
                                std::to_string(n_qubits));
}

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

// Offsets of all bit patterns over the positions in `bits`, i.e. the basis
// index contribution of that qubit group.
std::vector<std::uint64_t> subset_offsets(const std::vector<int>& bits) {
  std::vector<std::uint64_t> out(std::uint64_t{1} << bits.size());
  for (std::uint64_t v = 0; v < out.size(); ++v) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
      idx |= ((v >> i) & 1ULL) << bits[i];
    out[v] = idx;
  }
  return out;
}

std::vector<int> complement_of(const std::vector<int>& keep, int n) {
  std::vector<int> out;
  out.reserve(n - keep.size());
  std::size_t k = 0;
  for (int q = 0; q < n; ++q) {
    if (k < keep.size() && keep[k] == q)
      ++k;
    else
      out.push_back(q);
  }
  return out;
}

void validate_subset(const QubitSubset& keep, int n_qubits) {
  for (int q : keep.indices())
    if (q >= n_qubits)
      throw std::invalid_argument("qubit index " + std::to_string(q) +
                                  " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
}

}  // namespace

StateVector::StateVector(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits_);
  if (amplitudes_.size() != dim_of(n_qubits_))
    throw std::invalid_argument("amplitude vector has dimension " +
                                std::to_string(amplitudes_.size()) +
                                ", expected 2^" + std::to_string(n_qubits_));
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kNorm)
    throw std::invalid_argument("state vector is not normalized");
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  if (index >= static_cast<std::uint64_t>(dim_of(n_qubits)))
    throw std::invalid_argument("basis index out of range");
  Vector v = Vector::Zero(dim_of(n_qubits));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

StateVector StateVector::random_state(int n_qubits, std::mt19937_64& rng) {
  check_qubit_count(n_qubits);
  Vector v(dim_of(n_qubits));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double re = normal01(rng);
    double im = normal01(rng);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return StateVector(n_qubits, std::move(v));
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits_);
  if (matrix_.rows() != dim_of(n_qubits_) || matrix_.cols() != dim_of(n_qubits_))
    throw std::invalid_argument("density matrix has wrong dimensions");
  if (!is_hermitian(matrix_, tol::kHermitian))
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > tol::kNorm ||
      std::abs(matrix_.trace().imag()) > tol::kNorm)
    throw std::invalid_argument("density matrix trace is not one");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.n_qubits(),
                       psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::purity() const {
  return (matrix_ * matrix_).trace().real();
}

QubitSubset::QubitSubset(std::initializer_list<int> indices)
    : QubitSubset(std::vector<int>(indices)) {}

QubitSubset::QubitSubset(std::vector<int> indices)
    : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0)
      throw std::invalid_argument("negative qubit index");
    if (i > 0 && indices_[i] <= indices_[i - 1])
      throw std::invalid_argument("qubit subset must be strictly increasing");
  }
}

QubitSubset QubitSubset::range(int first, int count) {
  std::vector<int> v(count);
  for (int i = 0; i < count; ++i) v[i] = first + i;
  return QubitSubset(std::move(v));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector v(a.dim() * b.dim());
  for (Eigen::Index ib = 0; ib < b.dim(); ++ib)
    v.segment(ib * a.dim(), a.dim()) = b.amplitude(ib) * a.amplitudes();
  return StateVector(a.n_qubits() + b.n_qubits(), std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Matrix m(a.dim() * b.dim(), a.dim() * b.dim());
  for (Eigen::Index i = 0; i < b.dim(); ++i)
    for (Eigen::Index j = 0; j < b.dim(); ++j)
      m.block(i * a.dim(), j * a.dim(), a.dim(), a.dim()) =
          b.matrix()(i, j) * a.matrix();
  return DensityMatrix(a.n_qubits() + b.n_qubits(), std::move(m));
}

DensityMatrix partial_trace(const StateVector& psi, const QubitSubset& keep) {
  validate_subset(keep, psi.n_qubits());
  auto keep_off = subset_offsets(keep.indices());
  auto tr_off =
      subset_offsets(complement_of(keep.indices(), psi.n_qubits()));
  Eigen::Index dk = static_cast<Eigen::Index>(keep_off.size());
  Matrix rho = Matrix::Zero(dk, dk);
  for (std::uint64_t t : tr_off)
    for (Eigen::Index i = 0; i < dk; ++i) {
      Complex ai = psi.amplitude(static_cast<Eigen::Index>(keep_off[i] | t));
      if (ai == Complex{}) continue;
      for (Eigen::Index j = 0; j < dk; ++j)
        rho(i, j) += ai * std::conj(psi.amplitude(
                              static_cast<Eigen::Index>(keep_off[j] | t)));
    }
  return DensityMatrix(keep.size(), std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep) {
  validate_subset(keep, rho.n_qubits());
  auto keep_off = subset_offsets(keep.indices());
  auto tr_off = subset_offsets(complement_of(keep.indices(), rho.n_qubits()));
  Eigen::Index dk = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (std::uint64_t t : tr_off)
    for (Eigen::Index i = 0; i < dk; ++i)
      for (Eigen::Index j = 0; j < dk; ++j)
        out(i, j) += rho.matrix()(static_cast<Eigen::Index>(keep_off[i] | t),
                                  static_cast<Eigen::Index>(keep_off[j] | t));
  return DensityMatrix(keep.size(), std::move(out));
}

double fidelity_pure(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("fidelity requires equal dimensions");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity_pure(const StateVector& a, const DensityMatrix& rho) {
  if (a.dim() != rho.dim())
    throw std::invalid_argument("fidelity requires equal dimensions");
  Complex f = a.amplitudes().dot(rho.matrix() * a.amplitudes());
  return std::max(0.0, f.real());
}

bool is_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tolerance;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

StateVector apply_unitary(const Matrix& u, const StateVector& psi) {
  if (u.rows() != psi.dim() || u.cols() != psi.dim())
    throw std::invalid_argument("unitary dimension mismatch");
  if (!is_unitary(u, tol::kUnitary))
    throw std::invalid_argument("matrix is not unitary");
  return StateVector(psi.n_qubits(), u * psi.amplitudes());
}

DensityMatrix apply_unitary(const Matrix& u, const DensityMatrix& rho) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw std::invalid_argument("unitary dimension mismatch");
  if (!is_unitary(u, tol::kUnitary))
    throw std::invalid_argument("matrix is not unitary");
  return DensityMatrix(rho.n_qubits(), u * rho.matrix() * u.adjoint());
}

double expectation(const Matrix& h, const StateVector& psi) {
  if (h.rows() != psi.dim() || h.cols() != psi.dim())
    throw std::invalid_argument("observable dimension mismatch");
  if (!is_hermitian(h, tol::kObservable))
    throw std::invalid_argument("observable is not Hermitian");
  return psi.amplitudes().dot(h * psi.amplitudes()).real();
}

double expectation(const Matrix& h, const DensityMatrix& rho) {
  if (h.rows() != rho.dim() || h.cols() != rho.dim())
    throw std::invalid_argument("observable dimension mismatch");
  if (!is_hermitian(h, tol::kObservable))
    throw std::invalid_argument("observable is not Hermitian");
  return (h * rho.matrix()).trace().real();
}

}  // namespace qae
