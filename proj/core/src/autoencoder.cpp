#include "qae/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qae/rng.hpp"
#include "qae/tolerances.hpp"

namespace qae {

namespace {

// Latent index l is the low bits, trash index t the high bits:
// basis index = t * 2^n_latent + l.

void check_split(int n_qubits, int n_latent, const StateVector& reference) {
  if (n_latent < 1 || n_latent >= n_qubits)
    throw std::invalid_argument("latent size must be in [1, n_qubits)");
  if (reference.n_qubits() != n_qubits - n_latent)
    throw std::invalid_argument("reference register size mismatch");
}

// F = <a| Tr_A[phi phi^dagger] |a> without forming the reduced matrix:
// sum_l |sum_t conj(a_t) phi[t, l]|^2
double trash_fidelity(const Vector& phi, const Vector& ref, Eigen::Index dl) {
  const Eigen::Index dt = ref.size();
  double f = 0.0;
  for (Eigen::Index l = 0; l < dl; ++l) {
    Complex g{};
    for (Eigen::Index t = 0; t < dt; ++t)
      g += std::conj(ref(t)) * phi(t * dl + l);
    f += std::norm(g);
  }
  return f;
}

// G[l] = sum_t conj(a_t) phi[t, l]
Vector latent_overlap(const Vector& phi, const Vector& ref, Eigen::Index dl) {
  const Eigen::Index dt = ref.size();
  Vector g = Vector::Zero(dl);
  for (Eigen::Index t = 0; t < dt; ++t)
    g += std::conj(ref(t)) * phi.segment(t * dl, dl);
  return g;
}

// rho_A[l, l'] = sum_t phi[t, l] conj(phi[t, l'])
Matrix latent_density(const Vector& phi, Eigen::Index dl) {
  const Eigen::Index dt = phi.size() / dl;
  Matrix rho = Matrix::Zero(dl, dl);
  for (Eigen::Index t = 0; t < dt; ++t) {
    auto block = phi.segment(t * dl, dl);
    rho += block * block.adjoint();
  }
  return rho;
}

using Encoder = std::function<Vector(const Vector&)>;

double c2_impl(const TrainingEnsemble& ens, const Encoder& encode) {
  const Eigen::Index dl = Eigen::Index{1} << ens.n_latent();
  double c2 = 0.0;
  for (std::size_t i = 0; i < ens.states().size(); ++i) {
    Vector phi = encode(ens.states()[i].amplitudes());
    c2 += ens.weights()[i] *
          trash_fidelity(phi, ens.reference().amplitudes(), dl);
  }
  return c2;
}

double c1_impl(const TrainingEnsemble& ens, const Encoder& encode) {
  const Eigen::Index dl = Eigen::Index{1} << ens.n_latent();
  double c1 = 0.0;
  for (std::size_t i = 0; i < ens.states().size(); ++i) {
    Vector phi = encode(ens.states()[i].amplitudes());
    Vector g = latent_overlap(phi, ens.reference().amplitudes(), dl);
    Matrix rho_a = latent_density(phi, dl);
    c1 += ens.weights()[i] * (g.adjoint() * rho_a * g)(0, 0).real();
  }
  return c1;
}

void check_matrix_encoder(const Matrix& u, int n_qubits) {
  if (u.rows() != (Eigen::Index{1} << n_qubits) || u.rows() != u.cols())
    throw std::invalid_argument("unitary dimension mismatch");
  if (!is_unitary(u, tol::kUnitary))
    throw std::invalid_argument("matrix is not unitary");
}

}  // namespace

TrainingEnsemble::TrainingEnsemble(int n_latent, int n_trash,
                                   StateVector reference,
                                   std::vector<StateVector> states,
                                   std::vector<double> weights)
    : n_latent_(n_latent),
      n_trash_(n_trash),
      reference_(std::move(reference)),
      states_(std::move(states)),
      weights_(std::move(weights)) {
  if (n_latent_ < 1 || n_trash_ < 1)
    throw std::invalid_argument("latent and trash registers must be nonempty");
  if (reference_.n_qubits() != n_trash_)
    throw std::invalid_argument("reference must live on the trash register");
  if (states_.empty())
    throw std::invalid_argument("ensemble must contain at least one state");
  for (const StateVector& s : states_)
    if (s.n_qubits() != n_latent_ + n_trash_)
      throw std::invalid_argument("ensemble state register size mismatch");
  if (weights_.size() != states_.size())
    throw std::invalid_argument("one weight per state required");
  double sum = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw std::invalid_argument("weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::kWeightSum)
    throw std::invalid_argument("weights must sum to one");
}

TrainingEnsemble TrainingEnsemble::uniform(int n_latent, int n_trash,
                                           StateVector reference,
                                           std::vector<StateVector> states) {
  if (states.empty())
    throw std::invalid_argument("ensemble must contain at least one state");
  std::size_t m = states.size();
  // exact sum-to-one split regardless of divisibility
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  double sum = std::accumulate(w.begin(), w.end() - 1, 0.0);
  w.back() = 1.0 - sum;
  return TrainingEnsemble(n_latent, n_trash, std::move(reference),
                          std::move(states), std::move(w));
}

DensityMatrix trash_state(const Eigen::VectorXd& params,
                          const CircuitTemplate& tpl, const StateVector& psi,
                          int n_latent) {
  if (tpl.n_qubits() != psi.n_qubits())
    throw std::invalid_argument("state does not match template register");
  if (n_latent < 1 || n_latent >= psi.n_qubits())
    throw std::invalid_argument("latent size must be in [1, n_qubits)");
  StateVector phi = apply_circuit(tpl, params, psi);
  return partial_trace(
      phi, QubitSubset::range(n_latent, psi.n_qubits() - n_latent));
}

DensityMatrix trash_state(const Matrix& u, const StateVector& psi,
                          int n_latent) {
  check_matrix_encoder(u, psi.n_qubits());
  if (n_latent < 1 || n_latent >= psi.n_qubits())
    throw std::invalid_argument("latent size must be in [1, n_qubits)");
  StateVector phi(psi.n_qubits(), u * psi.amplitudes());
  return partial_trace(
      phi, QubitSubset::range(n_latent, psi.n_qubits() - n_latent));
}

double cost_c2(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
               const TrainingEnsemble& ens) {
  if (tpl.n_qubits() != ens.n_qubits())
    throw std::invalid_argument("ensemble does not match template register");
  return c2_impl(ens, [&](const Vector& in) {
    Vector v = in;
    apply_circuit(tpl, params, v);
    return v;
  });
}

double cost_c2(const Matrix& u, const TrainingEnsemble& ens) {
  check_matrix_encoder(u, ens.n_qubits());
  return c2_impl(ens, [&](const Vector& in) { return Vector(u * in); });
}

double cost_c1(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
               const TrainingEnsemble& ens) {
  if (tpl.n_qubits() != ens.n_qubits())
    throw std::invalid_argument("ensemble does not match template register");
  return c1_impl(ens, [&](const Vector& in) {
    Vector v = in;
    apply_circuit(tpl, params, v);
    return v;
  });
}

double cost_c1(const Matrix& u, const TrainingEnsemble& ens) {
  check_matrix_encoder(u, ens.n_qubits());
  return c1_impl(ens, [&](const Vector& in) { return Vector(u * in); });
}

double objective(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
                 const TrainingEnsemble& ens) {
  // rounding can push C2 a few ulps above 1; the floor keeps the log finite
  double infidelity = std::max(1.0 - cost_c2(params, tpl, ens), 0.0);
  return std::log10(infidelity + tol::kObjectiveEpsilon);
}

RoundTripResult roundtrip(const Eigen::VectorXd& params,
                          const CircuitTemplate& tpl, const StateVector& psi,
                          int n_latent, const StateVector& reference,
                          const Matrix* hamiltonian) {
  if (tpl.n_qubits() != psi.n_qubits())
    throw std::invalid_argument("state does not match template register");
  check_split(psi.n_qubits(), n_latent, reference);
  const Eigen::Index dl = Eigen::Index{1} << n_latent;
  const Eigen::Index dim = psi.dim();

  Vector phi = psi.amplitudes();
  apply_circuit(tpl, params, phi);

  // rho_out = U^dagger (rho_A x |a><a|) U expanded over the eigenpairs of
  // the rank <= 2^n_latent latent state rho_A
  Eigen::SelfAdjointEigenSolver<Matrix> solver(latent_density(phi, dl));
  Matrix rho_out = Matrix::Zero(dim, dim);
  double fidelity = 0.0;
  std::optional<double> energy;
  if (hamiltonian != nullptr) {
    if (hamiltonian->rows() != dim || hamiltonian->cols() != dim)
      throw std::invalid_argument("Hamiltonian dimension mismatch");
    if (!is_hermitian(*hamiltonian, tol::kObservable))
      throw std::invalid_argument("Hamiltonian is not Hermitian");
    energy = 0.0;
  }
  for (Eigen::Index b = 0; b < dl; ++b) {
    double lambda = solver.eigenvalues()(b);
    if (lambda < tol::kCoefficientPrune) continue;
    // v_b x |a>
    Vector w = Vector::Zero(dim);
    for (Eigen::Index t = 0; t < reference.dim(); ++t)
      w.segment(t * dl, dl) = reference.amplitude(t) * solver.eigenvectors().col(b);
    apply_circuit_adjoint(tpl, params, w);
    rho_out += lambda * (w * w.adjoint());
    fidelity += lambda * std::norm(psi.amplitudes().dot(w));
    if (energy) *energy += lambda * w.dot(*hamiltonian * w).real();
  }
  return {fidelity, DensityMatrix(psi.n_qubits(), std::move(rho_out)), energy};
}

StateVector decode(const Eigen::VectorXd& params, const CircuitTemplate& tpl,
                   const StateVector& latent, const StateVector& reference) {
  if (latent.n_qubits() + reference.n_qubits() != tpl.n_qubits())
    throw std::invalid_argument(
        "latent plus reference must fill the template register");
  return apply_circuit_adjoint(tpl, params, tensor(latent, reference));
}

SwapTestResult swap_test(double fidelity, std::uint64_t shots,
                         std::uint64_t seed) {
  if (fidelity < 0.0 || fidelity > 1.0 + 1e-12)
    throw std::invalid_argument("fidelity must lie in [0, 1]");
  double p0_exact = 0.5 * (1.0 + fidelity);
  if (shots == 0) return {fidelity, p0_exact, 0};
  std::mt19937_64 rng(seed);
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 0; i < shots; ++i)
    if (uniform01(rng) < p0_exact) ++zeros;
  double p0 = static_cast<double>(zeros) / static_cast<double>(shots);
  double estimate = std::clamp(2.0 * p0 - 1.0, 0.0, 1.0);
  return {estimate, p0, shots};
}

SwapTestResult swap_test(const StateVector& a, const StateVector& b,
                         std::uint64_t shots, std::uint64_t seed) {
  return swap_test(fidelity_pure(a, b), shots, seed);
}

}  // namespace qae
