#include "qae/circuits.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qae/tolerances.hpp"

namespace qae {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;

void check_register(int n_qubits) {
  if (n_qubits < 2 || n_qubits > 16)
    throw std::invalid_argument("register size out of range: " +
                                std::to_string(n_qubits));
}

// exp(-i (a XX + b YY + c ZZ)); the three terms commute, so the result is
// the product of the closed forms cos t I - i sin t P.
Matrix4cd xx_yy_zz_exponential(double a, double b, double c) {
  auto term = [](double t, const Matrix4cd& p) -> Matrix4cd {
    return std::cos(t) * Matrix4cd::Identity() -
           Complex(0, 1) * std::sin(t) * p;
  };
  Matrix4cd xx = Matrix4cd::Zero();
  xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1.0;
  Matrix4cd yy = Matrix4cd::Zero();
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  Matrix4cd zz = Matrix4cd::Identity();
  zz(1, 1) = zz(2, 2) = -1.0;
  return term(a, xx) * term(b, yy) * term(c, zz);
}

// kron with the FIRST factor on the low bit: out[i2*2+i1, j2*2+j1] =
// hi(i2,j2) * lo(i1,j1)
Matrix4cd kron2(const Matrix2cd& lo, const Matrix2cd& hi) {
  Matrix4cd out;
  for (int i2 = 0; i2 < 2; ++i2)
    for (int j2 = 0; j2 < 2; ++j2)
      out.block<2, 2>(2 * i2, 2 * j2) = hi(i2, j2) * lo;
  return out;
}

void apply_single(Vector& v, int q, const Matrix2cd& g) {
  const Eigen::Index stride = Eigen::Index{1} << q;
  const Eigen::Index dim = v.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride)
    for (Eigen::Index i = base; i < base + stride; ++i) {
      Complex a0 = v(i);
      Complex a1 = v(i + stride);
      v(i) = g(0, 0) * a0 + g(0, 1) * a1;
      v(i + stride) = g(1, 0) * a0 + g(1, 1) * a1;
    }
}

void apply_controlled(Vector& v, int control, int target,
                      const Matrix2cd& g) {
  const Eigen::Index cbit = Eigen::Index{1} << control;
  const Eigen::Index stride = Eigen::Index{1} << target;
  const Eigen::Index dim = v.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride)
    for (Eigen::Index i = base; i < base + stride; ++i) {
      if (!(i & cbit)) continue;
      Complex a0 = v(i);
      Complex a1 = v(i + stride);
      v(i) = g(0, 0) * a0 + g(0, 1) * a1;
      v(i + stride) = g(1, 0) * a0 + g(1, 1) * a1;
    }
}

void apply_pair(Vector& v, int qa, int qb, const Matrix4cd& g) {
  const Eigen::Index sa = Eigen::Index{1} << qa;
  const Eigen::Index sb = Eigen::Index{1} << qb;
  const Eigen::Index dim = v.size();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & sa) || (i & sb)) continue;
    Complex a00 = v(i);
    Complex a01 = v(i + sa);
    Complex a10 = v(i + sb);
    Complex a11 = v(i + sa + sb);
    v(i) = g(0, 0) * a00 + g(0, 1) * a01 + g(0, 2) * a10 + g(0, 3) * a11;
    v(i + sa) = g(1, 0) * a00 + g(1, 1) * a01 + g(1, 2) * a10 + g(1, 3) * a11;
    v(i + sb) = g(2, 0) * a00 + g(2, 1) * a01 + g(2, 2) * a10 + g(2, 3) * a11;
    v(i + sa + sb) =
        g(3, 0) * a00 + g(3, 1) * a01 + g(3, 2) * a10 + g(3, 3) * a11;
  }
}

void check_params(const CircuitTemplate& tpl, const Eigen::VectorXd& params) {
  if (params.size() != tpl.param_count())
    throw std::invalid_argument(
        "parameter count mismatch: got " + std::to_string(params.size()) +
        ", template needs " + std::to_string(tpl.param_count()));
  if (!params.allFinite())
    throw std::invalid_argument("parameter vector contains non-finite values");
}

Matrix exponential_unitary(const CircuitTemplate& tpl,
                           const Eigen::VectorXd& params) {
  const Eigen::Index dim = Eigen::Index{1} << tpl.n_qubits();
  Matrix gen = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < params.size(); ++i)
    gen += params(i) * tpl.generators()[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gen);
  Vector phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    phases(k) = std::exp(Complex(0.0, -solver.eigenvalues()(k)));
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

enum class Direction { kForward, kAdjoint };

void run_circuit(const CircuitTemplate& tpl, const Eigen::VectorXd& params,
                 Vector& v, Direction dir) {
  check_params(tpl, params);
  if (v.size() != (Eigen::Index{1} << tpl.n_qubits()))
    throw std::invalid_argument("state dimension does not match template");

  if (tpl.kind() == TemplateKind::kExponential) {
    Matrix u = exponential_unitary(tpl, params);
    v = (dir == Direction::kForward) ? Vector(u * v) : Vector(u.adjoint() * v);
    return;
  }

  const auto& slots = tpl.slots();
  auto run_slot = [&](const GateSlot& slot) {
    auto p = params.segment(slot.param_offset, slot.param_count);
    switch (slot.kind) {
      case GateKind::kSingle: {
        Matrix2cd g = rot_zyz(p(0), p(1), p(2));
        if (dir == Direction::kAdjoint) g = Matrix2cd(g.adjoint());
        apply_single(v, slot.qubit_a, g);
        break;
      }
      case GateKind::kControlled: {
        Matrix2cd g = rot_zyz(p(0), p(1), p(2));
        if (dir == Direction::kAdjoint) g = Matrix2cd(g.adjoint());
        apply_controlled(v, slot.qubit_a, slot.qubit_b, g);
        break;
      }
      case GateKind::kTwoQubit: {
        Matrix4cd g = two_qubit_general(p);
        if (dir == Direction::kAdjoint) g = Matrix4cd(g.adjoint());
        apply_pair(v, slot.qubit_a, slot.qubit_b, g);
        break;
      }
      case GateKind::kExponential:
        throw std::logic_error("exponential slot in gate circuit");
    }
  };

  if (dir == Direction::kForward) {
    for (const GateSlot& slot : slots) run_slot(slot);
  } else {
    for (auto it = slots.rbegin(); it != slots.rend(); ++it) run_slot(*it);
  }
}

}  // namespace

Eigen::Matrix2cd rot_zyz(double t1, double t2, double t3) {
  Matrix2cd rz1, ry, rz3;
  Complex e1m = std::exp(Complex(0.0, -0.5 * t1));
  Complex e3m = std::exp(Complex(0.0, -0.5 * t3));
  rz1 << e1m, 0.0, 0.0, std::conj(e1m);
  double c = std::cos(0.5 * t2);
  double s = std::sin(0.5 * t2);
  ry << c, -s, s, c;
  rz3 << e3m, 0.0, 0.0, std::conj(e3m);
  return rz1 * ry * rz3;
}

Eigen::Matrix4cd two_qubit_general(const Eigen::VectorXd& params) {
  if (params.size() != 15)
    throw std::invalid_argument("two_qubit_general needs 15 parameters");
  Matrix2cd a1 = rot_zyz(params(0), params(1), params(2));
  Matrix2cd a2 = rot_zyz(params(3), params(4), params(5));
  Matrix2cd b1 = rot_zyz(params(9), params(10), params(11));
  Matrix2cd b2 = rot_zyz(params(12), params(13), params(14));
  return kron2(a1, a2) *
         xx_yy_zz_exponential(params(6), params(7), params(8)) *
         kron2(b1, b2);
}

CircuitTemplate template_a(int n_qubits, int cells) {
  check_register(n_qubits);
  if (cells <= 0) throw std::invalid_argument("cell count must be positive");
  CircuitTemplate tpl;
  tpl.kind_ = TemplateKind::kA;
  tpl.n_qubits_ = n_qubits;
  tpl.cells_ = cells;
  int offset = 0;
  for (int cell = 0; cell < cells; ++cell)
    for (int a = 0; a < n_qubits; ++a)
      for (int b = a + 1; b < n_qubits; ++b) {
        tpl.slots_.push_back({GateKind::kTwoQubit, a, b, offset, 15});
        offset += 15;
      }
  tpl.param_count_ = offset;
  return tpl;
}

CircuitTemplate template_b(int n_qubits, int cells) {
  check_register(n_qubits);
  if (cells <= 0) throw std::invalid_argument("cell count must be positive");
  CircuitTemplate tpl;
  tpl.kind_ = TemplateKind::kB;
  tpl.n_qubits_ = n_qubits;
  tpl.cells_ = cells;
  int offset = 0;
  auto single_layer = [&] {
    for (int q = 0; q < n_qubits; ++q) {
      tpl.slots_.push_back({GateKind::kSingle, q, -1, offset, 3});
      offset += 3;
    }
  };
  for (int cell = 0; cell < cells; ++cell) {
    single_layer();
    for (int c = 0; c < n_qubits; ++c)
      for (int t = 0; t < n_qubits; ++t) {
        if (t == c) continue;
        tpl.slots_.push_back({GateKind::kControlled, c, t, offset, 3});
        offset += 3;
      }
    single_layer();
  }
  tpl.param_count_ = offset;
  return tpl;
}

CircuitTemplate template_exponential(int n_qubits,
                                     std::vector<Matrix> generators) {
  check_register(n_qubits);
  if (generators.empty())
    throw std::invalid_argument("at least one generator required");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  for (const Matrix& g : generators) {
    if (g.rows() != dim || g.cols() != dim)
      throw std::invalid_argument("generator dimension mismatch");
    if (!is_hermitian(g, tol::kObservable))
      throw std::invalid_argument("generator is not Hermitian");
  }
  CircuitTemplate tpl;
  tpl.kind_ = TemplateKind::kExponential;
  tpl.n_qubits_ = n_qubits;
  tpl.cells_ = 1;
  tpl.param_count_ = static_cast<int>(generators.size());
  tpl.slots_.push_back(
      {GateKind::kExponential, 0, n_qubits - 1, 0, tpl.param_count_});
  tpl.generators_ = std::move(generators);
  return tpl;
}

Matrix bind(const CircuitTemplate& tpl, const Eigen::VectorXd& params) {
  check_params(tpl, params);
  if (tpl.kind() == TemplateKind::kExponential)
    return exponential_unitary(tpl, params);
  const Eigen::Index dim = Eigen::Index{1} << tpl.n_qubits();
  Matrix u = Matrix::Identity(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Vector v = u.col(col);
    run_circuit(tpl, params, v, Direction::kForward);
    u.col(col) = v;
  }
  return u;
}

void apply_circuit(const CircuitTemplate& tpl, const Eigen::VectorXd& params,
                   Vector& amplitudes) {
  run_circuit(tpl, params, amplitudes, Direction::kForward);
}

void apply_circuit_adjoint(const CircuitTemplate& tpl,
                           const Eigen::VectorXd& params, Vector& amplitudes) {
  run_circuit(tpl, params, amplitudes, Direction::kAdjoint);
}

StateVector apply_circuit(const CircuitTemplate& tpl,
                          const Eigen::VectorXd& params,
                          const StateVector& psi) {
  Vector v = psi.amplitudes();
  run_circuit(tpl, params, v, Direction::kForward);
  return StateVector(psi.n_qubits(), std::move(v));
}

StateVector apply_circuit_adjoint(const CircuitTemplate& tpl,
                                  const Eigen::VectorXd& params,
                                  const StateVector& psi) {
  Vector v = psi.amplitudes();
  run_circuit(tpl, params, v, Direction::kAdjoint);
  return StateVector(psi.n_qubits(), std::move(v));
}

}  // namespace qae
