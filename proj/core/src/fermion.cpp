#include "qae/fermion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qae {

FermionMonomial::FermionMonomial(std::vector<LadderOp> ops, Complex coefficient)
    : ops_(std::move(ops)), coefficient_(coefficient) {
  for (const LadderOp& op : ops_)
    if (op.mode < 0)
      throw std::invalid_argument("negative fermionic mode index");
}

FermionMonomial FermionMonomial::one_body(int p, int q, Complex coefficient) {
  return FermionMonomial({{p, true}, {q, false}}, coefficient);
}

FermionMonomial FermionMonomial::two_body(int p, int q, int r, int s,
                                          Complex coefficient) {
  return FermionMonomial({{p, true}, {q, true}, {r, false}, {s, false}},
                         coefficient);
}

int FermionMonomial::max_mode() const {
  int m = -1;
  for (const LadderOp& op : ops_) m = std::max(m, op.mode);
  return m;
}

namespace {

PauliSum jw_ladder(int p, int n_modes, bool dagger) {
  if (n_modes <= 0)
    throw std::invalid_argument("mode count must be positive");
  if (p < 0 || p >= n_modes)
    throw std::invalid_argument("mode index " + std::to_string(p) +
                                " out of range for " +
                                std::to_string(n_modes) + " modes");
  std::string x(static_cast<std::size_t>(n_modes), 'I');
  for (int j = 0; j < p; ++j) x[j] = 'Z';
  std::string y = x;
  x[p] = 'X';
  y[p] = 'Y';
  PauliSum out(n_modes);
  out.add(x, Complex(0.5, 0.0));
  out.add(y, dagger ? Complex(0.0, -0.5) : Complex(0.0, 0.5));
  return out;
}

}  // namespace

PauliSum jw_annihilation(int p, int n_modes) {
  return jw_ladder(p, n_modes, false);
}

PauliSum jw_creation(int p, int n_modes) { return jw_ladder(p, n_modes, true); }

PauliSum jw_monomial(const FermionMonomial& m, int n_modes) {
  if (m.max_mode() >= n_modes)
    throw std::invalid_argument("monomial touches modes beyond the register");
  PauliSum acc(n_modes);
  acc.add(PauliString::identity(n_modes), m.coefficient());
  for (const LadderOp& op : m.ops())
    acc = acc * jw_ladder(op.mode, n_modes, op.dagger);
  return acc;
}

}  // namespace qae
