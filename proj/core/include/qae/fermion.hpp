#pragma once

#include <vector>

#include "qae/pauli.hpp"

namespace qae {

struct LadderOp {
  int mode;
  bool dagger;
};

// Scaled product of ladder operators.  ops()[0] is the leftmost factor,
// i.e. the last one applied to a ket.
class FermionMonomial {
 public:
  FermionMonomial(std::vector<LadderOp> ops, Complex coefficient);

  static FermionMonomial one_body(int p, int q, Complex coefficient);
  // a+_p a+_q a_r a_s
  static FermionMonomial two_body(int p, int q, int r, int s,
                                  Complex coefficient);

  const std::vector<LadderOp>& ops() const { return ops_; }
  Complex coefficient() const { return coefficient_; }
  int max_mode() const;

 private:
  std::vector<LadderOp> ops_;
  Complex coefficient_;
};

// Jordan-Wigner images on n_modes qubits (qubit p represents mode p):
// a_p = Z_0..Z_{p-1} (X_p + i Y_p)/2
PauliSum jw_annihilation(int p, int n_modes);
PauliSum jw_creation(int p, int n_modes);
PauliSum jw_monomial(const FermionMonomial& m, int n_modes);

}  // namespace qae
