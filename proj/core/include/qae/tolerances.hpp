#pragma once

namespace qae::tol {

// state-vector normalization and density-matrix trace
inline constexpr double kNorm = 1e-12;
// density-matrix hermiticity at construction
inline constexpr double kHermitian = 1e-12;
// density-matrix eigenvalue floor (diagnostics; not enforced at construction)
inline constexpr double kEigenvalueFloor = -1e-10;
// unitarity of matrices passed to apply_unitary / trash_state
inline constexpr double kUnitary = 1e-10;
// hermiticity of observables passed to expectation()
inline constexpr double kObservable = 1e-10;
// Pauli coefficients below this magnitude are dropped by simplify()
inline constexpr double kCoefficientPrune = 1e-14;
// imaginary residue allowed on physically real quantities
inline constexpr double kRealResidue = 1e-12;
// regularizer inside the training objective log10(1 - C2 + epsilon)
inline constexpr double kObjectiveEpsilon = 1e-16;
// ensemble weights must sum to one within this
inline constexpr double kWeightSum = 1e-12;

}  // namespace qae::tol

// Thresholds used by the acceptance suite.  Collected here so every
// headline number lives next to the numeric tolerances it depends on.
namespace qae::accept {

// -log10 of the mean round-trip infidelity on the H2 test grid (4->2, 4->1)
inline constexpr double kH2FidelityNeglog = 5.0;
// mean |E(rho_out) - E_exact| on the H2 test grid, Hartree
inline constexpr double kH2EnergyMae = 1.6e-3;
// 2x1 Hubbard, template A, 4->3
inline constexpr double kHubbardA43Neglog = 5.0;
// 2x1 Hubbard 4->2: template A must plateau, template B must not
inline constexpr double kHubbardA42Ceiling = 2.0;
inline constexpr double kHubbardB42Neglog = 3.0;
// 8-qubit 8->6 compressions are expected to fail below this
inline constexpr double kEightQubitCeiling = 3.0;

}  // namespace qae::accept
