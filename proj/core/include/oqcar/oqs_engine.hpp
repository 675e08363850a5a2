#pragma once

#include "oqcar/complex_matrix.hpp"
#include "oqcar/density_state.hpp"

namespace oqcar {

inline constexpr int kVecDim = kStates * kStates;  // 64

// ---- elementary operators -------------------------------------------------

// |m><n|, 1-based indices: single unit entry at (m, n).
ComplexMatrix jump_operator(int m, int n);

// Block-diagonal coupling Hamiltonian: four 2x2 all-ones blocks.
ComplexMatrix build_hamiltonian();

// ---- vectorized (column-stacked) superoperator pieces ----------------------
//
// Every piece below exists in two independent forms: a generic Kronecker
// assembly, and a direct sparse construction that writes only the nonzero
// entries. The two must agree exactly; the validation suite and the
// acceptance tests compare them entry for entry.

// H (x) I - I (x) H^T, generic Kronecker assembly.
ComplexMatrix vectorize_hamiltonian(const ComplexMatrix& h);

// Direct sparse construction of vectorize_hamiltonian(build_hamiltonian()):
// four identical 16x16 blocks whose off-diagonal 8x8 sub-blocks are the
// identity.
ComplexMatrix vectorize_hamiltonian_closed();

// 0.5 * (L'L (x) I + I (x) (L'L)*) for L = jump_operator(m, n).
ComplexMatrix build_phi(int m, int n);

// L (x) L* - Phi for L = jump_operator(m, n), by Kronecker assembly.
ComplexMatrix build_lambda(int m, int n);

// Direct sparse construction of build_lambda: fourteen -1/2 diagonal
// entries, and for m != n a -1 diagonal and a +1 off-diagonal entry.
ComplexMatrix build_lambda_closed(int m, int n);

// True when the cognition matrix has the expected sparsity: zero outside the
// four 2x2 diagonal blocks.
bool has_cognition_pattern(const ComplexMatrix& cognition);

struct VecL {
  ComplexMatrix matrix;
  // Set when the cognition matrix carries weight outside the block pattern;
  // the summed assembly is still correct, the sparse construction is not.
  bool structure_warning = false;
};

// Sum over (m, n) of cognition(m, n) * build_lambda(m, n).
VecL build_vec_l(const ComplexMatrix& cognition);

// Direct sparse construction of the same sum; requires the block pattern.
ComplexMatrix build_vec_l_closed(const ComplexMatrix& cognition);

// ---- full generator ---------------------------------------------------------

struct GeneratorMatrix {
  ComplexMatrix entries;  // 64x64, block-diagonal with four 16x16 blocks
  double alpha = 0.0;
  bool structure_warning = false;
};

// -i(1-alpha) vecH + alpha vecL assembled from the generic pieces.
GeneratorMatrix build_generator_brute(double alpha, const ComplexMatrix& cognition);

// Block-local construction: four 16x16 blocks, each made of 2x2 diagonal
// cells plus two near-identity off-diagonal 8x8 sub-blocks with a single
// cognition-weighted entry. Falls back to the summed assembly (with the
// structure warning set) when the cognition matrix leaves the block pattern.
GeneratorMatrix build_generator(double alpha, const ComplexMatrix& cognition);

// ---- evolution --------------------------------------------------------------

// exp(G t) applied to the vectorized state, reshaped back to a DensityState.
// Throws on non-finite or negative t; throws NumericalError when the trace
// drifts by more than 1e-8.
DensityState evolve(const GeneratorMatrix& g, const DensityState& rho0, double t);

// Fixed-step 4th-order integration of d(vec rho)/dt = G vec rho; independent
// cross-check for evolve. Step is min(0.01, 0.01 / max|G|).
DensityState evolve_rk4(const GeneratorMatrix& g, const DensityState& rho0, double t);

// Right-hand side of the master equation in matrix form: the commutator term
// plus the jump-operator dissipator, no vectorization involved.
ComplexMatrix master_equation_rhs(double alpha, const ComplexMatrix& cognition,
                                  const ComplexMatrix& rho);

// Fixed-step 4th-order integration of the matrix-form master equation;
// third, vectorization-free route. The column-stacked operator propagates
// the conjugate layout, so this state and the evolve() state agree on every
// diagonal weight (hence every probability) and mirror off the diagonal.
DensityState evolve_direct(double alpha, const ComplexMatrix& cognition, const DensityState& rho0,
                           double t, double step = 0.01);

}  // namespace oqcar
