#pragma once

#include "oqcar/complex_matrix.hpp"

namespace oqcar {

inline constexpr int kStates = 8;  // |SNC>,|SNS>,|SAC>,|SAS>,|DNC>,|DNS>,|DAC>,|DAS>

// Hermitian trace-one 8x8 state of the road/car/driver system, kept together
// with its column-stacked 64-entry vector view. Vector index M and matrix
// entry (i,j) are related by M = 8(j-1)+i, 1-based.
class DensityState {
 public:
  DensityState() : m_(kStates, kStates) { m_(0, 0) = 1.0; }
  explicit DensityState(ComplexMatrix m);

  static DensityState from_vector(const ComplexVector& v);
  ComplexVector to_vector() const;

  const ComplexMatrix& matrix() const { return m_; }
  Complex entry(int i, int j) const { return m_(i, j); }  // 0-based
  Complex at1(int i, int j) const { return m_.at1(i, j); }

  double trace_real() const { return m_.trace().real(); }
  double hermiticity_defect() const;          // max |rho_ij - conj(rho_ji)|
  double max_diag_imag() const;

  // Throws NumericalError when the hermiticity/trace defects exceed the
  // given tolerances. Construction-time states hold these at 1e-12;
  // evolved states are only guaranteed to 1e-10.
  void check(double hermit_tol, double trace_tol) const;

 private:
  ComplexMatrix m_;
};

}  // namespace oqcar
