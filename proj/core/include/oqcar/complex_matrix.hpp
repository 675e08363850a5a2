#pragma once

#include <complex>
#include <vector>

namespace oqcar {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense complex matrix with fixed dimensions. Storage is row-major and
// 0-based; at1()/set1() give the 1-based view used by the sparse-structure
// builders.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Complex at1(int i, int j) const { return (*this)(i - 1, j - 1); }
  void set1(int i, int j, Complex v) { (*this)(i - 1, j - 1) = v; }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(Complex s) const;
  ComplexMatrix& operator+=(const ComplexMatrix& o);

  // this += s * o, entrywise
  void axpy(Complex s, const ComplexMatrix& o);

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix adjoint() const;

  Complex trace() const;
  double norm_one() const;  // max absolute column sum
  double max_abs() const;
  double max_abs_diff(const ComplexMatrix& o) const;
  bool equals_exactly(const ComplexMatrix& o) const;
  bool all_finite() const;

  ComplexVector multiply(const ComplexVector& v) const;

  const ComplexVector& data() const { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  ComplexVector a_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Matrix exponential by scaling and squaring with a fixed order-13 rational
// approximant; accurate to near machine precision for the sizes used here.
ComplexMatrix expm(const ComplexMatrix& a);

// Solve a*x = b for dense complex a via partially pivoted LU. b is consumed
// column by column.
ComplexMatrix lu_solve(ComplexMatrix a, ComplexMatrix b);

}  // namespace oqcar
