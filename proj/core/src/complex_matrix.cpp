#include "oqcar/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace oqcar {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in +");
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in -");
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in *");
  ComplexMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      const Complex* brow = &o.a_[static_cast<size_t>(k) * o.cols_];
      Complex* rrow = &r.a_[static_cast<size_t>(i) * o.cols_];
      for (int j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = s * a_[k];
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in +=");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

void ComplexMatrix::axpy(Complex s, const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in axpy");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += s * o.a_[k];
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const { return transpose().conjugate(); }

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  const int n = rows_ < cols_ ? rows_ : cols_;
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::norm_one() const {
  double best = 0.0;
  for (int j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& v : a_) best = std::max(best, std::abs(v));
  return best;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  double best = 0.0;
  for (size_t k = 0; k < a_.size(); ++k) best = std::max(best, std::abs(a_[k] - o.a_[k]));
  return best;
}

bool ComplexMatrix::equals_exactly(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t k = 0; k < a_.size(); ++k)
    if (a_[k] != o.a_[k]) return false;
  return true;
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexVector ComplexMatrix::multiply(const ComplexVector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("dimension mismatch in matvec");
  ComplexVector r(rows_, Complex(0.0, 0.0));
  for (int i = 0; i < rows_; ++i) {
    Complex s = 0.0;
    const Complex* row = &a_[static_cast<size_t>(i) * cols_];
    for (int j = 0; j < cols_; ++j) s += row[j] * v[j];
    r[i] = s;
  }
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix lu_solve(ComplexMatrix a, ComplexMatrix b) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw std::invalid_argument("lu_solve dimension mismatch");
  const int n = a.rows();
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;

  for (int k = 0; k < n; ++k) {
    int pk = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        pk = i;
      }
    }
    if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (pk != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pk, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(pk, j));
    }
    const Complex akk = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / akk;
      a(i, k) = f;
      if (f == Complex(0.0, 0.0)) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  // back substitution
  for (int k = n - 1; k >= 0; --k) {
    const Complex akk = a(k, k);
    for (int j = 0; j < b.cols(); ++j) {
      Complex s = b(k, j);
      for (int i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
      b(k, j) = s / akk;
    }
  }
  return b;
}

ComplexMatrix expm(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm requires a square matrix");
  const int n = a.rows();

  // order-13 numerator/denominator coefficients
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;

  const double nrm = a.norm_one();
  int squarings = 0;
  ComplexMatrix as = a;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    const double scale = std::ldexp(1.0, -squarings);
    as = a * Complex(scale, 0.0);
  }

  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = as * as;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  // U = A * (A6*(b13*A6 + b11*A4 + b9*A2) + b7*A6 + b5*A4 + b3*A2 + b1*I)
  ComplexMatrix w1 = a6 * b[13] + a4 * b[11] + a2 * b[9];
  ComplexMatrix w2 = a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1];
  ComplexMatrix u = as * (a6 * w1 + w2);
  // V = A6*(b12*A6 + b10*A4 + b8*A2) + b6*A6 + b4*A4 + b2*A2 + b0*I
  ComplexMatrix z1 = a6 * b[12] + a4 * b[10] + a2 * b[8];
  ComplexMatrix z2 = a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];
  ComplexMatrix v = a6 * z1 + z2;

  ComplexMatrix r = lu_solve(v - u, v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

}  // namespace oqcar
