#include "oqcar/oqs_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "oqcar/errors.hpp"

namespace oqcar {

namespace {

void check_index(int m, int n) {
  if (m < 1 || m > kStates || n < 1 || n > kStates)
    throw std::invalid_argument("jump operator indices must lie in 1..8");
}

// Other row of the 2x2 block containing row j (1-based): 1<->2, 3<->4, ...
int block_partner(int j) { return (j % 2 == 1) ? j + 1 : j - 1; }

// Diagonal entry M of the summed dissipator superoperator, expressed through
// the cognition entries that feed it. Terms are accumulated in ascending
// (row, col) order, the same order the summed assembly visits them, so both
// construction routes produce identical floating-point results.
double vec_l_diagonal(const ComplexMatrix& c, int m_index) {
  const int n = (m_index - 1) / kStates + 1;
  const int l = (m_index - 1) % kStates + 1;
  if (n == l) return -c.at1(block_partner(n), n).real();
  std::array<std::pair<int, int>, 4> pairs = {
      std::pair<int, int>{n, n}, {block_partner(n), n}, {l, l}, {block_partner(l), l}};
  std::sort(pairs.begin(), pairs.end());
  double s = 0.0;
  for (const auto& [row, col] : pairs) s += -0.5 * c.at1(row, col).real();
  return s;
}

}  // namespace

ComplexMatrix jump_operator(int m, int n) {
  check_index(m, n);
  ComplexMatrix l(kStates, kStates);
  l.set1(m, n, 1.0);
  return l;
}

ComplexMatrix build_hamiltonian() {
  ComplexMatrix h(kStates, kStates);
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) h(2 * b + i, 2 * b + j) = 1.0;
  return h;
}

ComplexMatrix vectorize_hamiltonian(const ComplexMatrix& h) {
  if (h.rows() != kStates || h.cols() != kStates)
    throw std::invalid_argument("vectorize_hamiltonian expects an 8x8 matrix");
  const ComplexMatrix id = ComplexMatrix::identity(kStates);
  return kron(h, id) - kron(id, h.transpose());
}

ComplexMatrix vectorize_hamiltonian_closed() {
  ComplexMatrix v(kVecDim, kVecDim);
  for (int block = 0; block < 4; ++block) {
    const int base = 16 * block;
    for (int half = 0; half < 2; ++half) {
      // X (+) X (+) X (+) X on the diagonal sub-blocks
      for (int cell = 0; cell < 4; ++cell) {
        const int r = base + 8 * half + 2 * cell;
        v(r, r + 1) = -1.0;
        v(r + 1, r) = -1.0;
      }
    }
    for (int k = 0; k < kStates; ++k) {
      v(base + k, base + 8 + k) = 1.0;
      v(base + 8 + k, base + k) = 1.0;
    }
  }
  return v;
}

ComplexMatrix build_phi(int m, int n) {
  check_index(m, n);
  const ComplexMatrix l = jump_operator(m, n);
  const ComplexMatrix ldl = l.adjoint() * l;
  const ComplexMatrix id = ComplexMatrix::identity(kStates);
  return (kron(ldl, id) + kron(id, ldl.conjugate())) * Complex(0.5, 0.0);
}

ComplexMatrix build_lambda(int m, int n) {
  check_index(m, n);
  const ComplexMatrix l = jump_operator(m, n);
  return kron(l, l.conjugate()) - build_phi(m, n);
}

ComplexMatrix build_lambda_closed(int m, int n) {
  check_index(m, n);
  ComplexMatrix a(kVecDim, kVecDim);
  for (int k = 1; k <= kStates; ++k) {
    if (k == n) continue;
    a.set1(kStates * (n - 1) + k, kStates * (n - 1) + k, -0.5);
    a.set1(kStates * (k - 1) + n, kStates * (k - 1) + n, -0.5);
  }
  if (m != n) {
    a.set1(9 * n - 8, 9 * n - 8, -1.0);
    a.set1(9 * m - 8, 9 * n - 8, 1.0);
  }
  return a;
}

bool has_cognition_pattern(const ComplexMatrix& cognition) {
  if (cognition.rows() != kStates || cognition.cols() != kStates) return false;
  for (int i = 0; i < kStates; ++i)
    for (int j = 0; j < kStates; ++j) {
      if (cognition(i, j).imag() != 0.0) return false;
      if (i / 2 != j / 2 && cognition(i, j) != Complex(0.0, 0.0)) return false;
    }
  return true;
}

VecL build_vec_l(const ComplexMatrix& cognition) {
  if (cognition.rows() != kStates || cognition.cols() != kStates)
    throw std::invalid_argument("cognition matrix must be 8x8");
  VecL out{ComplexMatrix(kVecDim, kVecDim), !has_cognition_pattern(cognition)};
  for (int m = 1; m <= kStates; ++m)
    for (int n = 1; n <= kStates; ++n) {
      const Complex g = cognition.at1(m, n);
      if (g == Complex(0.0, 0.0)) continue;
      out.matrix.axpy(g, build_lambda(m, n));
    }
  return out;
}

ComplexMatrix build_vec_l_closed(const ComplexMatrix& cognition) {
  if (!has_cognition_pattern(cognition))
    throw std::invalid_argument("sparse construction requires the block-pattern cognition matrix");
  ComplexMatrix a(kVecDim, kVecDim);
  for (int m_index = 1; m_index <= kVecDim; ++m_index)
    a.set1(m_index, m_index, vec_l_diagonal(cognition, m_index));
  for (int n = 1; n <= kStates; n += 2)  // odd columns feed the row below
    a.set1(9 * n + 1, 9 * n - 8, cognition.at1(n + 1, n).real());
  for (int n = 2; n <= kStates; n += 2)  // even columns feed the row above
    a.set1(9 * n - 17, 9 * n - 8, cognition.at1(n - 1, n).real());
  return a;
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
}

}  // namespace

GeneratorMatrix build_generator_brute(double alpha, const ComplexMatrix& cognition) {
  check_alpha(alpha);
  VecL l = build_vec_l(cognition);
  const ComplexMatrix vh = vectorize_hamiltonian(build_hamiltonian());
  const Complex beta(0.0, -(1.0 - alpha));
  GeneratorMatrix g{ComplexMatrix(kVecDim, kVecDim), alpha, l.structure_warning};
  for (int i = 0; i < kVecDim; ++i)
    for (int j = 0; j < kVecDim; ++j)
      g.entries(i, j) = beta * vh(i, j) + Complex(alpha, 0.0) * l.matrix(i, j);
  return g;
}

GeneratorMatrix build_generator(double alpha, const ComplexMatrix& cognition) {
  check_alpha(alpha);
  if (!has_cognition_pattern(cognition)) {
    GeneratorMatrix g = build_generator_brute(alpha, cognition);
    g.structure_warning = true;
    return g;
  }
  GeneratorMatrix g{ComplexMatrix(kVecDim, kVecDim), alpha, false};
  const double off = 1.0 - alpha;
  for (int i = 1; i <= 4; ++i) {
    const int base = 16 * (i - 1);
    // 2x2 diagonal cells of both diagonal sub-blocks
    for (int half = 0; half < 2; ++half)
      for (int cell = 0; cell < 4; ++cell) {
        const int r = base + 8 * half + 2 * cell + 1;
        g.entries.set1(r, r, {alpha * vec_l_diagonal(cognition, r), 0.0});
        g.entries.set1(r + 1, r + 1, {alpha * vec_l_diagonal(cognition, r + 1), 0.0});
        g.entries.set1(r, r + 1, {0.0, off});
        g.entries.set1(r + 1, r, {0.0, off});
      }
    // near-identity off-diagonal sub-blocks
    for (int k = 1; k <= kStates; ++k) {
      g.entries.set1(base + k, base + 8 + k, {0.0, -off});
      g.entries.set1(base + 8 + k, base + k, {0.0, -off});
    }
    // the one cognition-weighted entry of each off-diagonal sub-block
    g.entries.set1(base + 2 * i - 1, base + 8 + 2 * i,
                   {alpha * cognition.at1(2 * i - 1, 2 * i).real(), 0.0});
    g.entries.set1(base + 8 + 2 * i, base + 2 * i - 1,
                   {alpha * cognition.at1(2 * i, 2 * i - 1).real(), 0.0});
  }
  return g;
}

namespace {

void check_time(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
  if (t < 0.0) throw std::invalid_argument("evolution time must be non-negative");
}

DensityState state_from_evolved(ComplexVector v) {
  DensityState out = DensityState::from_vector(v);
  const double drift = std::abs(out.matrix().trace() - Complex(1.0, 0.0));
  if (drift > 1e-8)
    throw NumericalError("trace drifted by " + std::to_string(drift) + " during evolution");
  return out;
}

}  // namespace

DensityState evolve(const GeneratorMatrix& g, const DensityState& rho0, double t) {
  check_time(t);
  if (t == 0.0) return rho0;
  const ComplexMatrix propagator = expm(g.entries * Complex(t, 0.0));
  return state_from_evolved(propagator.multiply(rho0.to_vector()));
}

DensityState evolve_rk4(const GeneratorMatrix& g, const DensityState& rho0, double t) {
  check_time(t);
  if (t == 0.0) return rho0;
  const double rate = std::max(g.entries.max_abs(), 1e-30);
  const double target = std::min(0.01, 0.01 / rate);
  const int steps = static_cast<int>(std::ceil(t / target - 1e-12));
  const double h = t / steps;

  ComplexVector v = rho0.to_vector();
  ComplexVector k1, k2, k3, k4, tmp(v.size());
  for (int s = 0; s < steps; ++s) {
    k1 = g.entries.multiply(v);
    for (size_t i = 0; i < v.size(); ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
    k2 = g.entries.multiply(tmp);
    for (size_t i = 0; i < v.size(); ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
    k3 = g.entries.multiply(tmp);
    for (size_t i = 0; i < v.size(); ++i) tmp[i] = v[i] + h * k3[i];
    k4 = g.entries.multiply(tmp);
    for (size_t i = 0; i < v.size(); ++i)
      v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return state_from_evolved(std::move(v));
}

ComplexMatrix master_equation_rhs(double alpha, const ComplexMatrix& cognition,
                                  const ComplexMatrix& rho) {
  static const ComplexMatrix h = build_hamiltonian();
  const ComplexMatrix commutator = h * rho - rho * h;

  ComplexMatrix dissipator(kStates, kStates);
  for (int m = 1; m <= kStates; ++m)
    for (int n = 1; n <= kStates; ++n) {
      const double gamma = cognition.at1(m, n).real();
      if (gamma == 0.0) continue;
      // L rho L' deposits rho(n,n) at (m,m); the anticommutator halves
      // subtract row n and column n.
      dissipator(m - 1, m - 1) += gamma * rho(n - 1, n - 1);
      for (int k = 0; k < kStates; ++k) {
        dissipator(n - 1, k) -= 0.5 * gamma * rho(n - 1, k);
        dissipator(k, n - 1) -= 0.5 * gamma * rho(k, n - 1);
      }
    }

  return commutator * Complex(0.0, -(1.0 - alpha)) + dissipator * Complex(alpha, 0.0);
}

DensityState evolve_direct(double alpha, const ComplexMatrix& cognition, const DensityState& rho0,
                           double t, double step) {
  check_alpha(alpha);
  check_time(t);
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (t == 0.0) return rho0;
  const int steps = static_cast<int>(std::ceil(t / step - 1e-12));
  const double h = t / steps;

  ComplexMatrix rho = rho0.matrix();
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = master_equation_rhs(alpha, cognition, rho);
    const ComplexMatrix k2 = master_equation_rhs(alpha, cognition, rho + k1 * Complex(0.5 * h, 0.0));
    const ComplexMatrix k3 = master_equation_rhs(alpha, cognition, rho + k2 * Complex(0.5 * h, 0.0));
    const ComplexMatrix k4 = master_equation_rhs(alpha, cognition, rho + k3 * Complex(h, 0.0));
    rho += (k1 + k2 * Complex(2.0, 0.0) + k3 * Complex(2.0, 0.0) + k4) * Complex(h / 6.0, 0.0);
  }
  DensityState out{std::move(rho)};
  const double drift = std::abs(out.matrix().trace() - Complex(1.0, 0.0));
  if (drift > 1e-8)
    throw NumericalError("trace drifted by " + std::to_string(drift) + " during integration");
  return out;
}

}  // namespace oqcar
