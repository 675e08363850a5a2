#include "oqcar/density_state.hpp"

#include <cmath>
#include <stdexcept>

#include "oqcar/errors.hpp"

namespace oqcar {

DensityState::DensityState(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != kStates || m_.cols() != kStates)
    throw std::invalid_argument("density state must be 8x8");
  if (!m_.all_finite()) throw std::invalid_argument("density state entries must be finite");
}

DensityState DensityState::from_vector(const ComplexVector& v) {
  if (static_cast<int>(v.size()) != kStates * kStates)
    throw std::invalid_argument("state vector must have 64 entries");
  ComplexMatrix m(kStates, kStates);
  for (int j = 1; j <= kStates; ++j)
    for (int i = 1; i <= kStates; ++i) m.set1(i, j, v[static_cast<size_t>(kStates * (j - 1) + i) - 1]);
  return DensityState(std::move(m));
}

ComplexVector DensityState::to_vector() const {
  ComplexVector v(static_cast<size_t>(kStates) * kStates);
  for (int j = 1; j <= kStates; ++j)
    for (int i = 1; i <= kStates; ++i) v[static_cast<size_t>(kStates * (j - 1) + i) - 1] = m_.at1(i, j);
  return v;
}

double DensityState::hermiticity_defect() const {
  double best = 0.0;
  for (int i = 0; i < kStates; ++i)
    for (int j = 0; j < kStates; ++j)
      best = std::max(best, std::abs(m_(i, j) - std::conj(m_(j, i))));
  return best;
}

double DensityState::max_diag_imag() const {
  double best = 0.0;
  for (int i = 0; i < kStates; ++i) best = std::max(best, std::abs(m_(i, i).imag()));
  return best;
}

void DensityState::check(double hermit_tol, double trace_tol) const {
  const double h = hermiticity_defect();
  if (h > hermit_tol)
    throw NumericalError("density state hermiticity defect " + std::to_string(h));
  const double tr = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (tr > trace_tol) throw NumericalError("density state trace defect " + std::to_string(tr));
}

}  // namespace oqcar
