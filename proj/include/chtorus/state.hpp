#pragma once

#include <optional>

#include "chtorus/field.hpp"

namespace chtorus {

// Eulerian variables (u, rho); rho present iff the system carries the
// density block (gamma = 1).  The momentum m = Au is always recomputed
// from u, never stored.
template <class Real>
struct EulerState {
  TorusField<Real> u;
  std::optional<TorusField<Real>> rho;

  EulerState() = default;
  explicit EulerState(TorusField<Real> u_) : u(std::move(u_)) {}
  EulerState(TorusField<Real> u_, std::optional<TorusField<Real>> rho_)
      : u(std::move(u_)), rho(std::move(rho_)) {}
};

template <class Real>
bool all_finite(const EulerState<Real>& s) {
  if (!all_finite(s.u)) return false;
  if (s.rho && !all_finite(*s.rho)) return false;
  return true;
}

template <class Real>
void axpy(EulerState<Real>& y, Real a, const EulerState<Real>& x) {
  axpy(y.u, a, x.u);
  if (y.rho) axpy(*y.rho, a, *x.rho);
}

template <class Real>
void scale(EulerState<Real>& s, Real a) {
  scale(s.u, a);
  if (s.rho) scale(*s.rho, a);
}

template <class Real>
Real max_abs(const EulerState<Real>& s) {
  Real m = max_abs(s.u);
  if (s.rho) m = std::max(m, max_abs(*s.rho));
  return m;
}

template <class Real>
Real max_abs_diff(const EulerState<Real>& a, const EulerState<Real>& b) {
  Real m = max_abs_diff(a.u, b.u);
  if (a.rho) m = std::max(m, max_abs_diff(*a.rho, *b.rho));
  return m;
}

}  // namespace chtorus
