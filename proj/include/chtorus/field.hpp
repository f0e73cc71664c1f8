#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "chtorus/grid.hpp"

namespace chtorus {

// Real vector-valued function sampled on a torus grid; carrier for u, m,
// rho, and flow-map displacements.  Component-major storage.
template <class Real>
struct TorusField {
  Grid grid;
  int comps = 0;
  std::vector<Real> data;

  TorusField() = default;
  TorusField(const Grid& g, int c)
      : grid(g), comps(c), data(g.size() * static_cast<std::size_t>(c), Real(0)) {}

  std::size_t npts() const { return grid.size(); }

  Real& at(int c, std::size_t j) { return data[static_cast<std::size_t>(c) * npts() + j]; }
  const Real& at(int c, std::size_t j) const {
    return data[static_cast<std::size_t>(c) * npts() + j];
  }

  Real* comp(int c) { return data.data() + static_cast<std::size_t>(c) * npts(); }
  const Real* comp(int c) const {
    return data.data() + static_cast<std::size_t>(c) * npts();
  }
};

// Complex Fourier coefficients of a TorusField, full lattice per component,
// index layout identical to the grid (wavenumber k(j) in (-n/2, n/2]).
template <class Real>
struct SpectrumField {
  Grid grid;
  int comps = 0;
  std::vector<std::complex<Real>> coeffs;

  SpectrumField() = default;
  SpectrumField(const Grid& g, int c)
      : grid(g), comps(c), coeffs(g.size() * static_cast<std::size_t>(c)) {}

  std::size_t npts() const { return grid.size(); }

  std::complex<Real>& at(int c, std::size_t j) {
    return coeffs[static_cast<std::size_t>(c) * npts() + j];
  }
  const std::complex<Real>& at(int c, std::size_t j) const {
    return coeffs[static_cast<std::size_t>(c) * npts() + j];
  }

  std::complex<Real>* comp(int c) {
    return coeffs.data() + static_cast<std::size_t>(c) * npts();
  }
  const std::complex<Real>* comp(int c) const {
    return coeffs.data() + static_cast<std::size_t>(c) * npts();
  }
};

template <class Real>
bool all_finite(const TorusField<Real>& f) {
  for (const Real& x : f.data)
    if (!std::isfinite(static_cast<double>(x))) return false;
  return true;
}

template <class Real>
Real max_abs(const TorusField<Real>& f) {
  Real m = 0;
  for (const Real& x : f.data) m = std::max(m, std::abs(x));
  return m;
}

template <class Real>
Real max_abs_diff(const TorusField<Real>& a, const TorusField<Real>& b) {
  Real m = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

// y += s * x
template <class Real>
void axpy(TorusField<Real>& y, Real s, const TorusField<Real>& x) {
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += s * x.data[i];
}

template <class Real>
void scale(TorusField<Real>& f, Real s) {
  for (Real& x : f.data) x *= s;
}

template <class Real>
TorusField<Real> operator+(TorusField<Real> a, const TorusField<Real>& b) {
  axpy(a, Real(1), b);
  return a;
}

template <class Real>
TorusField<Real> operator-(TorusField<Real> a, const TorusField<Real>& b) {
  axpy(a, Real(-1), b);
  return a;
}

template <class Real>
TorusField<Real> operator*(Real s, TorusField<Real> a) {
  scale(a, s);
  return a;
}

}  // namespace chtorus
