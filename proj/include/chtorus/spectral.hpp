#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "chtorus/errors.hpp"
#include "chtorus/fft.hpp"
#include "chtorus/field.hpp"

// Discrete Fourier analysis on the unit torus: wavenumbers are 2*pi*k with
// k integer per axis, so -Delta acts as multiplication by 4*pi^2*|k|^2.

namespace chtorus {

template <class Real>
SpectrumField<Real> analyze(const TorusField<Real>& f) {
  if (!all_finite(f)) throw NumericsError("analyze: non-finite samples in input field");
  SpectrumField<Real> F(f.grid, f.comps);
  const std::size_t n = f.npts();
  std::vector<std::complex<Real>> buf(n);
  const Real inv = Real(1) / static_cast<Real>(n);
  for (int c = 0; c < f.comps; ++c) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = f.at(c, j);
    detail::fft_all_axes(buf, f.grid, /*inverse=*/false);
    for (std::size_t j = 0; j < n; ++j) F.at(c, j) = buf[j] * inv;
  }
  return F;
}

template <class Real>
TorusField<Real> synthesize(const SpectrumField<Real>& F) {
  TorusField<Real> f(F.grid, F.comps);
  const std::size_t n = F.npts();
  std::vector<std::complex<Real>> buf(n);
  for (int c = 0; c < F.comps; ++c) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = F.at(c, j);
    detail::fft_all_axes(buf, F.grid, /*inverse=*/true);
    for (std::size_t j = 0; j < n; ++j) f.at(c, j) = buf[j].real();
  }
  return f;
}

// Spectral derivative along one axis; the Nyquist mode is zeroed so the
// derivative of a real field stays real and odd-symmetric.
template <class Real>
SpectrumField<Real> differentiate(const SpectrumField<Real>& F, int axis) {
  if (axis < 0 || axis >= F.grid.dim())
    throw ConfigError("differentiate: axis out of range");
  SpectrumField<Real> D(F.grid, F.comps);
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  const int nyq = F.grid.n() / 2;
  for (int c = 0; c < F.comps; ++c) {
    for (std::size_t j = 0; j < F.npts(); ++j) {
      int k = F.grid.wavenumber(j, axis);
      if (k == nyq) {
        D.at(c, j) = 0;
      } else {
        std::complex<Real> ik(Real(0), two_pi * static_cast<Real>(k));
        D.at(c, j) = ik * F.at(c, j);
      }
    }
  }
  return D;
}

template <class Real>
TorusField<Real> differentiate(const TorusField<Real>& f, int axis) {
  return synthesize(differentiate(analyze(f), axis));
}

namespace detail {

// Neumaier compensated accumulator: quadrature reductions feed curvature
// formulas that cancel large terms to O(1) results, so plain sequential
// sums would cap the achievable tolerance near 1e-9.
template <class Real>
struct CompensatedSum {
  Real sum = 0;
  Real comp = 0;

  void add(Real x) {
    const Real t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  Real value() const { return sum + comp; }
};

}  // namespace detail

// Grid average per component == k=0 Fourier coefficient.
template <class Real>
std::vector<Real> mean_mu(const TorusField<Real>& f) {
  std::vector<Real> out(static_cast<std::size_t>(f.comps), Real(0));
  const std::size_t n = f.npts();
  for (int c = 0; c < f.comps; ++c) {
    detail::CompensatedSum<Real> s;
    const Real* p = f.comp(c);
    for (std::size_t j = 0; j < n; ++j) s.add(p[j]);
    out[static_cast<std::size_t>(c)] = s.value() / static_cast<Real>(n);
  }
  return out;
}

// Integral over the unit torus per component (exact for trig polynomials
// resolved by the grid).
template <class Real>
std::vector<Real> integrate(const TorusField<Real>& f) {
  return mean_mu(f);
}

// sum_c integral of f_c * g_c.
template <class Real>
Real inner_product(const TorusField<Real>& f, const TorusField<Real>& g) {
  detail::CompensatedSum<Real> s;
  const std::size_t n = f.npts();
  for (int c = 0; c < f.comps; ++c) {
    const Real* a = f.comp(c);
    const Real* b = g.comp(c);
    for (std::size_t j = 0; j < n; ++j) s.add(a[j] * b[j]);
  }
  return s.value() / static_cast<Real>(n);
}

// 2/3-rule projection: zero every coefficient with any |k_axis| > n/3.
template <class Real>
void dealias_inplace(SpectrumField<Real>& F) {
  for (std::size_t j = 0; j < F.npts(); ++j) {
    bool kill = false;
    for (int a = 0; a < F.grid.dim() && !kill; ++a)
      kill = 3 * std::abs(F.grid.wavenumber(j, a)) > F.grid.n();
    if (kill)
      for (int c = 0; c < F.comps; ++c) F.at(c, j) = 0;
  }
}

template <class Real>
SpectrumField<Real> dealias(SpectrumField<Real> F) {
  dealias_inplace(F);
  return F;
}

template <class Real>
TorusField<Real> dealias_field(const TorusField<Real>& f) {
  auto F = analyze(f);
  dealias_inplace(F);
  return synthesize(F);
}

// Evaluate the trigonometric interpolant at arbitrary points (periodic).
// Points are packed as pts[p*dim + a]; the result as out[c*npts + p].
// The symmetric truncation weights the two aliased Nyquist modes by 1/2
// per axis, which makes the interpolant real and reproduces grid samples.
template <class Real>
std::vector<Real> evaluate_at(const SpectrumField<Real>& F,
                              const std::vector<Real>& pts) {
  const Grid& g = F.grid;
  const int dim = g.dim();
  const int n = g.n();
  const int half = n / 2;
  const std::size_t npts = pts.size() / static_cast<std::size_t>(dim);
  std::vector<Real> out(npts * static_cast<std::size_t>(F.comps), Real(0));
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;

  std::vector<std::vector<std::complex<Real>>> tab(
      static_cast<std::size_t>(dim),
      std::vector<std::complex<Real>>(static_cast<std::size_t>(n + 1)));
  std::vector<std::complex<Real>> acc(static_cast<std::size_t>(F.comps));
  std::vector<int> idx(static_cast<std::size_t>(dim));

  for (std::size_t p = 0; p < npts; ++p) {
    for (int a = 0; a < dim; ++a) {
      Real x = pts[p * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)];
      auto& t = tab[static_cast<std::size_t>(a)];
      for (int m = 0; m <= half; ++m) {
        Real mx = static_cast<Real>(m) * x;
        Real frac = mx - std::floor(mx);
        Real th = two_pi * frac;
        std::complex<Real> e(std::cos(th), std::sin(th));
        t[static_cast<std::size_t>(half + m)] = e;
        t[static_cast<std::size_t>(half - m)] = std::conj(e);
      }
    }
    std::fill(acc.begin(), acc.end(), std::complex<Real>(0));
    std::fill(idx.begin(), idx.end(), -half);
    while (true) {
      Real w = 1;
      std::size_t flat = 0;
      std::complex<Real> phase(1, 0);
      for (int a = 0; a < dim; ++a) {
        int m = idx[static_cast<std::size_t>(a)];
        if (m == -half || m == half) w *= Real(0.5);
        int j = m >= 0 ? m : m + n;
        flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
        phase *= tab[static_cast<std::size_t>(a)][static_cast<std::size_t>(half + m)];
      }
      if (w == Real(1)) {
        for (int c = 0; c < F.comps; ++c)
          acc[static_cast<std::size_t>(c)] += phase * F.at(c, flat);
      } else {
        for (int c = 0; c < F.comps; ++c)
          acc[static_cast<std::size_t>(c)] += w * phase * F.at(c, flat);
      }
      int a = dim - 1;
      while (a >= 0) {
        if (++idx[static_cast<std::size_t>(a)] <= half) break;
        idx[static_cast<std::size_t>(a)] = -half;
        --a;
      }
      if (a < 0) break;
    }
    for (int c = 0; c < F.comps; ++c)
      out[static_cast<std::size_t>(c) * npts + p] = acc[static_cast<std::size_t>(c)].real();
  }
  return out;
}

template <class Real>
std::vector<Real> evaluate_at(const TorusField<Real>& f, const std::vector<Real>& pts) {
  return evaluate_at(analyze(f), pts);
}

// ---- vector-calculus helpers on vector fields (comps == dim) ----

// partials[a] holds the derivative of every component along axis a.
template <class Real>
std::vector<TorusField<Real>> all_partials(const SpectrumField<Real>& F) {
  std::vector<TorusField<Real>> out;
  out.reserve(static_cast<std::size_t>(F.grid.dim()));
  for (int a = 0; a < F.grid.dim(); ++a)
    out.push_back(synthesize(differentiate(F, a)));
  return out;
}

template <class Real>
std::vector<TorusField<Real>> all_partials(const TorusField<Real>& f) {
  return all_partials(analyze(f));
}

// div u = sum_a d u_a / d x_a  (requires comps == dim)
template <class Real>
TorusField<Real> divergence_from_partials(const std::vector<TorusField<Real>>& du) {
  const Grid& g = du[0].grid;
  TorusField<Real> out(g, 1);
  for (int a = 0; a < g.dim(); ++a)
    for (std::size_t j = 0; j < g.size(); ++j) out.at(0, j) += du[static_cast<std::size_t>(a)].at(a, j);
  return out;
}

template <class Real>
TorusField<Real> divergence(const TorusField<Real>& u) {
  return divergence_from_partials(all_partials(u));
}

// (grad u . v)_i = sum_a (d u_i / d x_a) v_a  — directional derivative.
template <class Real>
TorusField<Real> jacobian_apply_from_partials(const std::vector<TorusField<Real>>& du,
                                              const TorusField<Real>& v) {
  const Grid& g = v.grid;
  TorusField<Real> out(g, du[0].comps);
  for (int i = 0; i < out.comps; ++i)
    for (int a = 0; a < g.dim(); ++a) {
      const Real* d = du[static_cast<std::size_t>(a)].comp(i);
      const Real* vv = v.comp(a);
      Real* o = out.comp(i);
      for (std::size_t j = 0; j < g.size(); ++j) o[j] += d[j] * vv[j];
    }
  return out;
}

template <class Real>
TorusField<Real> jacobian_apply(const TorusField<Real>& u, const TorusField<Real>& v) {
  return jacobian_apply_from_partials(all_partials(u), v);
}

// ((grad u)^T m)_i = sum_j (d u_j / d x_i) m_j  (requires u comps == dim)
template <class Real>
TorusField<Real> jacobian_transpose_apply_from_partials(
    const std::vector<TorusField<Real>>& du, const TorusField<Real>& m) {
  const Grid& g = m.grid;
  TorusField<Real> out(g, g.dim());
  for (int i = 0; i < g.dim(); ++i)
    for (int jc = 0; jc < m.comps; ++jc) {
      const Real* d = du[static_cast<std::size_t>(i)].comp(jc);
      const Real* mm = m.comp(jc);
      Real* o = out.comp(i);
      for (std::size_t j = 0; j < g.size(); ++j) o[j] += d[j] * mm[j];
    }
  return out;
}

template <class Real>
TorusField<Real> jacobian_transpose_apply(const TorusField<Real>& u,
                                          const TorusField<Real>& m) {
  return jacobian_transpose_apply_from_partials(all_partials(u), m);
}

// gradient of a scalar (1-component) field
template <class Real>
TorusField<Real> gradient(const TorusField<Real>& f) {
  const Grid& g = f.grid;
  TorusField<Real> out(g, g.dim());
  auto F = analyze(f);
  for (int a = 0; a < g.dim(); ++a) {
    auto d = synthesize(differentiate(F, a));
    for (std::size_t j = 0; j < g.size(); ++j) out.at(a, j) = d.at(0, j);
  }
  return out;
}

}  // namespace chtorus
