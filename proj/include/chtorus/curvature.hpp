#pragma once

#include <cmath>
#include <type_traits>
#include <numbers>
#include <string>
#include <vector>

#include "chtorus/conservation.hpp"
#include "chtorus/dynamics.hpp"
#include "chtorus/errors.hpp"
#include "chtorus/field.hpp"
#include "chtorus/grid.hpp"
#include "chtorus/inertia.hpp"
#include "chtorus/spectral.hpp"
#include "chtorus/state.hpp"

// Sectional curvature of the right-invariant metric at the identity for the
// 2-component system on the 2-torus with the mean-value Helmholtz operator
// (alpha, beta, gamma) = (1, 0, 0):
//
//   S(u,v) = <Gamma(u,v), Gamma(u,v)> - <Gamma(u,u), Gamma(v,v)> + R(u,v),
//
// with R(u,v) a twelve-term sum of metric inner products of first- and
// second-order directional derivatives.  All quadratures are carried out on
// grids fine enough that every integrand (a trig polynomial of bounded
// degree) is integrated exactly, so the closed-form values are reproduced to
// near machine precision.

namespace chtorus {

namespace detail {

template <class Real>
Real velocity_inner(const TorusField<Real>& a, const TorusField<Real>& b,
                    const ModelParams<Real>& mp) {
  return metric_inner(EulerState<Real>{a, std::nullopt},
                      EulerState<Real>{b, std::nullopt}, mp);
}

// The individual curvature terms grow like |k|^4 while cancelling to an O(1)
// result, so the computation runs in extended precision and rounds once at
// the end.
template <class Real>
using curvature_promoted_t =
    std::conditional_t<(sizeof(Real) < sizeof(long double)), long double, Real>;

template <class To, class From>
TorusField<To> cast_field(const TorusField<From>& f) {
  TorusField<To> out(f.grid, f.comps);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    out.data[i] = static_cast<To>(f.data[i]);
  return out;
}

template <class To, class From>
ModelParams<To> cast_params(const ModelParams<From>& mp) {
  ModelParams<To> out;
  out.alpha = mp.alpha;
  out.beta = mp.beta;
  out.gamma = mp.gamma;
  out.dim = mp.dim;
  out.b = static_cast<To>(mp.b);
  return out;
}

template <class Real>
Real curvature_R_term_impl(const TorusField<Real>& u, const TorusField<Real>& v,
                           const ModelParams<Real>& mp) {
  auto ip = [&](const TorusField<Real>& a, const TorusField<Real>& b) {
    return velocity_inner(a, b, mp);
  };
  auto guu = jacobian_apply(u, u);
  auto guv = jacobian_apply(u, v);
  auto gvu = jacobian_apply(v, u);
  auto gvv = jacobian_apply(v, v);

  Real t = 0;
  t += ip(guu, gvv);
  t -= ip(guv, guv);
  t += ip(gvu, guv);
  t -= ip(gvu, gvu);
  t += ip(jacobian_apply(guu, v), v);
  t -= ip(jacobian_apply(guv, v), u);
  t += ip(jacobian_apply(gvu, v), u);
  t -= ip(jacobian_apply(gvu, u), v);
  t -= ip(jacobian_apply(v, guu), v);
  t -= ip(jacobian_apply(u, gvv), u);
  t += ip(jacobian_apply(v, gvu), u);
  t += ip(jacobian_apply(u, gvu), v);
  return t;
}

template <class Real>
Real sectional_S_impl(const TorusField<Real>& u, const TorusField<Real>& v,
                      const ModelParams<Real>& mp) {
  const EulerState<Real> wu{u, std::nullopt};
  const EulerState<Real> wv{v, std::nullopt};
  auto guv = christoffel_id(wu, wv, mp).first;
  auto guu = christoffel_id(wu, wu, mp).first;
  auto gvv = christoffel_id(wv, wv, mp).first;
  return velocity_inner(guv, guv, mp) - velocity_inner(guu, gvv, mp) +
         curvature_R_term_impl(u, v, mp);
}

}  // namespace detail

// Twelve-term curvature correction R(u,v).  Writing Dx.y for the directional
// derivative (Jacobian of x applied to y), the sum is
//   + <Du.u, Dv.v> - <Du.v, Du.v> + <Dv.u, Du.v> - <Dv.u, Dv.u>
//   + <D(Du.u).v, v> - <D(Du.v).v, u> + <D(Dv.u).v, u> - <D(Dv.u).u, v>
//   - <Dv.(Du.u), v> - <Du.(Dv.v), u> + <Dv.(Dv.u), u> + <Du.(Dv.u), v>.
template <class Real>
Real curvature_R_term(const TorusField<Real>& u, const TorusField<Real>& v,
                      const ModelParams<Real>& mp) {
  if (u.grid != v.grid || u.comps != v.comps)
    throw ConfigError("curvature_R_term: mismatched fields");
  using P = detail::curvature_promoted_t<Real>;
  if constexpr (std::is_same_v<P, Real>) {
    return detail::curvature_R_term_impl(u, v, mp);
  } else {
    return static_cast<Real>(detail::curvature_R_term_impl(
        detail::cast_field<P>(u), detail::cast_field<P>(v),
        detail::cast_params<P>(mp)));
  }
}

// Unnormalized sectional curvature of span{u, v} at the identity.
template <class Real>
Real sectional_S(const TorusField<Real>& u, const TorusField<Real>& v,
                 const ModelParams<Real>& mp) {
  if (u.grid != v.grid || u.comps != v.comps)
    throw ConfigError("sectional_S: mismatched fields");
  using P = detail::curvature_promoted_t<Real>;
  if constexpr (std::is_same_v<P, Real>) {
    return detail::sectional_S_impl(u, v, mp);
  } else {
    return static_cast<Real>(detail::sectional_S_impl(
        detail::cast_field<P>(u), detail::cast_field<P>(v),
        detail::cast_params<P>(mp)));
  }
}

// Closed form for the planes spanned by a coordinate direction e_i and
// v = sin(k1 x) sin(k2 y) (1,1):  S(e_i, v) = (2 k_i^2 + k_j^2) / (8 |k|^2).
template <class Real>
Real closed_form_S(int i, Real k1, Real k2) {
  if (i != 1 && i != 2) throw ConfigError("closed_form_S: i must be 1 or 2");
  const Real ki = (i == 1) ? k1 : k2;
  const Real kj = (i == 1) ? k2 : k1;
  return (Real(2) * ki * ki + kj * kj) / (Real(8) * (k1 * k1 + k2 * k2));
}

template <class Real>
struct SectionalScanRow {
  Real k1 = 0;         // wavevector components (multiples of 2*pi)
  Real k2 = 0;
  Real s_e1 = 0;       // S(e1, v) computed spectrally
  Real s_e2 = 0;       // S(e2, v)
  Real closed_e1 = 0;  // closed-form values for comparison
  Real closed_e2 = 0;
};

namespace detail {

// Smallest admissible grid with exact quadrature for the degree-4 trig
// integrands appearing in S: every aliased mode of a product of four factors
// of bandwidth j_max must miss the mean, which N > 4*j_max guarantees.
inline int curvature_grid_points(int j_max) {
  int need = 4 * j_max + 2;
  int n = 32;
  while (n < need) n *= 2;
  return n;
}

template <class Real>
TorusField<Real> coordinate_direction(const Grid& g, int i) {
  TorusField<Real> e(g, 2);
  for (std::size_t j = 0; j < g.size(); ++j) e.at(i - 1, j) = Real(1);
  return e;
}

template <class Real>
TorusField<Real> sine_plane_field(const Grid& g, int j1, int j2) {
  TorusField<Real> v(g, 2);
  const Real twopi = Real(2) * std::numbers::pi_v<Real>;
  for (std::size_t j = 0; j < g.size(); ++j) {
    Real x = g.point<Real>(j, 0);
    Real y = g.point<Real>(j, 1);
    Real s = std::sin(twopi * static_cast<Real>(j1) * x) *
             std::sin(twopi * static_cast<Real>(j2) * y);
    v.at(0, j) = s;
    v.at(1, j) = s;
  }
  return v;
}

}  // namespace detail

// Scan S(e1, v) and S(e2, v) for v = sin(k1 x) sin(k2 y) (1,1) over all
// pairs k_i = 2*pi*j_i with j_i drawn from j_range.  Every entry must be
// strictly positive; a nonpositive value aborts with VerificationError.
template <class Real>
std::vector<SectionalScanRow<Real>> positivity_scan(const std::vector<int>& j_range) {
  if (j_range.empty()) throw ConfigError("positivity_scan: empty wavenumber range");
  int j_max = 0;
  for (int j : j_range) {
    if (j < 1) throw ConfigError("positivity_scan: wavenumbers must be >= 1");
    j_max = std::max(j_max, j);
  }
  const Grid g(2, detail::curvature_grid_points(j_max));
  ModelParams<Real> mp;
  mp.alpha = 1;
  mp.beta = 0;
  mp.gamma = 0;
  mp.dim = 2;

  const auto e1 = detail::coordinate_direction<Real>(g, 1);
  const auto e2 = detail::coordinate_direction<Real>(g, 2);
  const Real twopi = Real(2) * std::numbers::pi_v<Real>;

  std::vector<SectionalScanRow<Real>> rows;
  rows.reserve(j_range.size() * j_range.size());
  for (int j1 : j_range) {
    for (int j2 : j_range) {
      auto v = detail::sine_plane_field<Real>(g, j1, j2);
      SectionalScanRow<Real> row;
      row.k1 = twopi * static_cast<Real>(j1);
      row.k2 = twopi * static_cast<Real>(j2);
      row.s_e1 = sectional_S(e1, v, mp);
      row.s_e2 = sectional_S(e2, v, mp);
      row.closed_e1 = closed_form_S(1, row.k1, row.k2);
      row.closed_e2 = closed_form_S(2, row.k1, row.k2);
      if (!(row.s_e1 > Real(0)) || !(row.s_e2 > Real(0)))
        throw VerificationError(
            "positivity_scan: nonpositive sectional curvature at (k1,k2) = (" +
            std::to_string(j1) + ", " + std::to_string(j2) + ") * 2*pi");
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace chtorus
