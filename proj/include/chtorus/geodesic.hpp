#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "chtorus/dynamics.hpp"
#include "chtorus/spectral.hpp"

// Lagrangian (flow-map) side: reconstruction of p from the Eulerian
// solution via p1_t = u o p1 (and p2_t = rho o p1), the geodesic-equation
// residual in conjugated form, 1D diffeomorphism inversion, and a direct
// 1D integrator for p_tt = Gamma_p(p_t, p_t).

namespace chtorus {

// Flow map stored as a periodic displacement: p1(x) = x + p1_disp(x).
template <class Real>
struct LagrangianState {
  TorusField<Real> p1_disp;
  std::optional<TorusField<Real>> p2;
  TorusField<Real> pt1;
  std::optional<TorusField<Real>> pt2;
};

template <class Real>
void axpy(LagrangianState<Real>& y, Real a, const LagrangianState<Real>& x) {
  axpy(y.p1_disp, a, x.p1_disp);
  if (y.p2) axpy(*y.p2, a, *x.p2);
  axpy(y.pt1, a, x.pt1);
  if (y.pt2) axpy(*y.pt2, a, *x.pt2);
}

// Points x_j + disp(x_j), packed for evaluate_at.
template <class Real>
std::vector<Real> displaced_points(const TorusField<Real>& disp) {
  const Grid& g = disp.grid;
  std::vector<Real> pts(g.size() * static_cast<std::size_t>(g.dim()));
  for (std::size_t j = 0; j < g.size(); ++j)
    for (int a = 0; a < g.dim(); ++a)
      pts[j * static_cast<std::size_t>(g.dim()) + static_cast<std::size_t>(a)] =
          g.template point<Real>(j, a) + disp.at(a, j);
  return pts;
}

// f o p1 where p1 = id + disp: trigonometric evaluation at displaced points.
template <class Real>
TorusField<Real> compose(const SpectrumField<Real>& F, const TorusField<Real>& disp) {
  auto vals = evaluate_at(F, displaced_points(disp));
  TorusField<Real> out(disp.grid, F.comps);
  out.data = std::move(vals);
  return out;
}

template <class Real>
TorusField<Real> compose(const TorusField<Real>& f, const TorusField<Real>& disp) {
  return compose(analyze(f), disp);
}

// det(grad p1) on the grid, with grad p1 = I + grad(disp).
template <class Real>
TorusField<Real> det_grad_p1(const TorusField<Real>& disp) {
  const Grid& g = disp.grid;
  auto dd = all_partials(disp);  // dd[a].at(i,.) = d disp_i / d x_a
  TorusField<Real> det(g, 1);
  if (g.dim() == 1) {
    for (std::size_t j = 0; j < g.size(); ++j) det.at(0, j) = Real(1) + dd[0].at(0, j);
  } else if (g.dim() == 2) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      Real j00 = Real(1) + dd[0].at(0, j);
      Real j01 = dd[1].at(0, j);
      Real j10 = dd[0].at(1, j);
      Real j11 = Real(1) + dd[1].at(1, j);
      det.at(0, j) = j00 * j11 - j01 * j10;
    }
  } else {
    throw ConfigError("det_grad_p1: dimensions above 2 are not supported");
  }
  return det;
}

namespace detail {

template <class Real>
void check_orientation(const TorusField<Real>& disp, double t) {
  auto det = det_grad_p1(disp);
  for (std::size_t j = 0; j < det.npts(); ++j)
    if (!(det.at(0, j) > Real(0))) throw DiffeoError(t);
}

}  // namespace detail

// Reconstruct the flow map along a stored solution: integrates
// p1_t = u(t) o p1 (and p2_t = rho(t) o p1) with RK4 from p(0) = id.
// Midpoint fields use cubic Hermite interpolation of consecutive samples,
// which keeps the reconstruction 4th-order on the sample grid.
template <class Real>
std::vector<LagrangianState<Real>> flow_reconstruct(const Trajectory<Real>& traj,
                                                    const ModelParams<Real>& mp,
                                                    const EvalOptions& opts = {}) {
  if (traj.states.empty()) return {};
  const Grid& g = traj.states[0].u.grid;
  const Real dt = traj.dt;
  const bool with_rho = static_cast<bool>(traj.states[0].rho);

  std::vector<LagrangianState<Real>> out(traj.states.size());
  out[0].p1_disp = TorusField<Real>(g, g.dim());
  out[0].pt1 = traj.states[0].u;
  if (with_rho) {
    out[0].p2 = TorusField<Real>(g, traj.states[0].rho->comps);
    out[0].pt2 = *traj.states[0].rho;
  }

  auto eval_disp = [&](const SpectrumField<Real>& F, const TorusField<Real>& d) {
    return compose(F, d);
  };

  EulerState<Real> f_prev = rhs_system(traj.states[0], mp, opts);
  SpectrumField<Real> Su_k = analyze(traj.states[0].u);
  SpectrumField<Real> Sr_k;
  if (with_rho) Sr_k = analyze(*traj.states[0].rho);

  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    const EulerState<Real>& sk = traj.states[k];
    const EulerState<Real>& sk1 = traj.states[k + 1];
    EulerState<Real> f_next = rhs_system(sk1, mp, opts);

    // Hermite midpoint: (u_k + u_{k+1})/2 + (dt/8)(f_k - f_{k+1})
    EulerState<Real> mid = sk;
    scale(mid, Real(0.5));
    axpy(mid, Real(0.5), sk1);
    axpy(mid, dt / Real(8), f_prev);
    axpy(mid, -dt / Real(8), f_next);

    auto Su_h = analyze(mid.u);
    auto Su_k1 = analyze(sk1.u);
    SpectrumField<Real> Sr_h, Sr_k1;
    if (with_rho) {
      Sr_h = analyze(*mid.rho);
      Sr_k1 = analyze(*sk1.rho);
    }

    const TorusField<Real>& d = out[k].p1_disp;
    auto stage = [&](const TorusField<Real>& base, Real step, const TorusField<Real>& dir) {
      TorusField<Real> s = base;
      axpy(s, step, dir);
      return s;
    };

    auto k1 = eval_disp(Su_k, d);
    auto d2 = stage(d, dt / Real(2), k1);
    auto k2 = eval_disp(Su_h, d2);
    auto d3 = stage(d, dt / Real(2), k2);
    auto k3 = eval_disp(Su_h, d3);
    auto d4 = stage(d, dt, k3);
    auto k4 = eval_disp(Su_k1, d4);

    TorusField<Real> dn = d;
    axpy(dn, dt / Real(6), k1);
    axpy(dn, dt / Real(3), k2);
    axpy(dn, dt / Real(3), k3);
    axpy(dn, dt / Real(6), k4);

    out[k + 1].p1_disp = dn;
    out[k + 1].pt1 = eval_disp(Su_k1, dn);

    if (with_rho) {
      auto l1 = eval_disp(Sr_k, d);
      auto l2 = eval_disp(Sr_h, d2);
      auto l3 = eval_disp(Sr_h, d3);
      auto l4 = eval_disp(Sr_k1, d4);
      TorusField<Real> p2n = *out[k].p2;
      axpy(p2n, dt / Real(6), l1);
      axpy(p2n, dt / Real(3), l2);
      axpy(p2n, dt / Real(3), l3);
      axpy(p2n, dt / Real(6), l4);
      out[k + 1].p2 = std::move(p2n);
      out[k + 1].pt2 = eval_disp(Sr_k1, dn);
    }

    detail::check_orientation(dn, static_cast<double>(static_cast<Real>(k + 1) * dt));

    f_prev = std::move(f_next);
    Su_k = std::move(Su_k1);
    if (with_rho) Sr_k = std::move(Sr_k1);
  }
  return out;
}

// Residual of the geodesic equation in conjugated form:
//   || p_tt - Gamma_id(w,w) o p1 ||_inf per sample,
// with p_tt from centered differences of the stored p_t samples.  The
// first and last samples carry no estimate and report zero.
template <class Real>
std::vector<Real> geodesic_residual(const std::vector<LagrangianState<Real>>& lagr,
                                    const Trajectory<Real>& traj,
                                    const ModelParams<Real>& mp,
                                    const EvalOptions& opts = {}) {
  std::vector<Real> res(lagr.size(), Real(0));
  const Real dt = traj.dt;
  for (std::size_t k = 1; k + 1 < lagr.size(); ++k) {
    auto gamma = christoffel_id(traj.states[k], traj.states[k], mp, opts);
    auto g1 = compose(gamma.first, lagr[k].p1_disp);
    TorusField<Real> ptt1 = lagr[k + 1].pt1;
    axpy(ptt1, Real(-1), lagr[k - 1].pt1);
    scale(ptt1, Real(1) / (Real(2) * dt));
    axpy(ptt1, Real(-1), g1);
    Real r = max_abs(ptt1);
    if (gamma.second) {
      auto g2 = compose(*gamma.second, lagr[k].p1_disp);
      TorusField<Real> ptt2 = *lagr[k + 1].pt2;
      axpy(ptt2, Real(-1), *lagr[k - 1].pt2);
      scale(ptt2, Real(1) / (Real(2) * dt));
      axpy(ptt2, Real(-1), g2);
      r = std::max(r, max_abs(ptt2));
    }
    res[k] = r;
  }
  return res;
}

// Pointwise inverse of a 1D circle diffeomorphism p1 = id + disp, returned
// as the displacement of the inverse map.  Safeguarded Newton iteration on
// the trigonometric interpolant.
template <class Real>
TorusField<Real> invert_diffeo_1d(const TorusField<Real>& disp) {
  const Grid& g = disp.grid;
  if (g.dim() != 1 || disp.comps != 1)
    throw ConfigError("invert_diffeo_1d: expects a scalar field on the 1-torus");
  auto S = analyze(disp);
  auto Sd = differentiate(S, 0);
  auto dgrid = synthesize(Sd);
  for (std::size_t j = 0; j < g.size(); ++j)
    if (!(Real(1) + dgrid.at(0, j) > Real(0)))
      throw DiffeoError("invert_diffeo_1d: map is not monotone");

  const Real dmax = max_abs(disp) + Real(1e-12);
  TorusField<Real> q(g, 1);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Real x = g.template point<Real>(j, 0);
    Real lo = x - dmax, hi = x + dmax;
    Real y = x - disp.at(0, j);
    for (int it = 0; it < 100; ++it) {
      Real r = y + evaluate_at(S, {y})[0] - x;
      if (std::abs(r) <= Real(1e-14)) break;
      if (r > 0)
        hi = y;
      else
        lo = y;
      Real slope = Real(1) + evaluate_at(Sd, {y})[0];
      Real ynew = y - r / slope;
      if (!(ynew > lo && ynew < hi)) ynew = (lo + hi) / Real(2);
      y = ynew;
    }
    q.at(0, j) = y - x;
  }
  return q;
}

// Direct 1D integration of the geodesic equation p_tt = Gamma_p(p_t,p_t),
// evaluated through right-invariance: w = p_t o p1^{-1},
// p_tt = Gamma_id(w,w) o p1.  Returns samples at t = k*dt.
template <class Real>
std::vector<LagrangianState<Real>> geodesic_shoot_1d(const EulerState<Real>& w0,
                                                     const ModelParams<Real>& mp,
                                                     Real dt, long steps,
                                                     const EvalOptions& opts = {}) {
  const Grid& g = w0.u.grid;
  if (g.dim() != 1) throw ConfigError("geodesic_shoot_1d: 1D only");

  LagrangianState<Real> y;
  y.p1_disp = TorusField<Real>(g, 1);
  y.pt1 = w0.u;
  if (w0.rho) {
    y.p2 = TorusField<Real>(g, 1);
    y.pt2 = *w0.rho;
  }

  auto deriv = [&](const LagrangianState<Real>& s) {
    auto q = invert_diffeo_1d(s.p1_disp);
    EulerState<Real> w;
    w.u = compose(s.pt1, q);
    if (s.pt2) w.rho = compose(*s.pt2, q);
    auto gamma = christoffel_id(w, w, mp, opts);
    LagrangianState<Real> d;
    d.p1_disp = s.pt1;
    if (s.p2) d.p2 = *s.pt2;
    d.pt1 = compose(gamma.first, s.p1_disp);
    if (s.pt2) d.pt2 = compose(*gamma.second, s.p1_disp);
    return d;
  };

  std::vector<LagrangianState<Real>> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(y);
  for (long k = 0; k < steps; ++k) {
    auto k1 = deriv(y);
    LagrangianState<Real> s2 = y;
    axpy(s2, dt / Real(2), k1);
    auto k2 = deriv(s2);
    LagrangianState<Real> s3 = y;
    axpy(s3, dt / Real(2), k2);
    auto k3 = deriv(s3);
    LagrangianState<Real> s4 = y;
    axpy(s4, dt, k3);
    auto k4 = deriv(s4);
    axpy(y, dt / Real(6), k1);
    axpy(y, dt / Real(3), k2);
    axpy(y, dt / Real(3), k3);
    axpy(y, dt / Real(6), k4);
    detail::check_orientation(y.p1_disp, static_cast<double>(static_cast<Real>(k + 1) * dt));
    out.push_back(y);
  }
  return out;
}

}  // namespace chtorus
