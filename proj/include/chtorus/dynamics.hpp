#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "chtorus/inertia.hpp"
#include "chtorus/spectral.hpp"
#include "chtorus/state.hpp"

// Eulerian dynamics: the bilinear operator B, the direct momentum form of
// the evolution system, the two-dimensional b-equation family, and
// classical RK4 time stepping with blow-up detection.

namespace chtorus {

struct EvalOptions {
  bool dealias = false;  // 2/3-rule projection of quadratic products
};

struct StepOptions {
  bool dealias = true;
  bool hs_renormalize = true;  // re-pin u(0)=0 after each step when alpha=beta=0
};

namespace detail {

template <class Real>
void pointwise_add_scaled(TorusField<Real>& dst, const TorusField<Real>& a,
                          const TorusField<Real>& scalar, Real s) {
  // dst_c += s * a_c * scalar (scalar has one component)
  const Real* w = scalar.comp(0);
  for (int c = 0; c < dst.comps; ++c) {
    Real* d = dst.comp(c);
    const Real* x = a.comp(c);
    for (std::size_t j = 0; j < dst.npts(); ++j) d[j] += s * x[j] * w[j];
  }
}

template <class Real>
void hs_project_mean(TorusField<Real>& f) {
  auto mu = mean_mu(f);
  for (int c = 0; c < f.comps; ++c) {
    Real* p = f.comp(c);
    for (std::size_t j = 0; j < f.npts(); ++j) p[j] -= mu[static_cast<std::size_t>(c)];
  }
}

}  // namespace detail

// Momentum form of the system: m_t = -u.grad(m) - (grad u)^T m - m div(u)
// - gamma (grad rho)^T rho with m = Au, and rho_t = -grad(rho).u - rho div(u).
// Returns the state derivative (u_t, rho_t) with u_t = A^{-1} m_t.
template <class Real>
EulerState<Real> rhs_system(const EulerState<Real>& s, const ModelParams<Real>& mp,
                            const EvalOptions& opts = {}) {
  const Grid& g = s.u.grid;
  auto Su = analyze(s.u);
  auto Sm = apply_A(Su, mp);
  auto m = synthesize(Sm);
  auto du = all_partials(Su);
  auto dm = all_partials(Sm);
  auto divu = divergence_from_partials(du);

  TorusField<Real> mt(g, s.u.comps);
  axpy(mt, Real(-1), jacobian_apply_from_partials(dm, s.u));
  axpy(mt, Real(-1), jacobian_transpose_apply_from_partials(du, m));
  detail::pointwise_add_scaled(mt, m, divu, Real(-1));

  EulerState<Real> out;
  if (mp.has_rho()) {
    const TorusField<Real>& rho = *s.rho;
    auto dr = all_partials(rho);
    axpy(mt, Real(-1), jacobian_transpose_apply_from_partials(dr, rho));
    TorusField<Real> rt(g, rho.comps);
    axpy(rt, Real(-1), jacobian_apply_from_partials(dr, s.u));
    detail::pointwise_add_scaled(rt, rho, divu, Real(-1));
    if (opts.dealias) rt = dealias_field(rt);
    out.rho = std::move(rt);
  }
  if (opts.dealias) mt = dealias_field(mt);
  if (mp.is_hs()) detail::hs_project_mean(mt);  // roundoff control
  out.u = invert_A(mt, mp);
  return out;
}

// The dual-of-the-commutator bilinear operator.  gamma=0:
//   B(u,v) = -A^{-1}( u.grad(Av) + (grad u)^T Av + Av div(u) );
// gamma=1 adds (grad rho1)^T rho2 inside the braces and carries the second
// block -grad(rho2).u1 - div(u1) rho2.  The geodesic flow is w_t = B(w,w).
template <class Real>
EulerState<Real> bilinear_B(const EulerState<Real>& w1, const EulerState<Real>& w2,
                            const ModelParams<Real>& mp, const EvalOptions& opts = {}) {
  const Grid& g = w1.u.grid;
  auto SAv = apply_A(analyze(w2.u), mp);
  auto Av = synthesize(SAv);
  auto dAv = all_partials(SAv);
  auto du1 = all_partials(w1.u);
  auto divu1 = divergence_from_partials(du1);

  TorusField<Real> braces(g, w1.u.comps);
  axpy(braces, Real(1), jacobian_apply_from_partials(dAv, w1.u));
  axpy(braces, Real(1), jacobian_transpose_apply_from_partials(du1, Av));
  detail::pointwise_add_scaled(braces, Av, divu1, Real(1));

  EulerState<Real> out;
  if (mp.has_rho()) {
    auto dr1 = all_partials(*w1.rho);
    axpy(braces, Real(1), jacobian_transpose_apply_from_partials(dr1, *w2.rho));
    auto dr2 = all_partials(*w2.rho);
    TorusField<Real> second(g, w2.rho->comps);
    axpy(second, Real(-1), jacobian_apply_from_partials(dr2, w1.u));
    detail::pointwise_add_scaled(second, *w2.rho, divu1, Real(-1));
    if (opts.dealias) second = dealias_field(second);
    out.rho = std::move(second);
  }
  if (opts.dealias) braces = dealias_field(braces);
  scale(braces, Real(-1));
  out.u = invert_A(braces, mp);
  return out;
}

// Value of the Christoffel operator at the identity.
template <class Real>
struct ChristoffelValue {
  TorusField<Real> first;
  std::optional<TorusField<Real>> second;
};

// Symmetric Christoffel operator at the identity:
//   Gamma0(u,v) = -1/2 A^{-1}{ u.grad(Av) + (grad u)^T Av + Av div(u)
//                              - A(grad u . v)  + (u <-> v) }
// and, when the density block is present,
//   Gamma((u,rho),(v,eta)) = (Gamma0(u,v), 0)
//       - 1/2 ( A^{-1}[grad(rho.eta)], rho div(v) + eta div(u) ).
template <class Real>
ChristoffelValue<Real> christoffel_id(const EulerState<Real>& w1,
                                      const EulerState<Real>& w2,
                                      const ModelParams<Real>& mp,
                                      const EvalOptions& opts = {}) {
  const Grid& g = w1.u.grid;
  auto Su = analyze(w1.u);
  auto Sv = analyze(w2.u);
  auto SAu = apply_A(Su, mp);
  auto SAv = apply_A(Sv, mp);
  auto Au = synthesize(SAu);
  auto Av = synthesize(SAv);
  auto du = all_partials(Su);
  auto dv = all_partials(Sv);
  auto dAu = all_partials(SAu);
  auto dAv = all_partials(SAv);
  auto divu = divergence_from_partials(du);
  auto divv = divergence_from_partials(dv);

  TorusField<Real> braces(g, w1.u.comps);
  axpy(braces, Real(1), jacobian_apply_from_partials(dAv, w1.u));
  axpy(braces, Real(1), jacobian_transpose_apply_from_partials(du, Av));
  detail::pointwise_add_scaled(braces, Av, divu, Real(1));
  axpy(braces, Real(-1), apply_A(jacobian_apply_from_partials(du, w2.u), mp));
  axpy(braces, Real(1), jacobian_apply_from_partials(dAu, w2.u));
  axpy(braces, Real(1), jacobian_transpose_apply_from_partials(dv, Au));
  detail::pointwise_add_scaled(braces, Au, divv, Real(1));
  axpy(braces, Real(-1), apply_A(jacobian_apply_from_partials(dv, w1.u), mp));

  ChristoffelValue<Real> out;
  if (mp.has_rho()) {
    const TorusField<Real>& rho = *w1.rho;
    const TorusField<Real>& eta = *w2.rho;
    TorusField<Real> re(g, 1);
    for (int c = 0; c < rho.comps; ++c) {
      const Real* a = rho.comp(c);
      const Real* bb = eta.comp(c);
      for (std::size_t j = 0; j < g.size(); ++j) re.at(0, j) += a[j] * bb[j];
    }
    axpy(braces, Real(1), gradient(re));
    TorusField<Real> second(g, rho.comps);
    detail::pointwise_add_scaled(second, rho, divv, Real(-0.5));
    detail::pointwise_add_scaled(second, eta, divu, Real(-0.5));
    if (opts.dealias) second = dealias_field(second);
    out.second = std::move(second);
  }
  if (opts.dealias) braces = dealias_field(braces);
  scale(braces, Real(-0.5));
  out.first = invert_A(braces, mp);
  return out;
}

// One-parameter b-family on the 2-torus with A = mu - Delta:
//   m_t = -u.grad(m) - (grad u)^T m - (b-1) m div(u),  u_t = A^{-1} m_t.
// b = 2 reduces to the alpha=1, beta=0, gamma=0 system.
template <class Real>
TorusField<Real> rhs_b_equation(const TorusField<Real>& u, const ModelParams<Real>& mp,
                                const EvalOptions& opts = {}) {
  if (u.grid.dim() != 2 || u.comps != 2)
    throw ConfigError("rhs_b_equation: requires a 2-component field on the 2-torus");
  ModelParams<Real> mu_ch;
  mu_ch.alpha = 1;
  mu_ch.beta = 0;
  mu_ch.gamma = 0;
  mu_ch.dim = 2;
  mu_ch.b = mp.b;
  auto Su = analyze(u);
  auto Sm = apply_A(Su, mu_ch);
  auto m = synthesize(Sm);
  auto du = all_partials(Su);
  auto dm = all_partials(Sm);
  auto divu = divergence_from_partials(du);

  TorusField<Real> mt(u.grid, u.comps);
  axpy(mt, Real(-1), jacobian_apply_from_partials(dm, u));
  axpy(mt, Real(-1), jacobian_transpose_apply_from_partials(du, m));
  detail::pointwise_add_scaled(mt, m, divu, -(mp.b - Real(1)));
  if (opts.dealias) mt = dealias_field(mt);
  return invert_A(mt, mu_ch);
}

// Classical explicit RK4 step on rhs_system.
template <class Real>
EulerState<Real> rk4_step(const EulerState<Real>& s, Real dt, const ModelParams<Real>& mp,
                          const StepOptions& opts = {}) {
  const EvalOptions eo{opts.dealias};
  const Real half = dt / Real(2);
  auto k1 = rhs_system(s, mp, eo);
  EulerState<Real> s2 = s;
  axpy(s2, half, k1);
  auto k2 = rhs_system(s2, mp, eo);
  EulerState<Real> s3 = s;
  axpy(s3, half, k2);
  auto k3 = rhs_system(s3, mp, eo);
  EulerState<Real> s4 = s;
  axpy(s4, dt, k3);
  auto k4 = rhs_system(s4, mp, eo);

  EulerState<Real> out = s;
  axpy(out, dt / Real(6), k1);
  axpy(out, dt / Real(3), k2);
  axpy(out, dt / Real(3), k3);
  axpy(out, dt / Real(6), k4);
  if (mp.is_hs() && opts.hs_renormalize) {
    for (int c = 0; c < out.u.comps; ++c) {
      Real v0 = out.u.at(c, 0);
      Real* p = out.u.comp(c);
      for (std::size_t j = 0; j < out.u.npts(); ++j) p[j] -= v0;
    }
  }
  return out;
}

template <class Real>
struct TimeStepperConfig {
  Real dt = Real(1e-3);
  Real t_max = Real(1);
  bool dealias = true;
  bool hs_renormalize = true;
};

// Solution samples at t_k = k*dt.
template <class Real>
struct Trajectory {
  Real dt = 0;
  std::vector<EulerState<Real>> states;
};

template <class Real>
struct IntegrationOutcome {
  EulerState<Real> final_state;
  Real t_final = 0;
  long steps_taken = 0;
  bool blew_up = false;
  Real blowup_t = 0;
};

// Fixed-step integration; the callback sees every accepted sample,
// including the initial state.  On non-finite values the run stops and the
// outcome reports the blow-up time; the last finite state is kept.
template <class Real, class Callback>
IntegrationOutcome<Real> integrate(const EulerState<Real>& s0,
                                   const TimeStepperConfig<Real>& cfg,
                                   const ModelParams<Real>& mp, Callback&& cb) {
  if (!(cfg.dt > Real(0))) throw ConfigError("integrate: dt must be positive");
  if (cfg.t_max < Real(0)) throw ConfigError("integrate: t_max must be >= 0");
  const long steps = std::llround(static_cast<double>(cfg.t_max / cfg.dt));
  const StepOptions opts{cfg.dealias, cfg.hs_renormalize};

  IntegrationOutcome<Real> out;
  EulerState<Real> state = s0;
  if (cfg.dealias) {
    state.u = dealias_field(state.u);
    if (state.rho) *state.rho = dealias_field(*state.rho);
  }
  cb(0L, Real(0), state);
  for (long k = 1; k <= steps; ++k) {
    EulerState<Real> next;
    bool finite = true;
    try {
      next = rk4_step(state, cfg.dt, mp, opts);
      finite = all_finite(next);
    } catch (const NumericsError&) {
      finite = false;
    }
    const Real t = static_cast<Real>(k) * cfg.dt;
    if (!finite) {
      out.blew_up = true;
      out.blowup_t = t;
      break;
    }
    state = std::move(next);
    out.steps_taken = k;
    out.t_final = t;
    cb(k, t, state);
  }
  out.final_state = std::move(state);
  return out;
}

template <class Real>
IntegrationOutcome<Real> integrate(const EulerState<Real>& s0,
                                   const TimeStepperConfig<Real>& cfg,
                                   const ModelParams<Real>& mp) {
  return integrate(s0, cfg, mp, [](long, Real, const EulerState<Real>&) {});
}

}  // namespace chtorus
