#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "chtorus/geodesic.hpp"
#include "chtorus/inertia.hpp"
#include "chtorus/spectral.hpp"
#include "chtorus/state.hpp"

// Energy and momentum functionals: the weak Riemannian metric at the
// identity, its right-translate along a flow map, the homogeneous H^1
// energy, and the Lagrangian (transported) momentum whose components are
// conserved along solutions.

namespace chtorus {

// <w1, w2> = sum_i [ alpha mu(u1_i) mu(u2_i) + int (beta u1_i u2_i
//            + grad u1_i . grad u2_i) ] + gamma sum_i int rho1_i rho2_i.
template <class Real>
Real metric_inner(const EulerState<Real>& w1, const EulerState<Real>& w2,
                  const ModelParams<Real>& mp) {
  Real s = 0;
  if (mp.alpha) {
    auto m1 = mean_mu(w1.u);
    auto m2 = mean_mu(w2.u);
    for (std::size_t c = 0; c < m1.size(); ++c) s += m1[c] * m2[c];
  }
  if (mp.beta) s += inner_product(w1.u, w2.u);
  auto d1 = all_partials(w1.u);
  auto d2 = all_partials(w2.u);
  for (int a = 0; a < w1.u.grid.dim(); ++a) s += inner_product(d1[a], d2[a]);
  if (mp.gamma) s += inner_product(*w1.rho, *w2.rho);
  return s;
}

// Homogeneous energy: sum_i int |grad u_i|^2 + int |rho|^2 (density term
// present when the state carries one).  Conserved by every admissible
// system.
template <class Real>
Real hs_energy(const EulerState<Real>& w) {
  Real s = 0;
  auto d = all_partials(w.u);
  for (int a = 0; a < w.u.grid.dim(); ++a) s += inner_product(d[a], d[a]);
  if (w.rho) s += inner_product(*w.rho, *w.rho);
  return s;
}

// Metric at a point p of the group, by right-invariance written as the
// pulled-back integrals over the reference grid: with J = grad p1 and
// det = det J,
//   sum_i [ alpha mu(u1_i det) mu(u2_i det) + beta int u1_i u2_i det
//           + int ((grad u1_i)^T J^{-1}) . ((grad u2_i)^T J^{-1}) det ]
//   + gamma sum_i int rho1_i rho2_i det.
// Arguments u, rho are fields over the reference grid (vectors at p in the
// trivialisation by right translation composed with p already applied by
// the caller when needed).
template <class Real>
Real metric_at_p(const EulerState<Real>& w1, const EulerState<Real>& w2,
                 const LagrangianState<Real>& lagr, const ModelParams<Real>& mp) {
  const Grid& g = w1.u.grid;
  const int dim = g.dim();
  auto dd = all_partials(lagr.p1_disp);  // dd[a].at(i,.) = d disp_i / d x_a
  auto det = det_grad_p1(lagr.p1_disp);
  for (std::size_t j = 0; j < det.npts(); ++j)
    if (!(det.at(0, j) > Real(0)))
      throw DiffeoError("metric_at_p: singular flow-map Jacobian");

  // J^{-1} pointwise (row-major i = row, a = column).
  std::vector<TorusField<Real>> jinv;
  jinv.reserve(static_cast<std::size_t>(dim * dim));
  if (dim == 1) {
    TorusField<Real> e(g, 1);
    for (std::size_t j = 0; j < g.size(); ++j) e.at(0, j) = Real(1) / det.at(0, j);
    jinv.push_back(std::move(e));
  } else if (dim == 2) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) jinv.emplace_back(g, 1);
    for (std::size_t j = 0; j < g.size(); ++j) {
      Real j00 = Real(1) + dd[0].at(0, j);
      Real j01 = dd[1].at(0, j);
      Real j10 = dd[0].at(1, j);
      Real j11 = Real(1) + dd[1].at(1, j);
      Real idet = Real(1) / det.at(0, j);
      jinv[0].at(0, j) = j11 * idet;
      jinv[1].at(0, j) = -j01 * idet;
      jinv[2].at(0, j) = -j10 * idet;
      jinv[3].at(0, j) = j00 * idet;
    }
  } else {
    throw ConfigError("metric_at_p: dimensions above 2 are not supported");
  }

  auto du1 = all_partials(w1.u);
  auto du2 = all_partials(w2.u);
  const Real npts = static_cast<Real>(g.size());
  Real s = 0;
  for (int i = 0; i < w1.u.comps; ++i) {
    Real m1 = 0, m2 = 0, sbeta = 0, sgrad = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Real dj = det.at(0, j);
      m1 += w1.u.at(i, j) * dj;
      m2 += w2.u.at(i, j) * dj;
      sbeta += w1.u.at(i, j) * w2.u.at(i, j) * dj;
      Real dot = 0;
      for (int b = 0; b < dim; ++b) {
        Real g1 = 0, g2 = 0;
        for (int a = 0; a < dim; ++a) {
          const Real jab = jinv[static_cast<std::size_t>(a * dim + b)].at(0, j);
          g1 += du1[a].at(i, j) * jab;
          g2 += du2[a].at(i, j) * jab;
        }
        dot += g1 * g2;
      }
      sgrad += dot * dj;
    }
    if (mp.alpha) s += (m1 / npts) * (m2 / npts);
    if (mp.beta) s += sbeta / npts;
    s += sgrad / npts;
  }
  if (mp.gamma) {
    for (int i = 0; i < w1.rho->comps; ++i) {
      Real sr = 0;
      for (std::size_t j = 0; j < g.size(); ++j)
        sr += w1.rho->at(i, j) * w2.rho->at(i, j) * det.at(0, j);
      s += sr / npts;
    }
  }
  return s;
}

// Transported momentum: at time t, with m = A u(t),
//   block 1: (grad p1)^T (m o p1) det + gamma (grad p2)^T (rho o p1) det
//   block 2: (rho o p1) det.
// Both blocks are constant in t along solutions of the system.
template <class Real>
std::pair<TorusField<Real>, std::optional<TorusField<Real>>> lagrangian_momentum(
    const EulerState<Real>& w, const LagrangianState<Real>& lagr,
    const ModelParams<Real>& mp) {
  const Grid& g = w.u.grid;
  const int dim = g.dim();
  auto m = momentum(w, mp);
  auto mc = compose(m, lagr.p1_disp);
  auto dd = all_partials(lagr.p1_disp);
  auto det = det_grad_p1(lagr.p1_disp);

  TorusField<Real> block1(g, dim);
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (int i = 0; i < dim; ++i) {
      Real acc = 0;
      for (int r = 0; r < dim; ++r) {
        // (grad p1)_{r i} = delta_{r i} + d disp_r / d x_i
        Real jri = (r == i ? Real(1) : Real(0)) + dd[i].at(r, j);
        acc += jri * mc.at(r, j);
      }
      block1.at(i, j) = acc * det.at(0, j);
    }
  }

  std::optional<TorusField<Real>> block2;
  if (mp.gamma) {
    auto rc = compose(*w.rho, lagr.p1_disp);
    auto dp2 = all_partials(*lagr.p2);
    for (std::size_t j = 0; j < g.size(); ++j)
      for (int i = 0; i < dim; ++i) {
        Real acc = 0;
        for (int r = 0; r < lagr.p2->comps; ++r) acc += dp2[i].at(r, j) * rc.at(r, j);
        block1.at(i, j) += acc * det.at(0, j);
      }
    TorusField<Real> b2(g, rc.comps);
    for (int c = 0; c < rc.comps; ++c)
      for (std::size_t j = 0; j < g.size(); ++j)
        b2.at(c, j) = rc.at(c, j) * det.at(0, j);
    block2 = std::move(b2);
  }
  return {std::move(block1), std::move(block2)};
}

// One row of the diagnostics time series.
template <class Real>
struct DiagnosticsRecord {
  Real t = 0;
  Real hs_energy = 0;
  std::vector<Real> mu_u;        // mean of each velocity component
  Real metric_norm = 0;          // <w, w> at the identity
  Real lagr_momentum_dev = 0;    // max-norm deviation of the transported momentum
  Real rho_mass_dev = 0;         // max-norm deviation of (rho o p1) det(grad p1)
  std::optional<Real> geo_residual;
};

}  // namespace chtorus
