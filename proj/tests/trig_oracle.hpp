#pragma once

// Independent oracle for the tests: exact trigonometric-polynomial algebra
// over complex-exponential modes e^{2 pi i k.x}, implemented with map-based
// convolution arithmetic (no FFT, no grid).  Differential operators act
// exactly on mode coefficients.  The operator formulas below are assembled
// directly from their displayed definitions, independently of the library's
// pseudospectral implementation, so agreement on sampled grids checks both
// the spectral machinery and the formula transcription.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include "chtorus/field.hpp"
#include "chtorus/grid.hpp"
#include "chtorus/state.hpp"

namespace trig {

using Cplx = std::complex<double>;
using Key = std::array<int, 2>;  // 1D functions keep k[1] == 0

struct Fn {
  std::map<Key, Cplx> c;
};

inline Fn prune(Fn f, double tol = 1e-17) {
  for (auto it = f.c.begin(); it != f.c.end();)
    it = (std::abs(it->second) <= tol) ? f.c.erase(it) : std::next(it);
  return f;
}

inline Fn harmonic(Key k, Cplx a) {
  Fn f;
  f.c[k] = a;
  return f;
}

inline Fn constant(double v) { return harmonic({0, 0}, Cplx(v, 0)); }

// sin(2 pi k.x), cos(2 pi k.x)
inline Fn sinf(Key k) {
  Fn f;
  f.c[k] = Cplx(0, -0.5);
  f.c[{-k[0], -k[1]}] = Cplx(0, 0.5);
  return f;
}

inline Fn cosf(Key k) {
  Fn f;
  f.c[k] = Cplx(0.5, 0);
  f.c[{-k[0], -k[1]}] = Cplx(0.5, 0);
  return f;
}

inline Fn add(const Fn& a, const Fn& b) {
  Fn out = a;
  for (const auto& [k, v] : b.c) out.c[k] += v;
  return prune(out);
}

inline Fn sub(const Fn& a, const Fn& b) {
  Fn out = a;
  for (const auto& [k, v] : b.c) out.c[k] -= v;
  return prune(out);
}

inline Fn scaled(const Fn& a, Cplx s) {
  Fn out = a;
  for (auto& [k, v] : out.c) v *= s;
  return out;
}

inline Fn mul(const Fn& a, const Fn& b) {
  Fn out;
  for (const auto& [ka, va] : a.c)
    for (const auto& [kb, vb] : b.c)
      out.c[{ka[0] + kb[0], ka[1] + kb[1]}] += va * vb;
  return prune(out);
}

inline Fn diff(const Fn& a, int axis) {
  Fn out;
  const double twopi = 2.0 * std::acos(-1.0);
  for (const auto& [k, v] : a.c)
    out.c[k] = v * Cplx(0, twopi * k[axis]);
  return prune(out);
}

inline double mean(const Fn& a) {
  auto it = a.c.find({0, 0});
  return it == a.c.end() ? 0.0 : it->second.real();
}

// int_T f g dx = sum_k f_k g_{-k}
inline double inner(const Fn& a, const Fn& b) {
  Cplx s = 0;
  for (const auto& [k, v] : a.c) {
    auto it = b.c.find({-k[0], -k[1]});
    if (it != b.c.end()) s += v * it->second;
  }
  return s.real();
}

template <class Symbol>
Fn apply_symbol(const Fn& a, Symbol&& sym) {
  Fn out;
  for (const auto& [k, v] : a.c) {
    long ksq = static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1];
    out.c[k] = v * sym(ksq, k[0] == 0 && k[1] == 0);
  }
  return prune(out);
}

inline double symbol_A(int alpha, int beta, long ksq, bool zero) {
  const double pi = std::acos(-1.0);
  if (zero) return static_cast<double>(alpha + beta);
  return static_cast<double>(beta) + 4.0 * pi * pi * static_cast<double>(ksq);
}

inline Fn A_apply(const Fn& a, int alpha, int beta) {
  return apply_symbol(a, [&](long ksq, bool zero) { return symbol_A(alpha, beta, ksq, zero); });
}

inline Fn A_inv(const Fn& a, int alpha, int beta) {
  if (alpha == 0 && beta == 0) {
    auto it = a.c.find({0, 0});
    if (it != a.c.end() && std::abs(it->second) > 1e-12)
      throw std::runtime_error("oracle A_inv: nonzero mean outside range of -Delta");
    Fn out;
    Cplx at0 = 0;
    for (const auto& [k, v] : a.c) {
      if (k[0] == 0 && k[1] == 0) continue;
      Cplx w = v / symbol_A(0, 0, static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1], false);
      out.c[k] = w;
      at0 += w;  // value of the k-sum at x = 0
    }
    out.c[{0, 0}] = -at0;  // normalise w(0) = 0
    return prune(out);
  }
  return apply_symbol(a, [&](long ksq, bool zero) { return 1.0 / symbol_A(alpha, beta, ksq, zero); });
}

using Vec = std::vector<Fn>;

inline Vec vadd(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = add(a[i], b[i]);
  return out;
}

inline Vec vsub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sub(a[i], b[i]);
  return out;
}

inline Vec vscaled(const Vec& a, Cplx s) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = scaled(a[i], s);
  return out;
}

inline Vec vA(const Vec& a, int alpha, int beta) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = A_apply(a[i], alpha, beta);
  return out;
}

inline Vec vAinv(const Vec& a, int alpha, int beta) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = A_inv(a[i], alpha, beta);
  return out;
}

// (grad u . v)_i = sum_a (d u_i / d x_a) v_a    (directional derivative)
inline Vec jac_apply(const Vec& u, const Vec& v) {
  const int dim = static_cast<int>(v.size());
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    Fn acc;
    for (int a = 0; a < dim; ++a) acc = add(acc, mul(diff(u[i], a), v[a]));
    out[i] = acc;
  }
  return out;
}

// ((grad u)^T m)_i = sum_j (d u_j / d x_i) m_j
inline Vec jacT_apply(const Vec& u, const Vec& m) {
  const int dim = static_cast<int>(u.size());
  Vec out(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    Fn acc;
    for (std::size_t j = 0; j < u.size(); ++j) acc = add(acc, mul(diff(u[j], i), m[j]));
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

inline Fn divergence(const Vec& u) {
  Fn acc;
  for (std::size_t a = 0; a < u.size(); ++a) acc = add(acc, diff(u[a], static_cast<int>(a)));
  return acc;
}

inline Vec gradient(const Fn& s, int dim) {
  Vec out(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) out[static_cast<std::size_t>(a)] = diff(s, a);
  return out;
}

inline Fn dot(const Vec& a, const Vec& b) {
  Fn acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc = add(acc, mul(a[i], b[i]));
  return acc;
}

inline double vinner(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += inner(a[i], b[i]);
  return s;
}

inline Vec vmul_scalar(const Vec& a, const Fn& s) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mul(a[i], s);
  return out;
}

// --- sampling bridge (direct cosine/sine sums, no FFT) ---

inline double eval_at(const Fn& f, double x0, double x1) {
  const double twopi = 2.0 * std::acos(-1.0);
  double s = 0;
  for (const auto& [k, v] : f.c) {
    double th = twopi * (k[0] * x0 + k[1] * x1);
    s += v.real() * std::cos(th) - v.imag() * std::sin(th);
  }
  return s;
}

inline chtorus::TorusField<double> sample(const Vec& u, const chtorus::Grid& g) {
  chtorus::TorusField<double> out(g, static_cast<int>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      double x0 = g.point<double>(j, 0);
      double x1 = g.dim() > 1 ? g.point<double>(j, 1) : 0.0;
      out.at(static_cast<int>(i), j) = eval_at(u[i], x0, x1);
    }
  return out;
}

inline chtorus::TorusField<double> sample(const Fn& f, const chtorus::Grid& g) {
  return sample(Vec{f}, g);
}

struct State {
  Vec u;
  Vec rho;  // empty when the extra components are absent
};

struct Params {
  int alpha = 0, beta = 1, gamma = 0;
};

inline chtorus::EulerState<double> sample_state(const State& w, const chtorus::Grid& g) {
  chtorus::EulerState<double> s;
  s.u = sample(w.u, g);
  if (!w.rho.empty()) s.rho = sample(w.rho, g);
  return s;
}

// --- operator formulas, transcribed from their displayed definitions ---

// Right-hand side of the evolution system:
//   m_t = -grad m . u - (grad u)^T m - m div u - gamma (grad rho)^T rho
//   rho_t = -grad rho . u - rho div u,    m = A u.
// For the degenerate inertia operator (alpha = beta = 0) the mean of m_t is
// removed before inversion, matching the constrained evolution.
inline State rhs(const State& w, Params p) {
  const int dim = static_cast<int>(w.u.size());
  Vec m = vA(w.u, p.alpha, p.beta);
  Vec mt = vscaled(jac_apply(m, w.u), -1.0);
  mt = vsub(mt, jacT_apply(w.u, m));
  Fn divu = divergence(w.u);
  mt = vsub(mt, vmul_scalar(m, divu));
  if (p.gamma) mt = vsub(mt, jacT_apply(w.rho, w.rho));
  if (p.alpha == 0 && p.beta == 0)
    for (auto& f : mt) f.c.erase({0, 0});
  State out;
  out.u = vAinv(mt, p.alpha, p.beta);
  if (p.gamma) {
    out.rho = vscaled(jac_apply(w.rho, w.u), -1.0);
    out.rho = vsub(out.rho, vmul_scalar(w.rho, divu));
  }
  (void)dim;
  return out;
}

// Bilinear operator:
//   B1(w1,w2) = -A^{-1}( grad(A u2).u1 + (grad u1)^T A u2 + (A u2) div u1
//                        + gamma (grad rho1)^T rho2 )
//   B2(w1,w2) = -grad rho2 . u1 - (div u1) rho2
inline State B(const State& w1, const State& w2, Params p) {
  Vec Av = vA(w2.u, p.alpha, p.beta);
  Vec braces = jac_apply(Av, w1.u);
  braces = vadd(braces, jacT_apply(w1.u, Av));
  Fn divu1 = divergence(w1.u);
  braces = vadd(braces, vmul_scalar(Av, divu1));
  if (p.gamma) braces = vadd(braces, jacT_apply(w1.rho, w2.rho));
  State out;
  out.u = vAinv(vscaled(braces, -1.0), p.alpha, p.beta);
  if (p.gamma) {
    out.rho = vscaled(jac_apply(w2.rho, w1.u), -1.0);
    out.rho = vsub(out.rho, vmul_scalar(w2.rho, divu1));
  }
  return out;
}

// Christoffel map at the identity:
//   G1 = -1/2 A^{-1}{ grad(A v).u + grad(A u).v + (grad u)^T A v
//        + (grad v)^T A u + (A v) div u + (A u) div v
//        - A(grad u . v) - A(grad v . u) + gamma grad(rho . eta) }
//   G2 = -1/2 ( rho div v + eta div u )
inline State christoffel(const State& w1, const State& w2, Params p) {
  const int dim = static_cast<int>(w1.u.size());
  Vec Au = vA(w1.u, p.alpha, p.beta);
  Vec Av = vA(w2.u, p.alpha, p.beta);
  Fn divu = divergence(w1.u);
  Fn divv = divergence(w2.u);
  Vec braces = jac_apply(Av, w1.u);
  braces = vadd(braces, jac_apply(Au, w2.u));
  braces = vadd(braces, jacT_apply(w1.u, Av));
  braces = vadd(braces, jacT_apply(w2.u, Au));
  braces = vadd(braces, vmul_scalar(Av, divu));
  braces = vadd(braces, vmul_scalar(Au, divv));
  braces = vsub(braces, vA(jac_apply(w1.u, w2.u), p.alpha, p.beta));
  braces = vsub(braces, vA(jac_apply(w2.u, w1.u), p.alpha, p.beta));
  if (p.gamma) braces = vadd(braces, gradient(dot(w1.rho, w2.rho), dim));
  if (p.alpha == 0 && p.beta == 0)
    for (auto& f : braces) f.c.erase({0, 0});
  State out;
  out.u = vAinv(vscaled(braces, -0.5), p.alpha, p.beta);
  if (p.gamma) {
    Vec second = vmul_scalar(w1.rho, divv);
    second = vadd(second, vmul_scalar(w2.rho, divu));
    out.rho = vscaled(second, -0.5);
  }
  return out;
}

// Family of 2D equations with inertia operator mu - Delta and stretching
// weight b:  m_t = -grad m . u - (grad u)^T m - (b - 1) m div u.
inline Vec rhs_beq(const Vec& u, double b) {
  Vec m = vA(u, 1, 0);
  Vec mt = vscaled(jac_apply(m, u), -1.0);
  mt = vsub(mt, jacT_apply(u, m));
  mt = vsub(mt, vscaled(vmul_scalar(m, divergence(u)), b - 1.0));
  return vAinv(mt, 1, 0);
}

// <w1, w2> with the inertia-operator weights, in exact mode arithmetic.
inline double metric_inner_o(const State& w1, const State& w2, Params p) {
  double s = 0;
  for (std::size_t i = 0; i < w1.u.size(); ++i)
    s += inner(w1.u[i], A_apply(w2.u[i], p.alpha, p.beta));
  if (p.gamma) s += vinner(w1.rho, w2.rho);
  return s;
}

inline double max_mode_diff(const Fn& a, const Fn& b) {
  double m = 0;
  Fn d = sub(a, b);
  for (const auto& [k, v] : d.c) m = std::max(m, std::abs(v));
  return m;
}

inline double max_mode_diff(const Vec& a, const Vec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_mode_diff(a[i], b[i]));
  return m;
}

}  // namespace trig
