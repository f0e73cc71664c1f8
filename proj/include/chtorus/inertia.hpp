#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "chtorus/errors.hpp"
#include "chtorus/spectral.hpp"
#include "chtorus/state.hpp"

// Inertia operators A = alpha*mu + beta - Delta acting componentwise as
// Fourier multipliers, the block operator on (u, rho) states, and their
// inverses.  The alpha=beta=0 case inverts -Delta on zero-mean data and
// normalizes the result to vanish at the origin.

namespace chtorus {

template <class Real>
struct ModelParams {
  int alpha = 0;
  int beta = 1;
  int gamma = 0;
  int dim = 1;        // torus dimension n
  Real b = Real(2);   // only used by the b-equation family

  void validate() const {
    auto in01 = [](int v) { return v == 0 || v == 1; };
    if (!in01(alpha) || !in01(beta) || !in01(gamma))
      throw ConfigError("alpha, beta, gamma must each be 0 or 1");
    if (alpha + beta == 2)
      throw ConfigError("inadmissible parameters: alpha + beta = 2");
    if (dim < 1) throw ConfigError("dimension must be >= 1");
  }

  bool is_hs() const { return alpha == 0 && beta == 0; }
  bool has_rho() const { return gamma == 1; }
};

namespace detail {

// Multiplier of A on the mode with integer |k|^2 = ksq.
template <class Real>
Real inertia_symbol(const ModelParams<Real>& mp, long ksq) {
  const Real four_pi_sq = Real(4) * std::numbers::pi_v<Real> * std::numbers::pi_v<Real>;
  if (ksq == 0) return static_cast<Real>(mp.alpha + mp.beta);
  return static_cast<Real>(mp.beta) + four_pi_sq * static_cast<Real>(ksq);
}

}  // namespace detail

template <class Real>
SpectrumField<Real> apply_A(const SpectrumField<Real>& U, const ModelParams<Real>& mp) {
  SpectrumField<Real> M(U.grid, U.comps);
  for (std::size_t j = 0; j < U.npts(); ++j) {
    Real s = detail::inertia_symbol(mp, U.grid.ksq(j));
    for (int c = 0; c < U.comps; ++c) M.at(c, j) = s * U.at(c, j);
  }
  return M;
}

template <class Real>
TorusField<Real> apply_A(const TorusField<Real>& u, const ModelParams<Real>& mp) {
  return synthesize(apply_A(analyze(u), mp));
}

// Inverse multiplier.  For alpha=beta=0 the input must have zero mean per
// component (|mean| <= 1e-10); the inverse of -Delta is then normalized so
// the output vanishes at x = 0, matching the H^s_0 phase space.
template <class Real>
SpectrumField<Real> invert_A(const SpectrumField<Real>& V, const ModelParams<Real>& mp) {
  SpectrumField<Real> W(V.grid, V.comps);
  const bool hs = mp.is_hs();
  if (hs) {
    for (int c = 0; c < V.comps; ++c) {
      // k=0 coefficient of a real field is its mean
      if (std::abs(V.at(c, 0)) > Real(1e-10))
        throw RangeError("invert_A: right-hand side not in range of -Delta "
                         "(nonzero mean, component " + std::to_string(c) + ")");
    }
  }
  for (std::size_t j = 0; j < V.npts(); ++j) {
    long ksq = V.grid.ksq(j);
    if (hs && ksq == 0) {
      for (int c = 0; c < V.comps; ++c) W.at(c, j) = 0;
      continue;
    }
    Real s = detail::inertia_symbol(mp, ksq);
    for (int c = 0; c < V.comps; ++c) W.at(c, j) = V.at(c, j) / s;
  }
  if (hs) {
    // subtract the value at the origin: w(0) = sum of all coefficients
    for (int c = 0; c < V.comps; ++c) {
      std::complex<Real> w0(0);
      for (std::size_t j = 0; j < V.npts(); ++j) w0 += W.at(c, j);
      W.at(c, 0) = -(w0 - W.at(c, 0));
    }
  }
  return W;
}

template <class Real>
TorusField<Real> invert_A(const TorusField<Real>& v, const ModelParams<Real>& mp) {
  return synthesize(invert_A(analyze(v), mp));
}

// Block operator: A on the velocity block, identity on the density block.
template <class Real>
EulerState<Real> apply_block(const EulerState<Real>& w, const ModelParams<Real>& mp) {
  EulerState<Real> out;
  out.u = apply_A(w.u, mp);
  if (w.rho) out.rho = *w.rho;
  return out;
}

template <class Real>
EulerState<Real> invert_block(const EulerState<Real>& w, const ModelParams<Real>& mp) {
  EulerState<Real> out;
  out.u = invert_A(w.u, mp);
  if (w.rho) out.rho = *w.rho;
  return out;
}

// Momentum m = Au, recomputed on demand.
template <class Real>
TorusField<Real> momentum(const EulerState<Real>& s, const ModelParams<Real>& mp) {
  return apply_A(s.u, mp);
}

}  // namespace chtorus
