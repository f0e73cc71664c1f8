#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "chtorus/field.hpp"
#include "chtorus/grid.hpp"
#include "chtorus/inertia.hpp"
#include "chtorus/spectral.hpp"
#include "chtorus/state.hpp"

// Seeded band-limited random fields for property tests and the self-test
// suite.  Coefficients are drawn in a fixed lattice order from a Mersenne
// Twister stream mapped to [0,1) directly (no distribution adapters), so a
// given seed produces the same field on every platform.

namespace chtorus {

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

namespace detail {

// Flat index of the conjugate mode (-k mod n per axis).
inline std::size_t conjugate_index(const Grid& g, std::size_t flat) {
  std::size_t out = 0;
  for (int a = 0; a < g.dim(); ++a) {
    int c = g.coord(flat, a);
    int cc = (g.n() - c) % g.n();
    out += static_cast<std::size_t>(cc) * g.stride(a);
  }
  return out;
}

// True on the canonical half of the lattice: the first nonzero wavenumber
// is positive.  Exactly one of each conjugate pair satisfies this.
inline bool canonical_half(const Grid& g, std::size_t flat) {
  for (int a = 0; a < g.dim(); ++a) {
    int k = g.wavenumber(flat, a);
    if (k > 0) return true;
    if (k < 0) return false;
  }
  return false;  // the zero mode
}

}  // namespace detail

// Real random field with |k|_inf <= k_max per axis (Nyquist excluded), unit
// mean amplitude scale, zero mean.  Mildly decaying spectrum so derived
// quantities stay O(1).
template <class Real>
TorusField<Real> random_band_limited_field(const Grid& g, int comps, int k_max,
                                           std::mt19937_64& rng) {
  SpectrumField<Real> F(g, comps);
  for (int c = 0; c < comps; ++c) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!detail::canonical_half(g, j)) continue;
      bool in_band = true;
      for (int a = 0; a < g.dim(); ++a) {
        int k = g.wavenumber(j, a);
        if (k > k_max || k < -k_max || k == g.n() / 2) in_band = false;
      }
      if (!in_band) continue;
      const Real re = static_cast<Real>(2.0 * unit_uniform(rng) - 1.0);
      const Real im = static_cast<Real>(2.0 * unit_uniform(rng) - 1.0);
      const Real decay = Real(1) / (Real(1) + static_cast<Real>(g.ksq(j)));
      F.at(c, j) = decay * std::complex<Real>(re, im);
      F.at(c, detail::conjugate_index(g, j)) = std::conj(F.at(c, j));
    }
  }
  return synthesize(F);
}

// Subtract the value at the grid origin from every component (the phase
// space of the degenerate inertia operator consists of fields vanishing
// there, and its inverse pins results the same way).
template <class Real>
void pin_at_origin(TorusField<Real>& f) {
  for (int c = 0; c < f.comps; ++c) {
    const Real v0 = f.at(c, 0);
    for (std::size_t j = 0; j < f.npts(); ++j) f.at(c, j) -= v0;
  }
}

// Random admissible state for the given parameters: dim-component velocity,
// plus a density block when the model carries one.  For the degenerate
// operator (alpha = beta = 0) the velocity is pinned at the origin.
template <class Real>
EulerState<Real> random_state(const Grid& g, const ModelParams<Real>& mp, int k_max,
                              Real amplitude, std::mt19937_64& rng) {
  EulerState<Real> s;
  s.u = random_band_limited_field<Real>(g, g.dim(), k_max, rng);
  scale(s.u, amplitude);
  if (mp.is_hs()) pin_at_origin(s.u);
  if (mp.has_rho()) {
    s.rho = random_band_limited_field<Real>(g, g.dim(), k_max, rng);
    scale(*s.rho, amplitude);
  }
  return s;
}

}  // namespace chtorus
