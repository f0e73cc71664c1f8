#pragma once

#include <array>
#include <cmath>
#include <random>

#include "chtorus/field.hpp"
#include "chtorus/grid.hpp"

namespace testutil {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Build a field by sampling f(c, x) at grid points; x has grid.dim() entries.
template <class Real, class F>
chtorus::TorusField<Real> make_field(const chtorus::Grid& g, int comps, F f) {
  chtorus::TorusField<Real> out(g, comps);
  std::array<Real, 3> x{};
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (int a = 0; a < g.dim(); ++a) x[static_cast<std::size_t>(a)] = g.template point<Real>(j, a);
    for (int c = 0; c < comps; ++c) out.at(c, j) = f(c, x);
  }
  return out;
}

// Random real trig polynomial with |k|_inf <= kmax per component,
// deterministic per seed.  Coefficients are O(amp / modes).
template <class Real>
chtorus::TorusField<Real> random_trig(const chtorus::Grid& g, int comps, int kmax,
                                      Real amp, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  chtorus::TorusField<Real> out(g, comps);
  const Real two_pi = Real(2) * Real(kPi);
  // iterate over modes in a fixed order
  const int span = 2 * kmax + 1;
  int lattice = 1;
  for (int a = 0; a < g.dim(); ++a) lattice *= span;
  for (int c = 0; c < comps; ++c) {
    for (int t = 0; t < lattice; ++t) {
      int rem = t;
      std::array<int, 3> k{};
      for (int a = g.dim() - 1; a >= 0; --a) {
        k[static_cast<std::size_t>(a)] = rem % span - kmax;
        rem /= span;
      }
      Real ca = static_cast<Real>(unif(rng)) * amp / static_cast<Real>(lattice);
      Real sa = static_cast<Real>(unif(rng)) * amp / static_cast<Real>(lattice);
      bool zero_mode = true;
      for (int a = 0; a < g.dim(); ++a) zero_mode = zero_mode && k[static_cast<std::size_t>(a)] == 0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        Real phase = 0;
        for (int a = 0; a < g.dim(); ++a)
          phase += static_cast<Real>(k[static_cast<std::size_t>(a)]) * g.template point<Real>(j, a);
        phase *= two_pi;
        out.at(c, j) += zero_mode ? ca : ca * std::cos(phase) + sa * std::sin(phase);
      }
    }
  }
  return out;
}

}  // namespace testutil
