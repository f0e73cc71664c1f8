#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "chtorus/errors.hpp"

// Certification that b = 2 is the only member of the two-component b-family
// on the 2-torus whose geodesic interpretation carries a right-invariant
// metric, and that the inertia operator is then the mean-value Helmholtz
// operator itself.  Everything here is per-Fourier-mode algebra with exact
// coefficient arithmetic on the mode lattice: the identities under test are
// statements about single modes u_n = e^{i n.z} (1,1), n in (2*pi*Z)^2, so
// grid sampling would add nothing but roundoff.

namespace chtorus {

// Diagonal matrices entering the per-mode compatibility identity
//   (grad v_n).1 - i alpha_n v_n = -i beta_n u_n
// for a candidate image v_n = A u_n of the single mode u_n.
template <class Real>
struct GL3Coefficients {
  std::array<Real, 2> n_vec{};   // wavevector components (multiples of 2*pi)
  std::array<Real, 2> alpha_n{}; // diagonal entries
  std::array<Real, 2> beta_n{};  // diagonal entries
};

// Build the coefficient matrices for the integer mode j (wavevector 2*pi*j).
template <class Real>
GL3Coefficients<Real> gl3_coefficients(const std::array<int, 2>& j, Real b) {
  if (j[0] == 0 && j[1] == 0)
    throw ConfigError("gl3_coefficients: mode must be nonzero");
  const Real twopi = Real(2) * std::numbers::pi_v<Real>;
  const Real n1 = twopi * static_cast<Real>(j[0]);
  const Real n2 = twopi * static_cast<Real>(j[1]);
  const Real nsq = n1 * n1 + n2 * n2;
  GL3Coefficients<Real> c;
  c.n_vec = {n1, n2};
  c.alpha_n = {(b + 1) * n1 / nsq + (b - 1) * n2 / nsq + n1 + n2,
               (b + 1) * n2 / nsq + (b - 1) * n1 / nsq + n1 + n2};
  c.beta_n = {Real(3) * n1 + n2, Real(3) * n2 + n1};
  return c;
}

// Residual of the per-mode identity for a candidate amplitude pair v_amp,
// i.e. v_n = (v_amp_1, v_amp_2) e^{i n.z}.  Since v_n is a single mode, the
// directional derivative contributes i(n1+n2) v_n and the identity reduces
// to componentwise complex algebra.  The max-norm residual is normalized by
// ||beta_n u_n||_inf = max_i |beta_i|.
template <class Real>
Real verify_gl3(const std::array<int, 2>& j, Real b,
                const std::array<std::complex<Real>, 2>& v_amp) {
  const auto c = gl3_coefficients(j, b);
  const std::complex<Real> I(0, 1);
  const Real nsum = c.n_vec[0] + c.n_vec[1];
  const Real norm = std::max(std::abs(c.beta_n[0]), std::abs(c.beta_n[1]));
  Real r = 0;
  for (int i = 0; i < 2; ++i) {
    std::complex<Real> lhs = I * nsum * v_amp[i] - I * c.alpha_n[i] * v_amp[i];
    std::complex<Real> rhs = -I * c.beta_n[i];
    r = std::max(r, std::abs(lhs - rhs));
  }
  return r / norm;
}

// The two solution branches read off the identity directly:
// distinct wavevector components force the scalar eigenvalue |n|^2 (the
// mean-value Helmholtz symbol), while on the diagonal n1 = n2 the solution
// is (2/b)|n|^2.
template <class Real>
std::array<std::complex<Real>, 2> gl3_printed_candidate(const std::array<int, 2>& j,
                                                        Real b) {
  const auto c = gl3_coefficients(j, b);
  const Real nsq = c.n_vec[0] * c.n_vec[0] + c.n_vec[1] * c.n_vec[1];
  const Real amp = (j[0] != j[1]) ? nsq : (Real(2) / b) * nsq;
  return {std::complex<Real>(amp), std::complex<Real>(amp)};
}

// Componentwise exact solution of the per-mode identity,
//   v_i = beta_i / (alpha_i - (n1+n2)) = |n|^2 (3n_i+n_j) / ((b+1)n_i + (b-1)n_j),
// defined whenever the denominator is nonzero.  Test oracle for verify_gl3.
template <class Real>
std::array<std::complex<Real>, 2> gl3_exact_solution(const std::array<int, 2>& j,
                                                     Real b) {
  const auto c = gl3_coefficients(j, b);
  std::array<std::complex<Real>, 2> v;
  for (int i = 0; i < 2; ++i) {
    const Real den = c.alpha_n[i] - (c.n_vec[0] + c.n_vec[1]);
    if (std::abs(den) < Real(1e-12))
      throw NumericsError("gl3_exact_solution: mode is in the kernel of the "
                          "per-mode operator for this b");
    v[i] = std::complex<Real>(c.beta_n[i] / den);
  }
  return v;
}

namespace detail {

// Symbol of the candidate inertia operator read off the per-mode solutions:
// |m|^2 off the diagonal m1 = m2, (2/b)|m|^2 on it, and 1 on constants.
template <class Real>
Real candidate_inertia_symbol(const std::array<int, 2>& m, Real b) {
  if (m[0] == 0 && m[1] == 0) return Real(1);
  const Real twopi = Real(2) * std::numbers::pi_v<Real>;
  const Real msq = twopi * twopi * static_cast<Real>(m[0] * m[0] + m[1] * m[1]);
  return (m[0] == m[1]) ? (Real(2) / b) * msq : msq;
}

}  // namespace detail

// Normalized max-norm difference of the two candidate convective right-hand
// sides evaluated on the single mode u_n = e^{i n.z} (1,1):
//   A^{-1}{ u.grad(Au) + (grad u)^T Au + Au (div u) }   vs
//   L^{-1}{ u.grad(Lu) + (grad u)^T Lu + (b-1) Lu (div u) },
// with A the diagonal-corrected candidate operator and L the mean-value
// Helmholtz operator.  Both sides live on the doubled mode 2n, so the
// comparison is exact amplitude algebra; the residual vanishes iff the two
// dynamics agree on this mode, which happens exactly at b = 2.
template <class Real>
Real metric_b_residual(Real b, const std::array<int, 2>& j) {
  if (j[0] == 0 && j[1] == 0)
    throw ConfigError("metric_b_residual: mode must be nonzero");
  const Real twopi = Real(2) * std::numbers::pi_v<Real>;
  const Real n1 = twopi * static_cast<Real>(j[0]);
  const Real n2 = twopi * static_cast<Real>(j[1]);
  const std::array<int, 2> j2{2 * j[0], 2 * j[1]};

  const Real a_n = detail::candidate_inertia_symbol(j, b);
  const Real a_2n = detail::candidate_inertia_symbol(j2, b);
  const Real l_n = twopi * twopi * static_cast<Real>(j[0] * j[0] + j[1] * j[1]);
  const Real l_2n = Real(4) * l_n;

  // Quadratic terms of a single mode: u.grad(Mu) and Mu(div u) each carry
  // i(n1+n2), and (grad u)^T Mu carries 2 i n_i, all on the mode 2n.
  Real r = 0, scale = 0;
  for (int i = 0; i < 2; ++i) {
    const Real ni = (i == 0) ? n1 : n2;
    const Real lhs = a_n * (Real(2) * (n1 + n2) + Real(2) * ni) / a_2n;
    const Real rhs = l_n * (b * (n1 + n2) + Real(2) * ni) / l_2n;
    r = std::max(r, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  return r / scale;
}

}  // namespace chtorus
