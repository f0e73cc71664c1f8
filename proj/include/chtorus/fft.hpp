#pragma once

#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "chtorus/grid.hpp"

// Power-of-two complex FFT templated on the scalar type, so the whole
// toolkit can run in double or long double (extended precision is used by
// the temporal-order acceptance check, where double roundoff would mask
// the RK4 convergence signal).

namespace chtorus::detail {

// exp(-2*pi*i*m/n) for m in [0, n/2); cached per length and scalar type.
template <class Real>
const std::vector<std::complex<Real>>& twiddle_table(int n) {
  static thread_local std::map<int, std::vector<std::complex<Real>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<Real>> tw(static_cast<std::size_t>(n / 2));
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  for (int m = 0; m < n / 2; ++m) {
    Real theta = -two_pi * static_cast<Real>(m) / static_cast<Real>(n);
    tw[static_cast<std::size_t>(m)] = {std::cos(theta), std::sin(theta)};
  }
  return cache.emplace(n, std::move(tw)).first->second;
}

// In-place iterative radix-2 FFT; inverse uses conjugated twiddles and no
// normalization (callers scale).
template <class Real>
void fft_pow2(std::complex<Real>* a, int n, bool inverse) {
  if (n <= 1) return;
  const auto& tw = twiddle_table<Real>(n);
  // bit-reversal permutation
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    int stride = n / len;
    for (int start = 0; start < n; start += len) {
      for (int j = 0; j < len / 2; ++j) {
        std::complex<Real> w = tw[static_cast<std::size_t>(j * stride)];
        if (inverse) w = std::conj(w);
        std::complex<Real>& lo = a[start + j];
        std::complex<Real>& hi = a[start + j + len / 2];
        std::complex<Real> t = hi * w;
        hi = lo - t;
        lo += t;
      }
    }
  }
}

// Transform one axis of a row-major multi-dimensional array.
template <class Real>
void fft_axis(std::vector<std::complex<Real>>& data, const Grid& g, int axis,
              bool inverse) {
  const int n = g.n();
  const std::size_t stride = g.stride(axis);
  const std::size_t block = stride * static_cast<std::size_t>(n);
  std::vector<std::complex<Real>> scratch(static_cast<std::size_t>(n));
  for (std::size_t base = 0; base < data.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      if (stride == 1) {
        fft_pow2(data.data() + base, n, inverse);
      } else {
        for (int j = 0; j < n; ++j)
          scratch[static_cast<std::size_t>(j)] =
              data[base + off + static_cast<std::size_t>(j) * stride];
        fft_pow2(scratch.data(), n, inverse);
        for (int j = 0; j < n; ++j)
          data[base + off + static_cast<std::size_t>(j) * stride] =
              scratch[static_cast<std::size_t>(j)];
      }
    }
  }
}

template <class Real>
void fft_all_axes(std::vector<std::complex<Real>>& data, const Grid& g,
                  bool inverse) {
  for (int a = 0; a < g.dim(); ++a) fft_axis(data, g, a, inverse);
}

}  // namespace chtorus::detail
