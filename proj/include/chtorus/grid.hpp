#pragma once

#include <cstddef>
#include <string>

#include "chtorus/errors.hpp"

namespace chtorus {

// Uniform grid on the flat torus [0,1)^dim with n samples per axis,
// x_j = j/n componentwise.  Row-major storage, axis 0 slowest.
class Grid {
 public:
  Grid() : dim_(0), n_(0), size_(0) {}

  Grid(int dim, int points_per_axis) : dim_(dim), n_(points_per_axis) {
    if (dim < 1)
      throw ConfigError("grid dimension must be >= 1, got " + std::to_string(dim));
    if (n_ < 4 || (n_ & (n_ - 1)) != 0)
      throw ConfigError("points per axis must be a power of two >= 4, got " +
                        std::to_string(n_));
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = dim_ - 1; a > axis; --a) s *= static_cast<std::size_t>(n_);
    return s;
  }

  int coord(std::size_t flat, int axis) const {
    return static_cast<int>((flat / stride(axis)) % static_cast<std::size_t>(n_));
  }

  // Index -> signed wavenumber in (-n/2, n/2].
  int wavenumber_of(int j) const { return j <= n_ / 2 ? j : j - n_; }

  // Signed wavenumber along an axis for a flat spectral index.
  int wavenumber(std::size_t flat, int axis) const {
    return wavenumber_of(coord(flat, axis));
  }

  // |k|^2 over the integer wavenumber lattice for a flat spectral index.
  long ksq(std::size_t flat) const {
    long s = 0;
    for (int a = 0; a < dim_; ++a) {
      long k = wavenumber(flat, a);
      s += k * k;
    }
    return s;
  }

  template <class Real>
  Real point(std::size_t flat, int axis) const {
    return static_cast<Real>(coord(flat, axis)) / static_cast<Real>(n_);
  }

  bool operator==(const Grid&) const = default;

 private:
  int dim_;
  int n_;
  std::size_t size_;
};

}  // namespace chtorus
