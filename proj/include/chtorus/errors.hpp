#pragma once

#include <stdexcept>
#include <string>

namespace chtorus {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameters, grids, or scenario configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Non-finite samples or other numeric preconditions violated.
struct NumericsError : Error {
  using Error::Error;
};

// Right-hand side not in the range of the inertia operator
// (alpha = beta = 0 case with nonzero mean).
struct RangeError : Error {
  using Error::Error;
};

// Non-finite values appeared during time stepping.
struct BlowupError : Error {
  double t;
  explicit BlowupError(double t_)
      : Error("blow-up/instability detected at t=" + std::to_string(t_)), t(t_) {}
};

// Flow map stopped being orientation-preserving.
struct DiffeoError : Error {
  double t;
  explicit DiffeoError(double t_)
      : Error("diffeomorphism breakdown at t=" + std::to_string(t_)), t(t_) {}
  explicit DiffeoError(const std::string& what_) : Error(what_), t(0) {}
};

// A mathematical identity the tool certifies failed to hold numerically.
struct VerificationError : Error {
  using Error::Error;
};

}  // namespace chtorus
