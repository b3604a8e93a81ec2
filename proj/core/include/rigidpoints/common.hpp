#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rigidpoints {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Absolute tolerance for zero-measure coincidence events (boundary hits,
// points at the origin, repeated coordinates).
inline constexpr double kCoincidenceTol = 1e-14;

struct BoundaryPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OriginPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RootFindingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LeadingCoefficientUnderflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidEpsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct QuadratureNotConvergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientScaleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SumMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct StuckChainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AllZeroSigmaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace rigidpoints
