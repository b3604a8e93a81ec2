#pragma once

#include <span>
#include <string>
#include <vector>

#include "rigidpoints/geometry.hpp"
#include "rigidpoints/rng.hpp"

namespace rigidpoints {

inline constexpr int kGinibreDefaultCap = 4096;
inline constexpr int kGafDegreeCap = 128;

struct GinibreSample {
  int n = 0;
  PointConfiguration eigenvalues;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string method;        // "eigen" | "mcmc-oracle"
  double trace_rel_err = 0;  // |sum(lambda) - tr| / |tr|
  double det_rel_err = 0;    // |prod(lambda)/det - 1| via log-domain LU
  double acceptance = 0;     // mcmc only
};

// Eigenvalues of an n x n matrix of i.i.d. standard complex Gaussians,
// via Hessenberg reduction + shifted QR (Eigen's complex Schur).
GinibreSample sample_ginibre_eigen(int n, RngState& rng,
                                   int cap = kGinibreDefaultCap);

// Small-n Metropolis oracle targeting the joint eigenvalue density
//   2 sum_{i<j} log|z_i - z_j| - sum_k |z_k|^2  (up to the normalizer).
// Single-coordinate Gaussian proposals, step tuned during the first
// fifth of the run to land the acceptance rate in (0.1, 0.7).
GinibreSample sample_ginibre_mcmc_oracle(int n, long steps, RngState& rng);

struct GafSample {
  int n = 0;
  std::vector<Complex> xi;   // xi_0 .. xi_n
  PointConfiguration roots;  // all n zeros of sum xi_k z^k / sqrt(k!)
  double max_rel_residual = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Polynomial coefficients c_k = xi_k / sqrt(k!).
  std::vector<Complex> coefficients() const;
};

GafSample sample_gaf(int n, RngState& rng, int cap = kGafDegreeCap);

// Aberth-Ehrlich simultaneous iteration with per-root Newton corrections.
// Initial guesses sit on the Cauchy-bound circle (positive root of
// |c_n| x^n = sum_{k<n} |c_k| x^k) with golden-angle spacing plus a fixed
// irrational offset; converged when every correction is <= tol*(1+|root|).
std::vector<Complex> aberth_roots(std::span<const Complex> coefficients,
                                  double tol = 1e-13, int max_iters = 200);

// Horner evaluation returning p(z) and a running rounding-error bound;
// used for the per-root residual checks.
struct HornerResult {
  Complex value;
  double magnitude_scale;  // sum_k |c_k| |z|^k
};
HornerResult horner_with_scale(std::span<const Complex> coefficients,
                               Complex z);

}  // namespace rigidpoints
