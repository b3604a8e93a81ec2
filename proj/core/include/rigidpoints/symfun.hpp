#pragma once

#include <array>
#include <span>
#include <vector>

#include "rigidpoints/logdomain.hpp"

namespace rigidpoints {

// sigma_0..sigma_N of the given points, by the one-point-at-a-time
// multiply-out recurrence sigma_k <- sigma_k + v * sigma_{k-1}.
std::vector<Complex> elementary_symmetric(std::span<const Complex> points);

// sum_{i<j} log|z_i - z_j|; -inf for exact repeats.
double vandermonde_log_abs(std::span<const Complex> points);

// Points together with their sigma sequence and log|Vandermonde|.
struct SymmetricProfile {
  std::vector<Complex> points;
  std::vector<Complex> sigma;
  double log_abs_vandermonde;
};
SymmetricProfile symmetric_profile(std::span<const Complex> points);

// Coefficients g_0..g_{k_max} of the expansion
//   sigma_k(omega) = sum_{r=0}^{k} g_r sigma_{k-r}(zeta, omega),
// i.e. the power series of 1 / prod_i (1 + zeta_i t). Driven by the
// companion recurrence g_r = -sum_{i=1}^{min(r,m)} sigma_i(zeta) g_{r-i}
// with g_0 = 1; the unit leading coefficient is forced by the expansion
// itself (checked against brute-force enumeration in the tests).
std::vector<Complex> g_expansion(std::span<const Complex> sigma_inside,
                                 int k_max);

// D(zeta, omega) = sum_{k=0}^{n} |sigma_k / sqrt(C(n,k) k!)|^2, stored in
// log form; the normalizer C(n,k) k! equals the falling factorial (n)_k.
struct GafDenominator {
  int n;
  double log_value;
};
GafDenominator gaf_denominator(std::span<const Complex> sigma_joint, int n);

// Empirical diagnostics for the cross terms controlling the D ratio:
// per index i (2 <= i <= m) the normalized mixed sum
//   |sum_k conj(sigma_k(z,w)) sigma_{k-i}(w) / (n)_k| / D
// and per pair (i,j), i != j, the omega-omega analogue, each multiplied
// by n. y_sum totals them (the scale expected to stay O(M log M)).
struct GafRatioDiagnostics {
  int n = 0;
  int m = 0;
  double log_d = 0.0;
  std::vector<double> cross_times_n;              // i = 2..m
  std::vector<std::array<int, 2>> pair_indices;   // (i,j), i != j
  std::vector<double> pair_times_n;
  double y_sum = 0.0;
};
GafRatioDiagnostics gaf_ratio_diagnostics(std::span<const Complex> inside,
                                          std::span<const Complex> outside,
                                          int n);

// Residual series value eta_l = sum_{r>=1} g_r xi_{l+r} / sqrt((l+r)_r),
// reported as a raw diagnostic alongside the ratio quantities.
Complex eta_diagnostic(std::span<const Complex> g, std::span<const Complex> xi,
                       int l);

}  // namespace rigidpoints
