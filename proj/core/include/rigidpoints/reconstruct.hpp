#pragma once

#include <span>
#include <vector>

#include "rigidpoints/samplers.hpp"

namespace rigidpoints {

// Newton's-identities recursion: e_0 = 1,
//   e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} beta_i.
// Input beta_1..beta_k, output e_0..e_k.
std::vector<Complex> newton_from_power_sums(std::span<const Complex> beta);

// Coefficient ratios of the degree-n polynomial sum xi_k z^k / sqrt(k!)
// recovered from its roots alone:
//   a_k = (-1)^k sqrt(k!) e_k(1/z_1, ..., 1/z_n),
// with the e_k built from the inverse power sums alpha_j = sum 1/z^j
// through Newton's identities. a_0 = 1; the sign and sqrt(k!) rescaling
// are pinned by the exactly solvable n = 1 case (a_1 = xi_1/xi_0).
std::vector<Complex> vieta_ratios(std::span<const Complex> roots, int k_max);

// chi_k = sqrt(k) * (sum_{j<k} |a_j|^2)^{-1/2}; estimates |xi_0|.
double estimate_chi(std::span<const Complex> ratios, int k);

struct ReconstructionResult {
  std::vector<Complex> ratios;   // a_0..a_{k_max}
  double chi = 0.0;
  double chi_err = 0.0;          // CLT error bar 0.5/sqrt(k)
  Complex alignment_phase{1.0, 0.0};
  double max_ratio_rel_err = 0.0;   // vs sampled xi_k/xi_0
  double aligned_max_rel_err = 0.0; // vs sampled xi_k, |xi_k| >= 0.1 only
};

// Full pipeline: ratios and chi from the zeros, xi_hat_k = chi * a_k,
// alignment phase by inner-product projection onto the true coefficients.
ReconstructionResult reconstruct_and_align(const GafSample& sample, int k_max);

}  // namespace rigidpoints
