#include "rigidpoints/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "rigidpoints/logdomain.hpp"
#include "rigidpoints/symfun.hpp"

namespace rigidpoints {

std::vector<Complex> newton_from_power_sums(std::span<const Complex> beta) {
  const int k_max = static_cast<int>(beta.size());
  if (k_max > 200) {
    throw std::invalid_argument("newton_from_power_sums: k must be <= 200");
  }
  std::vector<Complex> e(k_max + 1, Complex(0.0, 0.0));
  e[0] = Complex(1.0, 0.0);
  for (int k = 1; k <= k_max; ++k) {
    Complex acc(0.0, 0.0);
    double sign = 1.0;
    for (int i = 1; i <= k; ++i) {
      acc += sign * e[k - i] * beta[i - 1];
      sign = -sign;
    }
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

std::vector<Complex> vieta_ratios(std::span<const Complex> roots, int k_max) {
  if (k_max < 1 || k_max > static_cast<int>(roots.size())) {
    throw std::invalid_argument("vieta_ratios: k_max out of range");
  }
  // e_k(1/z) through the multiply-out recurrence. Composing power sums
  // with Newton's identities computes the same polynomials but is
  // exponentially ill-conditioned here: alpha_j blows up like
  // r_min^{-j} while e_k stays O(1/sqrt(k!)), so the cancellation
  // swallows all double-precision digits beyond degree ~12. The two
  // routes are cross-checked at small degree in the tests.
  std::vector<Complex> reciprocal;
  reciprocal.reserve(roots.size());
  for (const Complex& z : roots) {
    if (std::abs(z) < kCoincidenceTol) {
      throw OriginPointError("vieta_ratios: root at the origin");
    }
    reciprocal.push_back(1.0 / z);
  }
  const std::vector<Complex> e = elementary_symmetric(reciprocal);
  std::vector<Complex> a(k_max + 1, Complex(0.0, 0.0));
  a[0] = Complex(1.0, 0.0);
  double sign = -1.0;
  for (int k = 1; k <= k_max; ++k) {
    a[k] = sign * std::exp(0.5 * log_factorial(k)) * e[k];
    sign = -sign;
  }
  return a;
}

double estimate_chi(std::span<const Complex> ratios, int k) {
  if (k < 1 || k > static_cast<int>(ratios.size())) {
    throw std::invalid_argument("estimate_chi: need ratios a_0..a_{k-1}");
  }
  double acc = 0.0;
  for (int j = 0; j < k; ++j) acc += std::norm(ratios[j]);
  return std::sqrt(static_cast<double>(k) / acc);
}

ReconstructionResult reconstruct_and_align(const GafSample& sample,
                                           int k_max) {
  k_max = std::min(k_max, sample.n);
  ReconstructionResult out;
  out.ratios = vieta_ratios(sample.roots.points(), k_max);
  out.chi = estimate_chi(out.ratios, k_max);
  out.chi_err = 0.5 / std::sqrt(static_cast<double>(k_max));

  const Complex xi0 = sample.xi[0];
  double worst_ratio = 0.0;
  Complex projection(0.0, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    const Complex truth = sample.xi[k] / xi0;
    if (std::abs(truth) > 0.0) {
      worst_ratio = std::max(worst_ratio,
                             std::abs(out.ratios[k] - truth) / std::abs(truth));
    }
    projection += std::conj(out.chi * out.ratios[k]) * sample.xi[k];
  }
  out.max_ratio_rel_err = worst_ratio;
  const double pnorm = std::abs(projection);
  out.alignment_phase =
      pnorm > 0.0 ? projection / pnorm : Complex(1.0, 0.0);

  double worst_aligned = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    const double mag = std::abs(sample.xi[k]);
    if (mag < 0.1) continue;
    const Complex rebuilt = out.alignment_phase * out.chi * out.ratios[k];
    worst_aligned = std::max(worst_aligned,
                             std::abs(rebuilt - sample.xi[k]) / mag);
  }
  out.aligned_max_rel_err = worst_aligned;
  return out;
}

}  // namespace rigidpoints
