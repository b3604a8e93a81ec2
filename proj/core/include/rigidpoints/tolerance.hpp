#pragma once

#include <span>
#include <vector>

#include "rigidpoints/geometry.hpp"
#include "rigidpoints/rng.hpp"

namespace rigidpoints {

// Unnormalized conditional law of the inside points given the outside
// points. The normalizers never materialize: every consumer works with
// log-density ratios, in which they cancel.
//
//   ginibre:  log rho(zeta) = 2 log|Delta(zeta, omega)| - sum |zeta_k|^2
//   gaf:      log rho(zeta) = 2 log|Delta(zeta, omega)|
//                             - (n+1) log D(zeta, omega)   on Sigma_s
class ConditionalTarget {
 public:
  enum class Model { Ginibre, Gaf };

  static ConditionalTarget ginibre(const Disk& disk,
                                   std::vector<Complex> outside, int m);
  static ConditionalTarget gaf(const Disk& disk, int n,
                               std::vector<Complex> outside, int m, Complex s);

  Model model() const { return model_; }
  const Disk& disk() const { return disk_; }
  int m() const { return m_; }
  int n() const { return n_; }
  Complex conserved_sum() const { return s_; }
  const std::vector<Complex>& outside() const { return outside_; }

  // log rho(zeta') - log rho(zeta), exact up to rounding; antisymmetric.
  double log_ratio(std::span<const Complex> zeta,
                   std::span<const Complex> zeta_prime) const;

  // Unnormalized log density (the omega-only Vandermonde factor is left
  // out; it cancels in every ratio). Used by the direct-evaluation
  // cross-checks.
  double log_density_unnormalized(std::span<const Complex> zeta) const;

  // Ginibre-only: cross-term variant that keeps the exact product for
  // outside points within `truncation_radius` and replaces the far tail
  // with its two-term inverse-power expansion. Validated against the
  // exact path in the tests.
  double log_ratio_truncated(std::span<const Complex> zeta,
                             std::span<const Complex> zeta_prime,
                             double truncation_radius) const;

  // Components for the envelope experiments: the inside-Vandermonde part
  // and the remainder (cross-term plus Gaussian weight).
  double inside_vandermonde_term(std::span<const Complex> zeta,
                                 std::span<const Complex> zeta_prime) const;

  double gaf_log_denominator(std::span<const Complex> zeta) const;

 private:
  ConditionalTarget() = default;
  void check_inside(std::span<const Complex> zeta) const;
  double cross_term_delta(std::span<const Complex> zeta,
                          std::span<const Complex> zeta_prime) const;

  Model model_ = Model::Ginibre;
  Disk disk_;
  int n_ = 0;
  int m_ = 0;
  Complex s_{0.0, 0.0};
  std::vector<Complex> outside_;
  std::vector<Complex> sigma_outside_;  // gaf: sigma_0..sigma_{n-m} of omega
};

double ginibre_conditional_logratio(const ConditionalTarget& target,
                                    std::span<const Complex> zeta,
                                    std::span<const Complex> zeta_prime);
double gaf_conditional_logratio(const ConditionalTarget& target,
                                std::span<const Complex> zeta,
                                std::span<const Complex> zeta_prime);

struct McmcOptions {
  long thin = 0;                  // 0: every 10*m steps
  long burn_in = 0;               // 0: steps/5 (adaptation window)
  double gaf_step_fraction = 0.1; // pair-move radius as a fraction of r0
  bool adapt_step = true;         // tune toward 0.25 acceptance in burn-in
  int occupancy_grid = 10;        // per-axis cells over the disk square
  int angle_bins = 20;            // gaf pair-angle histogram
  long stuck_window = 10000;
};

struct ChainReport {
  long steps = 0;
  double acceptance = 0.0;
  double step_size = 0.0;
  double max_drift = 0.0;  // gaf: max |sigma_1(state) - s| over the run
  std::vector<std::vector<Complex>> thinned_states;
  std::vector<double> thinned_log_density;
  std::vector<int> thinned_accepted;  // accept flag of the recorded step
  // Visit counts of the first coordinate over a grid x grid partition of
  // the disk's bounding square; -1 marks cells not fully inside.
  std::vector<long> occupancy;
  int grid = 0;
  // gaf m = 2: histogram of arg(zeta_1 - zeta_2) mod pi.
  std::vector<long> angle_histogram;
};

// Metropolis resampler of the inside points. Ginibre proposals redraw a
// single coordinate uniformly in the disk; gaf proposals move a pair by
// (+delta, -delta), preserving sigma_1 exactly, and reject moves leaving
// the disk. Throws StuckChainError if acceptance collapses.
ChainReport mcmc_resample_inside(const ConditionalTarget& target, long steps,
                                 RngState& rng, const McmcOptions& options = {});

}  // namespace rigidpoints
