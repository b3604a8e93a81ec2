#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigidpoints/report.hpp"
#include "rigidpoints/stats.hpp"

namespace rigidpoints {

// ---------------------------------------------------------------------
// Rigidity of the count (Ginibre): recover the number of inside points
// from the outside points across an eps sweep.

struct RigidityCountConfig {
  double r0 = 1.0;
  std::vector<double> eps_grid = {1.0, 0.5, 0.33};
  int replicas = 200;
  std::uint64_t seed = 1;
  int threads = 0;
  int n_override = 0;  // 0: n = ceil((r0 e^{1/eps} + 5)^2) per eps
};

struct RigidityCountEpsSummary {
  double eps = 0.0;
  int n = 0;
  double std_raw_err = 0.0;
  double hit_rate = 0.0;
  double variance_raw_err = 0.0;
};

struct RigidityCountResult {
  Table rows;  // replica, eps, raw, truth, error, rounded_hit
  std::vector<RigidityCountEpsSummary> per_eps;
  double slope_logvar_logeps = 0.0;
  double max_bookkeeping_err = 0.0;
  std::vector<PlotRow> plot;
};

RigidityCountResult run_rigidity_count(const RigidityCountConfig& cfg);

// ---------------------------------------------------------------------
// Rigidity of the sum (GAF zeros): recover the inside sum. The bump
// support must stay within radius 0.7 sqrt(n), where the finite-degree
// zero intensity is still flat.

struct RigiditySumConfig {
  double r0 = 0.3;
  int n = 100;
  std::vector<double> eps_grid = {1.0, 0.5, 0.33};
  int replicas = 200;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct RigiditySumEpsSummary {
  double eps = 0.0;
  double median_abs_err = 0.0;
  double std_abs_err = 0.0;
};

struct RigiditySumResult {
  Table rows;  // replica, eps, raw_re, raw_im, truth_re, truth_im, abs_err
  std::vector<RigiditySumEpsSummary> per_eps;
  std::vector<PlotRow> plot;
};

RigiditySumResult run_rigidity_sum(const RigiditySumConfig& cfg);

// ---------------------------------------------------------------------
// Dyadic tail decay of smoothed inverse-power sums.

struct PowerTailsConfig {
  std::string model = "ginibre";  // "ginibre" | "gaf"
  int n = 324;
  double r0 = 0.5;
  int l = 1;
  std::vector<int> scales = {1, 2, 3};
  int replicas = 500;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct PowerTailsResult {
  Table rows;  // replica, l, k, tau_abs
  std::vector<double> mean_abs_tau;  // aligned with scales
  SlopeFit slope;                    // log2 E|tau_l(2^k)| vs k
  std::vector<PlotRow> plot;
};

PowerTailsResult run_power_tails(const PowerTailsConfig& cfg);

// ---------------------------------------------------------------------
// Variance of linear statistics: quadrature across (R, n) plus a Monte
// Carlo cross-check at small n.

struct VarianceQuadratureConfig {
  std::vector<double> r_values = {2.0, 4.0, 8.0};
  std::vector<int> n_values = {16, 64, 256};
  int mc_replicas = 100000;
  int mc_n = 3;
  double mc_r = 2.0;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct VarianceQuadratureResult {
  Table rows;  // R, n, variance
  double reference = 0.0;  // value at smallest R, largest n
  double max_over_reference = 0.0;
  double mc_variance = 0.0;
  double mc_se = 0.0;
  double quad_at_mc_case = 0.0;
  std::vector<PlotRow> plot;
};

VarianceQuadratureResult run_variance_quadrature(
    const VarianceQuadratureConfig& cfg);

// ---------------------------------------------------------------------
// Vieta ratio recovery and full reconstruction.

struct VietaCheckConfig {
  int n = 20;
  int replicas = 100;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct VietaCheckResult {
  Table rows;  // replica, max_ratio_err
  double worst = 0.0;
  std::vector<PlotRow> plot;
};

VietaCheckResult run_vieta_check(const VietaCheckConfig& cfg);

struct ReconstructConfig {
  int n = 60;
  int replicas = 500;
  int k_max = 0;  // 0: use n
  std::uint64_t seed = 1;
  int threads = 0;
};

struct ReconstructResult {
  Table rows;  // replica, k_max, chi, chi_err, chi_over_xi0,
               // max_ratio_err, aligned_err, phase_angle
  double chi_within_025_rate = 0.0;
  double aligned_within_03_rate = 0.0;
  double phase_ks_statistic = 0.0;
  std::vector<PlotRow> plot;
};

ReconstructResult run_reconstruct(const ReconstructConfig& cfg);

// ---------------------------------------------------------------------
// Tolerance chains.

struct ToleranceMcmcConfig {
  std::string model = "ginibre";  // "ginibre" | "gaf"
  int n = 64;
  int m = 2;
  double r0 = 1.0;
  double delta = 0.05;  // boundary separation required of the replica
  long steps = 100000;
  std::uint64_t seed = 1;
  int max_sample_attempts = 4000;
  int threads = 0;
};

struct ToleranceMcmcResult {
  Table rows;  // step, re/im per coordinate, log_density, accepted
  double acceptance = 0.0;
  double max_drift = 0.0;
  long occupied_cells = 0;
  long interior_cells = 0;
  long occupied_angle_bins = 0;
  int angle_bins = 0;
  double retained_fraction = 0.0;  // replicas passing the m/delta filter
  double ks_radial = 0.0;          // m=1 ginibre: KS vs truncated Gaussian
  std::vector<PlotRow> plot;
};

ToleranceMcmcResult run_tolerance_mcmc(const ToleranceMcmcConfig& cfg);

// ---------------------------------------------------------------------
// Cross-term envelope for the Ginibre conditional density ratio: fit K
// on calibration replicas, then measure how often
//   |log ratio - inside Vandermonde term| <= 4 m K X_n
// holds on fresh (zeta', replica) pairs.

struct RatioEnvelopeConfig {
  int n = 256;
  int m = 2;
  double r0 = 1.0;
  double delta = 0.1;
  int pairs_per_replica = 50;
  int calibration_replicas = 30;
  int test_pairs = 10000;
  std::uint64_t seed = 1;
  int max_sample_attempts = 20000;
  int threads = 0;
};

struct RatioEnvelopeResult {
  double fitted_k = 0.0;
  double pass_fraction = 0.0;
  int test_pairs = 0;
  double retained_fraction = 0.0;
  Table rows;  // pair, ratio (LHS / (4 m X_n))
  std::vector<PlotRow> plot;
};

RatioEnvelopeResult run_ratio_envelope(const RatioEnvelopeConfig& cfg);

// ---------------------------------------------------------------------
// GAF conditional-density diagnostics: the normalized cross terms of the
// D ratio, the D-ratio percentiles across degrees, and the residual
// series values.

struct DiagnosticsGafConfig {
  std::vector<int> n_values = {40, 60, 80};
  int m = 2;
  double r0 = 1.4;
  double delta = 0.05;
  int replicas = 300;
  int zeta_primes_per_replica = 50;
  std::uint64_t seed = 1;
  int threads = 0;
  int max_sample_attempts = 400;
};

struct DiagnosticsGafPerN {
  int n = 0;
  int replicas_used = 0;
  double retained_fraction = 0.0;
  double cross_p90 = 0.0;        // 90th pct of n * (exp2 quantity)
  double dratio_p95 = 0.0;       // 95th pct of |(n+1) delta log D|
  double y_sum_p90 = 0.0;
};

struct DiagnosticsGafResult {
  Table rows;  // n, replica, cross_max, pair_max, y_sum, dratio_max,
               // eta1_abs, eta2_abs
  std::vector<DiagnosticsGafPerN> per_n;
  std::vector<PlotRow> plot;
};

DiagnosticsGafResult run_diagnostics_gaf(const DiagnosticsGafConfig& cfg);

}  // namespace rigidpoints
