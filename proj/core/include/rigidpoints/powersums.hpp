#pragma once

#include <vector>

#include "rigidpoints/geometry.hpp"
#include "rigidpoints/testfns.hpp"

namespace rigidpoints {

// Smoothed inverse-power sums of the points outside the disk, their
// dyadic tails, and the full-plane power sums. Because phi_tilde and the
// phi_{2^j} vanish on the closed disk and sum to one outside it, feeding
// the full configuration through the partition reproduces the plain
// outside sums exactly.
struct PowerSumReport {
  int l_max = 0;
  int tail_k_max = 0;
  std::vector<Complex> s;       // s[l], 1 <= l <= l_max (index 0 unused)
  std::vector<double> s_abs;    // s_abs[l], 3 <= l <= l_max
  // tails[l][k] = tau_l(2^k), 1 <= k <= tail_k_max
  std::vector<std::vector<Complex>> tails;
  std::vector<Complex> alpha;   // alpha[k] over all points, 1 <= k <= l_max
};

PowerSumReport inverse_power_sums(const PointConfiguration& config,
                                  const PartitionOfUnity& partition,
                                  int l_max, int tail_k_max = 8);

// X_n statistic controlling the Vandermonde cross-term envelope:
// |S_1| + |S_2| + S~_3.
double envelope_statistic(const PowerSumReport& report);

}  // namespace rigidpoints
