#include "rigidpoints/powersums.hpp"

#include <algorithm>
#include <cmath>

namespace rigidpoints {

PowerSumReport inverse_power_sums(const PointConfiguration& config,
                                  const PartitionOfUnity& partition,
                                  int l_max, int tail_k_max) {
  if (l_max < 1) throw std::invalid_argument("inverse_power_sums: l_max < 1");
  PowerSumReport report;
  report.l_max = l_max;
  report.tail_k_max = tail_k_max;
  report.s.assign(l_max + 1, Complex(0.0, 0.0));
  report.s_abs.assign(l_max + 1, 0.0);
  report.alpha.assign(l_max + 1, Complex(0.0, 0.0));
  report.tails.assign(l_max + 1,
                      std::vector<Complex>(tail_k_max + 1, Complex(0.0, 0.0)));

  double max_abs = 0.0;
  for (const Complex& z : config.points()) {
    max_abs = std::max(max_abs, std::abs(z));
  }
  // Scales whose annulus lies beyond every point contribute nothing.
  int j_top = 0;
  while (j_top < partition.j_max() &&
         std::ldexp(partition.r0(), j_top) < max_abs) {
    ++j_top;
  }

  for (const Complex& z : config.points()) {
    const double r = std::abs(z);
    if (r < kCoincidenceTol) {
      throw OriginPointError("inverse_power_sums: point at the origin");
    }
    const double edge = partition.phi_tilde(r);
    std::vector<double> window(j_top + 1, 0.0);
    for (int j = 1; j <= j_top; ++j) window[j] = partition.phi_scaled(r, j);

    Complex inv_pow(1.0, 0.0);
    const Complex inv = 1.0 / z;
    for (int l = 1; l <= l_max; ++l) {
      inv_pow *= inv;
      report.alpha[l] += inv_pow;
      Complex smoothed = edge * inv_pow;
      for (int j = 1; j <= j_top; ++j) smoothed += window[j] * inv_pow;
      report.s[l] += smoothed;
      if (l >= 3) {
        const double abs_pow = std::pow(r, -l);
        double abs_smoothed = edge * abs_pow;
        for (int j = 1; j <= j_top; ++j) abs_smoothed += window[j] * abs_pow;
        report.s_abs[l] += abs_smoothed;
      }
      for (int k = 1; k <= tail_k_max; ++k) {
        Complex tail(0.0, 0.0);
        for (int j = k; j <= j_top; ++j) tail += window[j] * inv_pow;
        report.tails[l][k] += tail;
      }
    }
  }
  return report;
}

double envelope_statistic(const PowerSumReport& report) {
  if (report.l_max < 3) {
    throw std::invalid_argument("envelope_statistic: need l_max >= 3");
  }
  return std::abs(report.s[1]) + std::abs(report.s[2]) + report.s_abs[3];
}

}  // namespace rigidpoints
