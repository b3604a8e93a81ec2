#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rigidpoints/common.hpp"

namespace rigidpoints {

double mean(std::span<const double> xs);
double sample_std(std::span<const double> xs);
double median(std::vector<double> xs);          // by value: sorts a copy
double percentile(std::vector<double> xs, double p);  // p in [0,100]

// One-sample Kolmogorov-Smirnov statistic against a CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);
// Two-sample KS statistic.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);
// Asymptotic critical value c(alpha) with D_crit = c / sqrt(n_eff);
// alpha in {0.05, 0.01}.
double ks_critical_scale(double alpha);

// Ordinary least squares y = a + b x; returns slope b and its standard
// error from the residuals.
struct SlopeFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
};
SlopeFit ols_slope(std::span<const double> x, std::span<const double> y);

// Runs fn(replica) for replica = 0..count-1 across the given number of
// worker threads. Replica work must derive all randomness from its own
// (seed, replica) stream so results are thread-count independent;
// exceptions are captured and rethrown on the caller thread.
void parallel_replicas(int count, int threads,
                       const std::function<void(int)>& fn);

int resolve_thread_count(int requested);  // 0: env/hardware default

}  // namespace rigidpoints
