#pragma once

#include <span>

#include "rigidpoints/linstat.hpp"
#include "rigidpoints/testfns.hpp"

namespace rigidpoints {

// Count estimator read off the outside points only:
//   raw = int Phi rho_1 dL - sum_{omega outside} Phi(omega),
// rounded to the nearest integer. The intensity integral is evaluated to
// relative 1e-6 by adaptive radial quadrature.
struct CountEstimate {
  double raw = 0.0;
  long long rounded = 0;
  double intensity_integral = 0.0;
  double eps = 0.0;
};

CountEstimate estimate_inside_count(std::span<const Complex> outside,
                                    const RadialTestFunction& bump,
                                    const KernelSpec& kernel);

// Constant one-point intensity (1/pi for both infinite ensembles).
CountEstimate estimate_inside_count(std::span<const Complex> outside,
                                    const RadialTestFunction& bump,
                                    double intensity = 1.0 / kPi);

// Sum estimator: the intensity term int theta rho_1 dL vanishes for any
// radial intensity (odd angular integrand), so raw = -sum theta(omega).
struct SumEstimate {
  Complex raw{0.0, 0.0};
  double eps = 0.0;
};

SumEstimate estimate_inside_sum(std::span<const Complex> outside,
                                const SumTestFunction& theta);

// Numerical check that int theta rho_1 dL is zero: polar quadrature of
// z * Psi(|z|) against a radial intensity.
Complex theta_intensity_integral(const SumTestFunction& theta,
                                 const std::function<double(double)>& rho1,
                                 int radial_nodes = 128,
                                 int angular_nodes = 256);

}  // namespace rigidpoints
