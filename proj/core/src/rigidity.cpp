#include "rigidpoints/rigidity.hpp"

#include <cmath>

#include "rigidpoints/quadrature.hpp"

namespace rigidpoints {

namespace {

std::vector<double> bump_breakpoints(const RadialTestFunction& bump) {
  return {0.0, bump.r0(), bump.inner_join_end(), bump.outer_join_begin(),
          bump.support_radius()};
}

CountEstimate finish_count(double integral, std::span<const Complex> outside,
                           const RadialTestFunction& bump) {
  double sum_outside = 0.0;
  for (const Complex& w : outside) sum_outside += bump.value(w);
  CountEstimate est;
  est.intensity_integral = integral;
  est.raw = integral - sum_outside;
  est.rounded = std::llround(est.raw);
  est.eps = bump.eps();
  return est;
}

}  // namespace

CountEstimate estimate_inside_count(std::span<const Complex> outside,
                                    const RadialTestFunction& bump,
                                    const KernelSpec& kernel) {
  const std::vector<double> breaks = bump_breakpoints(bump);
  const double integral = intensity_integral(
      kernel, [&](double r) { return bump.value_radial(r); }, breaks, 1e-6);
  return finish_count(integral, outside, bump);
}

CountEstimate estimate_inside_count(std::span<const Complex> outside,
                                    const RadialTestFunction& bump,
                                    double intensity) {
  const std::vector<double> breaks = bump_breakpoints(bump);
  const double integral =
      intensity * kTwoPi *
      integrate_adaptive(
          [&](double r) { return bump.value_radial(r) * r; }, breaks, 1e-6, 64);
  return finish_count(integral, outside, bump);
}

SumEstimate estimate_inside_sum(std::span<const Complex> outside,
                                const SumTestFunction& theta) {
  Complex acc(0.0, 0.0);
  for (const Complex& w : outside) acc += theta.value(w);
  SumEstimate est;
  est.raw = -acc;
  est.eps = theta.bump().eps();
  return est;
}

Complex theta_intensity_integral(const SumTestFunction& theta,
                                 const std::function<double(double)>& rho1,
                                 int radial_nodes, int angular_nodes) {
  const PolarGrid grid(0.0, theta.bump().support_radius(), radial_nodes,
                       angular_nodes);
  return grid.integrate(
      [&](Complex z) { return theta.value(z) * rho1(std::abs(z)); });
}

}  // namespace rigidpoints
