#include "rigidpoints/testfns.hpp"

#include <cmath>

#include "rigidpoints/quadrature.hpp"

namespace rigidpoints {

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep_d1(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = t * (1.0 - t);
  return 30.0 * u * u;
}

double smoothstep_d2(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
}

RadialTestFunction::RadialTestFunction(double r0, double eps, double h_fraction)
    : r0_(r0), eps_(eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw InvalidEpsError("RadialTestFunction: eps must be in (0,1)");
  }
  if (!(r0 > 0.0)) {
    throw std::invalid_argument("RadialTestFunction: r0 must be positive");
  }
  h_ = h_fraction * r0;
  r1_ = r0 * std::exp(1.0 / eps);
  if (4.0 * h_ >= r1_ - r0_) {
    throw std::invalid_argument("RadialTestFunction: blend windows overlap");
  }
}

double RadialTestFunction::value_radial(double r) const {
  if (r <= r0_) return 1.0;
  if (r >= r1_) return 0.0;
  const double ramp = 1.0 - eps_ * std::log(r / r0_);
  if (r < r0_ + 2.0 * h_) {
    const double s = smoothstep((r - r0_) / (2.0 * h_));
    return 1.0 + (ramp - 1.0) * s;
  }
  if (r > r1_ - 2.0 * h_) {
    const double s = smoothstep((r - (r1_ - 2.0 * h_)) / (2.0 * h_));
    return ramp * (1.0 - s);
  }
  return ramp;
}

double RadialTestFunction::derivative_radial(double r) const {
  if (r <= r0_ || r >= r1_) return 0.0;
  const double ramp = 1.0 - eps_ * std::log(r / r0_);
  const double dramp = -eps_ / r;
  if (r < r0_ + 2.0 * h_) {
    const double t = (r - r0_) / (2.0 * h_);
    return dramp * smoothstep(t) +
           (ramp - 1.0) * smoothstep_d1(t) / (2.0 * h_);
  }
  if (r > r1_ - 2.0 * h_) {
    const double t = (r - (r1_ - 2.0 * h_)) / (2.0 * h_);
    return dramp * (1.0 - smoothstep(t)) -
           ramp * smoothstep_d1(t) / (2.0 * h_);
  }
  return dramp;
}

double RadialTestFunction::second_derivative_radial(double r) const {
  if (r <= r0_ || r >= r1_) return 0.0;
  const double ramp = 1.0 - eps_ * std::log(r / r0_);
  const double dramp = -eps_ / r;
  const double ddramp = eps_ / (r * r);
  if (r < r0_ + 2.0 * h_) {
    const double w = 2.0 * h_;
    const double t = (r - r0_) / w;
    return ddramp * smoothstep(t) + 2.0 * dramp * smoothstep_d1(t) / w +
           (ramp - 1.0) * smoothstep_d2(t) / (w * w);
  }
  if (r > r1_ - 2.0 * h_) {
    const double w = 2.0 * h_;
    const double t = (r - (r1_ - 2.0 * h_)) / w;
    return ddramp * (1.0 - smoothstep(t)) -
           2.0 * dramp * smoothstep_d1(t) / w -
           ramp * smoothstep_d2(t) / (w * w);
  }
  return ddramp;
}

double RadialTestFunction::laplacian(Complex z) const {
  const double r = std::abs(z);
  if (r <= r0_ || r >= r1_) return 0.0;
  return second_derivative_radial(r) + derivative_radial(r) / r;
}

double RadialTestFunction::gradient_energy(int nodes_per_piece) const {
  auto integrand = [&](double r) {
    const double d = derivative_radial(r);
    return d * d * r;
  };
  double acc = 0.0;
  const double pieces[] = {r0_, r0_ + 2.0 * h_, r1_ - 2.0 * h_, r1_};
  for (int i = 0; i < 3; ++i) {
    acc += integrate(integrand, pieces[i], pieces[i + 1], nodes_per_piece);
  }
  return kTwoPi * acc;
}

RadialTestFunction build_bump(double r0, double eps) {
  return RadialTestFunction(r0, eps);
}

Complex SumTestFunction::laplacian(Complex z) const {
  const double r = std::abs(z);
  if (r <= 0.0 || r >= bump_.support_radius()) return Complex(0.0, 0.0);
  return z * (bump_.second_derivative_radial(r) +
              3.0 * bump_.derivative_radial(r) / r);
}

SumTestFunction build_theta(RadialTestFunction bump) {
  return SumTestFunction(std::move(bump));
}

PartitionOfUnity::PartitionOfUnity(double r0, int j_max)
    : r0_(r0), j_max_(j_max) {
  if (!(r0 > 0.0)) {
    throw std::invalid_argument("PartitionOfUnity: r0 must be positive");
  }
  if (j_max < 1) {
    throw std::invalid_argument("PartitionOfUnity: j_max must be >= 1");
  }
}

double PartitionOfUnity::coverage_radius(int j) const {
  return std::ldexp(r0_, j + 1);
}

double PartitionOfUnity::phi(double r) const {
  if (r <= r0_ || r >= 3.0 * r0_) return 0.0;
  if (r < 1.5 * r0_) return smoothstep((r - r0_) / (0.5 * r0_));
  if (r <= 2.0 * r0_) return 1.0;
  return 1.0 - smoothstep((r - 2.0 * r0_) / r0_);
}

double PartitionOfUnity::phi_tilde(double r) const {
  if (r < r0_ || r >= 3.0 * r0_) return 0.0;
  if (r <= 2.0 * r0_) return 1.0;
  return phi(r);
}

double PartitionOfUnity::phi_scaled(double r, int j) const {
  return phi(std::ldexp(r, -j));
}

double PartitionOfUnity::partition_sum(double r, int j_upper) const {
  double acc = phi_tilde(r);
  for (int j = 1; j <= j_upper; ++j) acc += phi_scaled(r, j);
  return acc;
}

PartitionOfUnity build_partition(double r0, int j_max) {
  return PartitionOfUnity(r0, j_max);
}

}  // namespace rigidpoints
