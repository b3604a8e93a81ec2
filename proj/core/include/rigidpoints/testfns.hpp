#pragma once

#include "rigidpoints/common.hpp"

namespace rigidpoints {

// Quintic smoothstep and derivatives; C^2 at both endpoints.
double smoothstep(double t);
double smoothstep_d1(double t);
double smoothstep_d2(double t);

// Radial C^2 bump: identically 1 on [0, r0], identically 0 beyond
// r0 * exp(1/eps), and equal to the logarithmic ramp
//   1 - eps * log(r / r0)
// in between, except for two C^2 blend windows of width 2h at the joins.
// |psi'(r)| = eps/r on the pure ramp; the joins keep |psi'| within a
// small factor of that but necessarily exceed the eps/r^2 second
// derivative envelope on a window of width O(h) (smoothing a slope jump
// of size eps/r0 over width h costs a second derivative of eps/(r0 h)).
class RadialTestFunction {
 public:
  RadialTestFunction(double r0, double eps, double h_fraction = 0.01);

  double r0() const { return r0_; }
  double eps() const { return eps_; }
  double h() const { return h_; }
  double support_radius() const { return r1_; }
  double inner_join_end() const { return r0_ + 2.0 * h_; }
  double outer_join_begin() const { return r1_ - 2.0 * h_; }

  double value_radial(double r) const;
  double derivative_radial(double r) const;
  double second_derivative_radial(double r) const;

  double value(Complex z) const { return value_radial(std::abs(z)); }
  double gradient_norm(Complex z) const {
    return std::abs(derivative_radial(std::abs(z)));
  }
  // 2-D Laplacian of the radial extension: psi'' + psi'/r.
  double laplacian(Complex z) const;

  // 2 pi integral of psi'(r)^2 r dr; equals 2*pi*eps up to the blend
  // windows (pure-ramp value of the gradient energy).
  double gradient_energy(int nodes_per_piece = 256) const;

 private:
  double r0_, eps_, h_, r1_;
};

RadialTestFunction build_bump(double r0, double eps);

// theta(z) = z * psi(z): equals z on the disk, vanishes outside the bump
// support. For radial psi, Laplacian(theta) = z * (psi'' + 3 psi'/r).
class SumTestFunction {
 public:
  explicit SumTestFunction(RadialTestFunction bump) : bump_(std::move(bump)) {}

  const RadialTestFunction& bump() const { return bump_; }
  Complex value(Complex z) const { return z * bump_.value(z); }
  Complex laplacian(Complex z) const;

 private:
  RadialTestFunction bump_;
};

SumTestFunction build_theta(RadialTestFunction bump);

// Dyadic partition of unity on the exterior of the disk of radius r0:
// phi is supported on [r0, 3 r0], equal to 1 on [1.5 r0, 2 r0], with
// ascent twice as fast as descent (phi(r0 + x) = 1 - phi(2 r0 + 2x) for
// 0 <= x <= r0/2); phi_tilde caps the first annulus at 1. Then
//   phi_tilde(|z|) + sum_{j=1..J} phi(|z| / 2^j) = 1
// for r0 < |z| <= 2^{J+1} r0.
class PartitionOfUnity {
 public:
  PartitionOfUnity(double r0, int j_max = 20);

  double r0() const { return r0_; }
  int j_max() const { return j_max_; }
  // Radii in (r0, coverage_radius(J)] sum to exactly one through scale J.
  double coverage_radius(int j) const;

  double phi(double r) const;
  double phi_tilde(double r) const;
  double phi_scaled(double r, int j) const;  // phi(r / 2^j)
  double partition_sum(double r, int j_upper) const;

 private:
  double r0_;
  int j_max_;
};

PartitionOfUnity build_partition(double r0, int j_max);

}  // namespace rigidpoints
