#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rigidpoints/common.hpp"

namespace rigidpoints {

// Gauss-Legendre nodes and weights on [-1,1] (Golub-Welsch).
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const GaussLegendre& cached(int n);
};

// Nodes/weights mapped to [a,b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre_on(double a, double b, int n);

// Integral of f over [a,b] with n-node Gauss-Legendre.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int n);
Complex integrate_complex(const std::function<Complex(double)>& f, double a,
                          double b, int n);

// Piecewise integration with node doubling until |I(2n) - I(n)| <=
// rel_tol * max(|I(2n)|, abs_floor). Breakpoints let callers isolate
// kinks and narrow mollification windows so the panels stay smooth.
double integrate_adaptive(const std::function<double(double)>& f,
                          std::span<const double> breakpoints, double rel_tol,
                          int initial_nodes = 32, double abs_floor = 1e-300,
                          int max_doublings = 12);

// Polar tensor product over {r_i} x {theta_j} with combined weights
// w_ij = w_r(i) * w_theta(j) * r_i, for integrals against dL in polar
// coordinates over the annulus [r_lo, r_hi].
struct PolarGrid {
  std::vector<double> radii;
  std::vector<double> radial_weights;  // includes the Jacobian r
  std::vector<double> angles;
  std::vector<double> angle_weights;

  PolarGrid(double r_lo, double r_hi, int n_radial, int n_angular);

  // Sum of f(z) over the grid against dL.
  Complex integrate(const std::function<Complex(Complex)>& f) const;
};

}  // namespace rigidpoints
