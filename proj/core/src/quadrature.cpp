#include "rigidpoints/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace rigidpoints {

namespace {

GaussLegendre build_gauss_legendre(int n) {
  // Golub-Welsch: eigenvalues of the symmetric tridiagonal Jacobi matrix
  // are the nodes; weights come from the first eigenvector components.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gl.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    gl.weights[i] = 2.0 * v0 * v0;
  }
  return gl;
}

}  // namespace

const GaussLegendre& GaussLegendre::cached(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

QuadratureRule gauss_legendre_on(double a, double b, int n) {
  const GaussLegendre& gl = GaussLegendre::cached(n);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * gl.nodes[i];
    rule.weights[i] = half * gl.weights[i];
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int n) {
  const QuadratureRule rule = gauss_legendre_on(a, b, n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

Complex integrate_complex(const std::function<Complex(double)>& f, double a,
                          double b, int n) {
  const QuadratureRule rule = gauss_legendre_on(a, b, n);
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

double integrate_adaptive(const std::function<double(double)>& f,
                          std::span<const double> breakpoints, double rel_tol,
                          int initial_nodes, double abs_floor,
                          int max_doublings) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("integrate_adaptive: need >= 2 breakpoints");
  }
  auto eval = [&](int n) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      acc += integrate(f, breakpoints[i], breakpoints[i + 1], n);
    }
    return acc;
  };
  int n = initial_nodes;
  double prev = eval(n);
  for (int d = 0; d < max_doublings; ++d) {
    n *= 2;
    const double cur = eval(n);
    const double scale = std::max(std::abs(cur), abs_floor);
    if (std::abs(cur - prev) <= rel_tol * scale) return cur;
    prev = cur;
  }
  throw QuadratureNotConvergedError(
      "integrate_adaptive: node doubling did not converge");
}

PolarGrid::PolarGrid(double r_lo, double r_hi, int n_radial, int n_angular) {
  const QuadratureRule radial = gauss_legendre_on(r_lo, r_hi, n_radial);
  radii = radial.nodes;
  radial_weights.resize(n_radial);
  for (int i = 0; i < n_radial; ++i) {
    radial_weights[i] = radial.weights[i] * radii[i];
  }
  // Periodic trapezoid in the angle: spectrally accurate for smooth
  // 2pi-periodic integrands.
  angles.resize(n_angular);
  angle_weights.assign(n_angular, kTwoPi / n_angular);
  for (int j = 0; j < n_angular; ++j) angles[j] = kTwoPi * j / n_angular;
}

Complex PolarGrid::integrate(const std::function<Complex(Complex)>& f) const {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    Complex ring(0.0, 0.0);
    for (std::size_t j = 0; j < angles.size(); ++j) {
      const Complex z = std::polar(radii[i], angles[j]);
      ring += angle_weights[j] * f(z);
    }
    acc += radial_weights[i] * ring;
  }
  return acc;
}

}  // namespace rigidpoints
