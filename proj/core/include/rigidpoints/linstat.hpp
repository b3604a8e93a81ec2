#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rigidpoints/geometry.hpp"

namespace rigidpoints {

enum class KernelModel { GinibreN, GinibreInf };

// Determinantal kernel against the background measure
// d(gamma)(z) = e^{-|z|^2} / pi dL(z). The finite model uses the n-term
// truncation of e^{z conj(w)}.
class KernelSpec {
 public:
  static KernelSpec finite(int n);
  static KernelSpec infinite();

  KernelModel model() const { return model_; }
  int n() const { return n_; }

  // K(z, w); guarded against overflow for |z conj(w)| > 700.
  Complex evaluate(Complex z, Complex w) const;

  // K(z, z) e^{-|z|^2}; evaluated as a scaled Poisson-weight sum so it
  // stays finite for radii far beyond exp-underflow range.
  double diag_weighted(double r) const;

  // One-point intensity with respect to Lebesgue measure.
  double intensity(double r) const { return diag_weighted(r) / kPi; }

  // Expected number of points in the centered disk of the given radius.
  double expected_count_in_disk(double radius) const;

 private:
  KernelSpec(KernelModel model, int n) : model_(model), n_(n) {}
  KernelModel model_;
  int n_;
};

// Exact sum of f over the configuration points.
Complex linear_statistic(const PointConfiguration& config,
                         const std::function<Complex(Complex)>& f);

// Radial test function handed to the covariance quadrature: a profile
// f(r) (complex-valued), its support radius, and interior breakpoints at
// kinks or blend joins so integration panels stay smooth.
struct RadialFunction {
  std::function<Complex(double)> profile;
  double support_radius = 0.0;
  std::vector<double> breakpoints;  // interior radii, strictly increasing
};

struct CovarianceQuadratureParams {
  int radial_nodes = 128;   // per panel, before doubling
  int angular_nodes = 256;  // used by the full polar checks
  double pad = 6.0;         // quadrature truncation beyond the supports
  double rel_tol = 1e-6;
  int max_doublings = 6;
};

struct CovarianceResult {
  Complex value{0.0, 0.0};
  double quad_error_estimate = 0.0;
};

// Cov[ int f d(Pi), int g d(Pi) ] for radial f, g:
//   (1/2) iint (f(z)-f(w)) conj(g(z)-g(w)) |K(z,w)|^2 dgamma dgamma.
// Radial symmetry collapses the double integral: the angular average of
// |K(z,w)|^2 keeps only the diagonal kernel terms, so the cross term is
// a sum of products of scaled radial moments m_k = M_k / k!. Grid
// doubling on the radial nodes supplies the error estimate.
CovarianceResult dpp_covariance(
    const KernelSpec& kernel, const RadialFunction& f, const RadialFunction& g,
    const CovarianceQuadratureParams& params = {});

// Real-valued variance for f = g; throws if the imaginary part is not
// numerically zero.
double dpp_variance(const KernelSpec& kernel, const RadialFunction& f,
                    const CovarianceQuadratureParams& params = {});

// Adaptive radial integral of profile(r) * rho_1(r) over the plane:
// 2 int profile(r) K(r,r) e^{-r^2} r dr.
double intensity_integral(const KernelSpec& kernel,
                          const std::function<double(double)>& profile,
                          std::span<const double> breakpoints,
                          double rel_tol = 1e-6);

}  // namespace rigidpoints
