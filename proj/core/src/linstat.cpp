#include "rigidpoints/linstat.hpp"

#include <algorithm>
#include <cmath>

#include "rigidpoints/logdomain.hpp"
#include "rigidpoints/quadrature.hpp"

namespace rigidpoints {

KernelSpec KernelSpec::finite(int n) {
  if (n < 1) throw std::invalid_argument("KernelSpec: n must be >= 1");
  return KernelSpec(KernelModel::GinibreN, n);
}

KernelSpec KernelSpec::infinite() {
  return KernelSpec(KernelModel::GinibreInf, 0);
}

Complex KernelSpec::evaluate(Complex z, Complex w) const {
  const Complex u = z * std::conj(w);
  if (std::abs(u) > 700.0) {
    throw std::overflow_error("KernelSpec::evaluate: |z conj(w)| > 700");
  }
  if (model_ == KernelModel::GinibreInf) return std::exp(u);
  Complex term(1.0, 0.0);
  Complex acc(1.0, 0.0);
  for (int k = 1; k < n_; ++k) {
    term *= u / static_cast<double>(k);
    acc += term;
  }
  return acc;
}

double KernelSpec::diag_weighted(double r) const {
  if (model_ == KernelModel::GinibreInf) return 1.0;
  const double x = r * r;
  if (x == 0.0) return 1.0;
  // sum_{k<n} x^k e^{-x} / k!: start at the modal term and sweep both
  // ways so nothing underflows before it matters.
  const int k_star = std::clamp(static_cast<int>(x), 0, n_ - 1);
  const double log_mode = k_star * std::log(x) - x - log_factorial(k_star);
  double acc = 1.0;  // modal term, in units of exp(log_mode)
  double t = 1.0;
  for (int k = k_star + 1; k < n_; ++k) {
    t *= x / k;
    acc += t;
    if (t < 1e-18 * acc) break;
  }
  t = 1.0;
  for (int k = k_star; k >= 1; --k) {
    t *= k / x;
    acc += t;
    if (t < 1e-18 * acc) break;
  }
  return std::exp(log_mode) * acc;
}

double KernelSpec::expected_count_in_disk(double radius) const {
  const double breaks[] = {0.0, radius};
  return intensity_integral(
      *this, [](double) { return 1.0; }, breaks, 1e-10);
}

Complex linear_statistic(const PointConfiguration& config,
                         const std::function<Complex(Complex)>& f) {
  Complex acc(0.0, 0.0);
  for (const Complex& z : config.points()) {
    const Complex v = f(z);
    if (!is_finite(v)) {
      throw std::invalid_argument("linear_statistic: f not finite at a point");
    }
    acc += v;
  }
  return acc;
}

namespace {

std::vector<double> panel_edges(const RadialFunction& f, double r_max) {
  std::vector<double> edges{0.0};
  for (double b : f.breakpoints) {
    if (b > 0.0 && b < r_max) edges.push_back(b);
  }
  if (f.support_radius > 0.0 && f.support_radius < r_max) {
    edges.push_back(f.support_radius);
  }
  edges.push_back(r_max);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<double> merged_edges(const RadialFunction& f,
                                 const RadialFunction& g, double r_max) {
  std::vector<double> edges = panel_edges(f, r_max);
  const std::vector<double> ge = panel_edges(g, r_max);
  edges.insert(edges.end(), ge.begin(), ge.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

int term_count(const KernelSpec& kernel, double r_max) {
  if (kernel.model() == KernelModel::GinibreN) return kernel.n();
  const double x = r_max * r_max;
  return static_cast<int>(x + 12.0 * std::sqrt(x + 1.0) + 24.0);
}

Complex integrate_panels(const std::function<Complex(double)>& f,
                         std::span<const double> edges, int nodes) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    acc += integrate_complex(f, edges[i], edges[i + 1], nodes);
  }
  return acc;
}

struct CovarianceTerms {
  Complex direct;                 // int f conj(g) K(z,z) dgamma
  std::vector<Complex> moments_f;  // m_k = (1/k!) int f (z conj z)^k dgamma
  std::vector<Complex> moments_g;
};

CovarianceTerms covariance_terms(const KernelSpec& kernel,
                                 const RadialFunction& f,
                                 const RadialFunction& g,
                                 std::span<const double> edges, int n_terms,
                                 int nodes) {
  CovarianceTerms out;
  out.direct = 2.0 * integrate_panels(
                         [&](double r) {
                           return f.profile(r) * std::conj(g.profile(r)) *
                                  kernel.diag_weighted(r);
                         },
                         edges, nodes);
  auto moments = [&](const RadialFunction& fn) {
    std::vector<Complex> m(n_terms);
    for (int k = 0; k < n_terms; ++k) {
      const double lf = log_factorial(k);
      m[k] = 2.0 * integrate_panels(
                       [&](double r) {
                         if (r == 0.0) return Complex(0.0, 0.0);
                         const double w =
                             std::exp(2.0 * k * std::log(r) - r * r - lf);
                         return fn.profile(r) * w * r;
                       },
                       edges, nodes);
    }
    return m;
  };
  out.moments_f = moments(f);
  out.moments_g = moments(g);
  return out;
}

Complex combine(const CovarianceTerms& t) {
  Complex cross(0.0, 0.0);
  for (std::size_t k = 0; k < t.moments_f.size(); ++k) {
    cross += t.moments_f[k] * std::conj(t.moments_g[k]);
  }
  return t.direct - cross;
}

}  // namespace

CovarianceResult dpp_covariance(const KernelSpec& kernel,
                                const RadialFunction& f,
                                const RadialFunction& g,
                                const CovarianceQuadratureParams& params) {
  const double r_max =
      std::max(f.support_radius, g.support_radius) + params.pad;
  const std::vector<double> edges = merged_edges(f, g, r_max);
  const int n_terms = term_count(kernel, r_max);

  int nodes = params.radial_nodes;
  Complex prev =
      combine(covariance_terms(kernel, f, g, edges, n_terms, nodes));
  for (int d = 0; d < params.max_doublings; ++d) {
    nodes *= 2;
    const CovarianceTerms terms =
        covariance_terms(kernel, f, g, edges, n_terms, nodes);
    const Complex cur = combine(terms);
    const double err = std::abs(cur - prev);
    double scale = std::abs(cur);
    for (const Complex& m : terms.moments_f) {
      scale = std::max(scale, 1e-9 * std::abs(m));
    }
    scale = std::max(scale, 1e-9 * std::abs(terms.direct));
    if (err <= params.rel_tol * std::max(scale, 1e-300)) {
      return {cur, err};
    }
    prev = cur;
  }
  throw QuadratureNotConvergedError(
      "dpp_covariance: node doubling did not converge");
}

double dpp_variance(const KernelSpec& kernel, const RadialFunction& f,
                    const CovarianceQuadratureParams& params) {
  const CovarianceResult res = dpp_covariance(kernel, f, f, params);
  const double scale = std::max(std::abs(res.value), 1e-12);
  if (std::abs(res.value.imag()) > 1e-7 * scale) {
    throw std::logic_error("dpp_variance: non-real variance");
  }
  return res.value.real();
}

double intensity_integral(const KernelSpec& kernel,
                          const std::function<double(double)>& profile,
                          std::span<const double> breakpoints,
                          double rel_tol) {
  return integrate_adaptive(
      [&](double r) { return 2.0 * profile(r) * kernel.diag_weighted(r) * r; },
      breakpoints, rel_tol, 64);
}

}  // namespace rigidpoints
