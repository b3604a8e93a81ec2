#include "rigidpoints/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rigidpoints {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::vector<Complex> elementary_symmetric(std::span<const Complex> points) {
  std::vector<Complex> sigma(points.size() + 1, Complex(0.0, 0.0));
  sigma[0] = Complex(1.0, 0.0);
  std::size_t used = 0;
  for (const Complex& v : points) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) {
      sigma[k] += v * sigma[k - 1];
    }
  }
  return sigma;
}

double vandermonde_log_abs(std::span<const Complex> points) {
  double acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = std::abs(points[i] - points[j]);
      if (d == 0.0) return kNegInf;
      acc += std::log(d);
    }
  }
  return acc;
}

SymmetricProfile symmetric_profile(std::span<const Complex> points) {
  SymmetricProfile prof;
  prof.points.assign(points.begin(), points.end());
  prof.sigma = elementary_symmetric(points);
  prof.log_abs_vandermonde = vandermonde_log_abs(points);
  return prof;
}

std::vector<Complex> g_expansion(std::span<const Complex> sigma_inside,
                                 int k_max) {
  if (sigma_inside.empty() || sigma_inside[0] != Complex(1.0, 0.0)) {
    throw std::invalid_argument("g_expansion: sigma sequence must start at 1");
  }
  const int m = static_cast<int>(sigma_inside.size()) - 1;
  std::vector<Complex> g(static_cast<std::size_t>(k_max) + 1, Complex(0.0, 0.0));
  g[0] = Complex(1.0, 0.0);
  for (int r = 1; r <= k_max; ++r) {
    Complex acc(0.0, 0.0);
    const int top = std::min(r, m);
    for (int i = 1; i <= top; ++i) {
      acc += sigma_inside[i] * g[r - i];
    }
    g[r] = -acc;
  }
  return g;
}

GafDenominator gaf_denominator(std::span<const Complex> sigma_joint, int n) {
  if (static_cast<int>(sigma_joint.size()) != n + 1) {
    throw std::invalid_argument("gaf_denominator: need n + 1 sigma entries");
  }
  std::vector<double> log_terms(sigma_joint.size(), kNegInf);
  for (int k = 0; k <= n; ++k) {
    const double a = std::abs(sigma_joint[k]);
    if (a == 0.0) continue;
    log_terms[k] = 2.0 * std::log(a) - log_falling_factorial(n, k);
  }
  const double log_d = log_sum_exp(log_terms);
  if (log_d == kNegInf) {
    throw AllZeroSigmaError("gaf_denominator: all terms vanished");
  }
  return {n, log_d};
}

GafRatioDiagnostics gaf_ratio_diagnostics(std::span<const Complex> inside,
                                          std::span<const Complex> outside,
                                          int n) {
  const int m = static_cast<int>(inside.size());
  if (m + static_cast<int>(outside.size()) != n) {
    throw std::invalid_argument("gaf_ratio_diagnostics: |inside| + |outside| != n");
  }
  GafRatioDiagnostics diag;
  diag.n = n;
  diag.m = m;
  if (m == 0) {
    diag.log_d = gaf_denominator(elementary_symmetric(outside), n).log_value;
    return diag;
  }

  std::vector<Complex> joint(inside.begin(), inside.end());
  joint.insert(joint.end(), outside.begin(), outside.end());
  const std::vector<Complex> sigma_joint = elementary_symmetric(joint);
  const std::vector<Complex> sigma_out = elementary_symmetric(outside);
  diag.log_d = gaf_denominator(sigma_joint, n).log_value;

  const int n_out = static_cast<int>(outside.size());
  auto sig_out = [&](int idx) -> Complex {
    if (idx < 0 || idx > n_out) return Complex(0.0, 0.0);
    return sigma_out[idx];
  };

  // |sum_k conj(a_k) b_k / (n)_k| in log form, for a, b drawn from the
  // joint/outside sigma sequences.
  auto mixed_log_abs = [&](auto&& a_at, auto&& b_at) {
    std::vector<LogComplex> terms;
    terms.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
      const Complex a = a_at(k);
      const Complex b = b_at(k);
      if (a == Complex(0.0, 0.0) || b == Complex(0.0, 0.0)) continue;
      LogComplex t = LogComplex::from(std::conj(a)).mul(LogComplex::from(b));
      t.log_abs -= log_falling_factorial(n, k);
      terms.push_back(t);
    }
    return log_complex_sum(terms).log_abs;
  };

  for (int i = 2; i <= m; ++i) {
    const double log_num = mixed_log_abs(
        [&](int k) { return sigma_joint[k]; },
        [&](int k) { return sig_out(k - i); });
    const double value =
        (log_num == kNegInf) ? 0.0 : std::exp(log_num - diag.log_d);
    diag.cross_times_n.push_back(n * value);
    diag.y_sum += n * value;
  }
  for (int i = 2; i <= m; ++i) {
    for (int j = 2; j <= m; ++j) {
      if (i == j) continue;
      const double log_num = mixed_log_abs(
          [&](int k) { return sig_out(k - i); },
          [&](int k) { return sig_out(k - j); });
      const double value =
          (log_num == kNegInf) ? 0.0 : std::exp(log_num - diag.log_d);
      diag.pair_indices.push_back({i, j});
      diag.pair_times_n.push_back(n * value);
      diag.y_sum += n * value;
    }
  }
  return diag;
}

Complex eta_diagnostic(std::span<const Complex> g, std::span<const Complex> xi,
                       int l) {
  Complex acc(0.0, 0.0);
  for (std::size_t r = 1; r < g.size(); ++r) {
    const std::size_t idx = static_cast<std::size_t>(l) + r;
    if (idx >= xi.size()) break;
    const double log_ff =
        log_falling_factorial(l + static_cast<int>(r), static_cast<int>(r));
    acc += g[r] * xi[idx] * std::exp(-0.5 * log_ff);
  }
  return acc;
}

}  // namespace rigidpoints
