#include "rigidpoints/samplers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rigidpoints/logdomain.hpp"

namespace rigidpoints {

namespace {

// Positive root of |c_n| x^n = sum_{k<n} |c_k| x^k, by bisection on the
// (increasing) log difference. Tight enough as a starting circle even for
// wildly graded coefficients like xi_k / sqrt(k!).
double cauchy_root_bound(std::span<const Complex> c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<double> log_abs(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double a = std::abs(c[k]);
    log_abs[k] = (a == 0.0) ? -std::numeric_limits<double>::infinity()
                            : std::log(a);
  }
  auto g = [&](double log_x) {
    std::vector<double> terms(n);
    for (int k = 0; k < n; ++k) terms[k] = log_abs[k] + k * log_x;
    return log_abs[n] + n * log_x - log_sum_exp(terms);
  };
  double lo = -30.0, hi = 1.0;
  while (g(hi) < 0.0 && hi < 700.0) hi += 1.0;
  while (g(lo) > 0.0 && lo > -700.0) lo -= 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-12) break;
  }
  return std::exp(0.5 * (lo + hi));
}

struct Derivatives {
  Complex p;
  Complex dp;
};

Derivatives horner_with_derivative(std::span<const Complex> c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex p = c[n];
  Complex dp(0.0, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

}  // namespace

HornerResult horner_with_scale(std::span<const Complex> c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex p = c[n];
  double s = std::abs(c[n]);
  const double az = std::abs(z);
  for (int k = n - 1; k >= 0; --k) {
    p = p * z + c[k];
    s = s * az + std::abs(c[k]);
  }
  return {p, s};
}

std::vector<Complex> aberth_roots(std::span<const Complex> coefficients,
                                  double tol, int max_iters) {
  const int n = static_cast<int>(coefficients.size()) - 1;
  if (n < 1) throw std::invalid_argument("aberth_roots: degree must be >= 1");
  if (coefficients[n] == Complex(0.0, 0.0)) {
    throw std::invalid_argument("aberth_roots: zero leading coefficient");
  }
  const double radius = cauchy_root_bound(coefficients);

  // Golden-angle spacing avoids symmetric starting configurations that
  // would stall on symmetric polynomials; the extra irrational offset
  // keeps guesses off the real axis.
  constexpr double kGoldenAngle = 2.399963229728653;
  constexpr double kOffset = 0.70710678118654752;
  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i) {
    z[i] = std::polar(radius, kOffset + kGoldenAngle * i);
  }

  for (int iter = 0; iter < max_iters; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto [p, dp] = horner_with_derivative(coefficients, z[i]);
      if (p == Complex(0.0, 0.0)) continue;
      Complex newton;
      if (dp == Complex(0.0, 0.0)) {
        newton = Complex(tol * (1.0 + std::abs(z[i])), 0.0);
      } else {
        newton = p / dp;
      }
      Complex repulsion(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const Complex d = z[i] - z[j];
        if (d == Complex(0.0, 0.0)) continue;
        repulsion += 1.0 / d;
      }
      const Complex denom = Complex(1.0, 0.0) - newton * repulsion;
      const Complex w = (denom == Complex(0.0, 0.0)) ? newton : newton / denom;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
    }
    if (worst <= tol) {
      // One Newton polish pass; settles pairs that converged to the same
      // cluster from opposite sides.
      for (int i = 0; i < n; ++i) {
        const auto [p, dp] = horner_with_derivative(coefficients, z[i]);
        if (dp != Complex(0.0, 0.0)) z[i] -= p / dp;
      }
      return z;
    }
  }
  throw RootFindingError("aberth_roots: residual criterion not met");
}

std::vector<Complex> GafSample::coefficients() const {
  std::vector<Complex> c(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) {
    c[k] = xi[k] * std::exp(-0.5 * log_factorial(static_cast<int>(k)));
  }
  return c;
}

GafSample sample_gaf(int n, RngState& rng, int cap) {
  if (n < 1 || n > cap) {
    throw std::invalid_argument("sample_gaf: degree out of range");
  }
  GafSample sample;
  sample.n = n;
  sample.seed = rng.seed();
  sample.stream = rng.stream();
  sample.xi.resize(n + 1);
  for (auto& x : sample.xi) x = rng.next_complex_gaussian();

  const std::vector<Complex> c = sample.coefficients();
  if (std::abs(c[n]) < std::numeric_limits<double>::min()) {
    throw LeadingCoefficientUnderflowError(
        "sample_gaf: |xi_n|/sqrt(n!) underflowed");
  }
  std::vector<Complex> roots = aberth_roots(c);

  double max_rel = 0.0;
  for (const Complex& r : roots) {
    const HornerResult h = horner_with_scale(c, r);
    if (h.magnitude_scale > 0.0) {
      max_rel = std::max(max_rel, std::abs(h.value) / h.magnitude_scale);
    }
  }
  sample.max_rel_residual = max_rel;
  if (max_rel > 1e-8) {
    throw RootFindingError("sample_gaf: residual criterion not met");
  }
  sample.roots = PointConfiguration(std::move(roots));
  return sample;
}

GinibreSample sample_ginibre_eigen(int n, RngState& rng, int cap) {
  if (n < 1 || n > cap) {
    throw std::invalid_argument("sample_ginibre_eigen: n out of range");
  }
  GinibreSample sample;
  sample.n = n;
  sample.seed = rng.seed();
  sample.stream = rng.stream();
  sample.method = "eigen";

  Eigen::MatrixXcd M(n, n);
  // Column-major fill order is part of the determinism contract.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      M(i, j) = rng.next_complex_gaussian();
    }
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
  if (solver.info() != Eigen::Success) {
    throw NoConvergenceError("sample_ginibre_eigen: QR iteration failed");
  }

  std::vector<Complex> eigenvalues(n);
  Complex sum(0.0, 0.0);
  LogComplex prod = LogComplex::one();
  for (int i = 0; i < n; ++i) {
    eigenvalues[i] = solver.eigenvalues()(i);
    sum += eigenvalues[i];
    prod = prod.mul(LogComplex::from(eigenvalues[i]));
  }

  const Complex trace = M.trace();
  sample.trace_rel_err = std::abs(sum - trace) / std::max(1.0, std::abs(trace));

  // Determinant through LU, compared in log form to dodge overflow.
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  LogComplex det = LogComplex::from(
      Complex(static_cast<double>(lu.permutationP().determinant()), 0.0));
  for (int i = 0; i < n; ++i) {
    det = det.mul(LogComplex::from(lu.matrixLU()(i, i)));
  }
  sample.det_rel_err = std::abs(prod.div(det).value() - Complex(1.0, 0.0));

  sample.eigenvalues = PointConfiguration(std::move(eigenvalues));
  return sample;
}

GinibreSample sample_ginibre_mcmc_oracle(int n, long steps, RngState& rng) {
  if (n < 1 || n > 16) {
    throw std::invalid_argument("sample_ginibre_mcmc_oracle: oracle is n <= 16");
  }
  if (steps < 10000L * n) {
    throw std::invalid_argument("sample_ginibre_mcmc_oracle: steps < 1e4 * n");
  }

  std::vector<Complex> state(n);
  for (auto& z : state) z = rng.next_complex_gaussian();

  auto log_weight_of = [&](const std::vector<Complex>& pts, int i) {
    // Terms of the log density touching coordinate i.
    double acc = -std::norm(pts[i]);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(pts[i] - pts[j]);
      if (d < kCoincidenceTol) {
        throw DegenerateStateError("mcmc oracle: coincident coordinates");
      }
      acc += 2.0 * std::log(d);
    }
    return acc;
  };

  double step_size = 1.0;
  const long tune_until = steps / 5;
  long accepted = 0, counted = 0;
  long tune_accepted = 0, tune_window = 0;
  for (long t = 0; t < steps; ++t) {
    const int i = static_cast<int>(rng.next_u64() % static_cast<unsigned>(n));
    const Complex old = state[i];
    const double before = log_weight_of(state, i);
    state[i] = old + step_size * rng.next_complex_gaussian();
    const double after = log_weight_of(state, i);
    const double log_ratio = after - before;
    bool accept = log_ratio >= 0.0;
    if (!accept) accept = std::log(rng.next_double_open()) < log_ratio;
    if (!accept) state[i] = old;

    if (t < tune_until) {
      tune_accepted += accept;
      if (++tune_window == 200) {
        const double rate = tune_accepted / 200.0;
        if (rate < 0.2) step_size *= 0.8;
        if (rate > 0.5) step_size *= 1.25;
        tune_accepted = 0;
        tune_window = 0;
      }
    } else {
      accepted += accept;
      ++counted;
    }
  }

  GinibreSample sample;
  sample.n = n;
  sample.seed = rng.seed();
  sample.stream = rng.stream();
  sample.method = "mcmc-oracle";
  sample.acceptance = counted > 0 ? static_cast<double>(accepted) / counted : 0.0;
  sample.eigenvalues = PointConfiguration(std::move(state));
  return sample;
}

}  // namespace rigidpoints
