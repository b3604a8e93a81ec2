#include "rigidpoints/logdomain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rigidpoints {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double log_sum_exp(std::span<const double> logs) {
  double m = kNegInf;
  for (double v : logs) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - m);
  return m + std::log(acc);
}

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_falling_factorial(int x, int k) {
  if (k == 0) return 0.0;
  if (k < 0 || x < k) {
    throw std::invalid_argument("log_falling_factorial: need x >= k >= 0");
  }
  return std::lgamma(static_cast<double>(x) + 1.0) -
         std::lgamma(static_cast<double>(x - k) + 1.0);
}

LogComplex LogComplex::zero() { return {kNegInf, Complex(1.0, 0.0)}; }
LogComplex LogComplex::one() { return {0.0, Complex(1.0, 0.0)}; }

LogComplex LogComplex::from(Complex z) {
  const double a = std::abs(z);
  if (a == 0.0) return zero();
  return {std::log(a), z / a};
}

LogComplex LogComplex::mul(const LogComplex& o) const {
  if (log_abs == kNegInf || o.log_abs == kNegInf) return zero();
  return {log_abs + o.log_abs, phase * o.phase};
}

LogComplex LogComplex::div(const LogComplex& o) const {
  return {log_abs - o.log_abs, phase / o.phase};
}

Complex LogComplex::value() const {
  if (log_abs == kNegInf) return Complex(0.0, 0.0);
  return std::exp(log_abs) * phase;
}

LogComplex log_complex_sum(std::span<const LogComplex> terms) {
  double m = kNegInf;
  for (const auto& t : terms) m = std::max(m, t.log_abs);
  if (m == kNegInf) return LogComplex::zero();
  Complex acc(0.0, 0.0);
  for (const auto& t : terms) {
    if (t.log_abs == kNegInf) continue;
    acc += std::exp(t.log_abs - m) * t.phase;
  }
  const double a = std::abs(acc);
  if (a == 0.0) return LogComplex::zero();
  return {m + std::log(a), acc / a};
}

}  // namespace rigidpoints
