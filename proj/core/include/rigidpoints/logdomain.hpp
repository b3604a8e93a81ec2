#pragma once

#include <span>
#include <vector>

#include "rigidpoints/common.hpp"

namespace rigidpoints {

// log(e^a + e^b), tolerant of -inf inputs.
double log_add(double a, double b);
double log_sum_exp(std::span<const double> logs);

double log_factorial(int k);
double log_binomial(int n, int k);

// log of the falling factorial (x)_k = x(x-1)...(x-k+1), (x)_0 = 1.
// Requires x >= k >= 0 (integer arguments, as used by the symmetric
// function normalizers (n)_k = C(n,k) k!).
double log_falling_factorial(int x, int k);

// Complex value stored as log-magnitude plus unit phase. Used where
// products of hundreds of factors (Vandermonde, sigma normalizers) would
// overflow doubles.
struct LogComplex {
  double log_abs;   // -inf encodes exact zero
  Complex phase;    // modulus 1 (arbitrary when log_abs == -inf)

  static LogComplex zero();
  static LogComplex one();
  static LogComplex from(Complex z);

  LogComplex mul(const LogComplex& o) const;
  LogComplex div(const LogComplex& o) const;
  Complex value() const;  // may overflow/underflow by design of the caller
};

// Sum of log-domain complex terms via max-shift; exact up to rounding.
LogComplex log_complex_sum(std::span<const LogComplex> terms);

}  // namespace rigidpoints
