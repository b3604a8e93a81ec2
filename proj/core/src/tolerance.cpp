#include "rigidpoints/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rigidpoints/symfun.hpp"

namespace rigidpoints {

ConditionalTarget ConditionalTarget::ginibre(const Disk& disk,
                                             std::vector<Complex> outside,
                                             int m) {
  if (m < 0) throw std::invalid_argument("ConditionalTarget: m < 0");
  ConditionalTarget t;
  t.model_ = Model::Ginibre;
  t.disk_ = disk;
  t.m_ = m;
  t.n_ = m + static_cast<int>(outside.size());
  t.outside_ = std::move(outside);
  return t;
}

ConditionalTarget ConditionalTarget::gaf(const Disk& disk, int n,
                                         std::vector<Complex> outside, int m,
                                         Complex s) {
  if (m + static_cast<int>(outside.size()) != n) {
    throw std::invalid_argument("ConditionalTarget: |outside| + m != n");
  }
  ConditionalTarget t;
  t.model_ = Model::Gaf;
  t.disk_ = disk;
  t.n_ = n;
  t.m_ = m;
  t.s_ = s;
  t.outside_ = std::move(outside);
  t.sigma_outside_ = elementary_symmetric(t.outside_);
  return t;
}

void ConditionalTarget::check_inside(std::span<const Complex> zeta) const {
  if (static_cast<int>(zeta.size()) != m_) {
    throw std::invalid_argument("ConditionalTarget: wrong inside count");
  }
  for (const Complex& z : zeta) {
    if (!disk_.contains(z)) {
      throw std::invalid_argument("ConditionalTarget: point outside the disk");
    }
  }
}

double ConditionalTarget::inside_vandermonde_term(
    std::span<const Complex> zeta, std::span<const Complex> zeta_prime) const {
  return 2.0 * (vandermonde_log_abs(zeta_prime) - vandermonde_log_abs(zeta));
}

double ConditionalTarget::cross_term_delta(
    std::span<const Complex> zeta, std::span<const Complex> zeta_prime) const {
  // 2 [ log|Gamma(zeta', omega)| - log|Gamma(zeta, omega)| ], the exact
  // outside product; the common prod |omega_j| factors cancel termwise.
  double acc = 0.0;
  for (const Complex& w : outside_) {
    for (int i = 0; i < m_; ++i) {
      acc += std::log(std::abs(zeta_prime[i] - w)) -
             std::log(std::abs(zeta[i] - w));
    }
  }
  return 2.0 * acc;
}

double ConditionalTarget::gaf_log_denominator(
    std::span<const Complex> zeta) const {
  // sigma(zeta, omega) from the cached sigma(omega) by multiplying in the
  // inside factors (1 + zeta_i t) one at a time.
  std::vector<Complex> sigma = sigma_outside_;
  sigma.resize(n_ + 1, Complex(0.0, 0.0));
  std::size_t filled = outside_.size();
  for (const Complex& z : zeta) {
    ++filled;
    for (std::size_t k = filled; k >= 1; --k) {
      sigma[k] += z * sigma[k - 1];
    }
  }
  return gaf_denominator(sigma, n_).log_value;
}

double ConditionalTarget::log_ratio(std::span<const Complex> zeta,
                                    std::span<const Complex> zeta_prime) const {
  check_inside(zeta);
  check_inside(zeta_prime);
  if (model_ == Model::Ginibre) {
    double gauss = 0.0;
    for (int i = 0; i < m_; ++i) {
      gauss += std::norm(zeta[i]) - std::norm(zeta_prime[i]);
    }
    return inside_vandermonde_term(zeta, zeta_prime) +
           cross_term_delta(zeta, zeta_prime) + gauss;
  }
  const Complex s1 = std::accumulate(zeta.begin(), zeta.end(), Complex{});
  const Complex s1p =
      std::accumulate(zeta_prime.begin(), zeta_prime.end(), Complex{});
  if (std::abs(s1p - s1) > 1e-12) {
    throw SumMismatchError("gaf log_ratio: sigma_1 mismatch");
  }
  return inside_vandermonde_term(zeta, zeta_prime) +
         cross_term_delta(zeta, zeta_prime) +
         (n_ + 1) * (gaf_log_denominator(zeta) - gaf_log_denominator(zeta_prime));
}

double ConditionalTarget::log_density_unnormalized(
    std::span<const Complex> zeta) const {
  check_inside(zeta);
  double cross = 0.0;
  for (const Complex& w : outside_) {
    for (const Complex& z : zeta) {
      cross += std::log(std::abs(z - w));
    }
  }
  const double vdm = 2.0 * (vandermonde_log_abs(zeta) + cross);
  if (model_ == Model::Ginibre) {
    double gauss = 0.0;
    for (const Complex& z : zeta) gauss += std::norm(z);
    return vdm - gauss;
  }
  return vdm - (n_ + 1) * gaf_log_denominator(zeta);
}

double ConditionalTarget::log_ratio_truncated(
    std::span<const Complex> zeta, std::span<const Complex> zeta_prime,
    double truncation_radius) const {
  if (model_ != Model::Ginibre) {
    throw std::invalid_argument("log_ratio_truncated: ginibre only");
  }
  check_inside(zeta);
  check_inside(zeta_prime);
  double near = 0.0;
  Complex far_s1(0.0, 0.0), far_s2(0.0, 0.0);
  for (const Complex& w : outside_) {
    if (std::abs(w) <= truncation_radius) {
      for (int i = 0; i < m_; ++i) {
        near += std::log(std::abs(zeta_prime[i] - w)) -
                std::log(std::abs(zeta[i] - w));
      }
    } else {
      const Complex inv = 1.0 / w;
      far_s1 += inv;
      far_s2 += inv * inv;
    }
  }
  // log|1 - z/w| = -Re(z/w) - Re((z/w)^2)/2 + O(|z/w|^3) per far point.
  double far = 0.0;
  for (int i = 0; i < m_; ++i) {
    far += -std::real((zeta_prime[i] - zeta[i]) * far_s1) -
           0.5 * std::real((zeta_prime[i] * zeta_prime[i] -
                            zeta[i] * zeta[i]) *
                           far_s2);
  }
  double gauss = 0.0;
  for (int i = 0; i < m_; ++i) {
    gauss += std::norm(zeta[i]) - std::norm(zeta_prime[i]);
  }
  return inside_vandermonde_term(zeta, zeta_prime) + 2.0 * (near + far) + gauss;
}

double ginibre_conditional_logratio(const ConditionalTarget& target,
                                    std::span<const Complex> zeta,
                                    std::span<const Complex> zeta_prime) {
  if (target.model() != ConditionalTarget::Model::Ginibre) {
    throw std::invalid_argument("ginibre_conditional_logratio: wrong model");
  }
  return target.log_ratio(zeta, zeta_prime);
}

double gaf_conditional_logratio(const ConditionalTarget& target,
                                std::span<const Complex> zeta,
                                std::span<const Complex> zeta_prime) {
  if (target.model() != ConditionalTarget::Model::Gaf) {
    throw std::invalid_argument("gaf_conditional_logratio: wrong model");
  }
  return target.log_ratio(zeta, zeta_prime);
}

namespace {

// Initial state: uniform points in the disk; gaf states are pulled back
// onto Sigma_s by a shift-and-retry loop.
std::vector<Complex> initial_state(const ConditionalTarget& target,
                                   RngState& rng) {
  const Disk& disk = target.disk();
  const int m = target.m();
  if (target.model() == ConditionalTarget::Model::Ginibre) {
    std::vector<Complex> state(m);
    for (auto& z : state) z = rng.next_in_disk(disk.center, disk.radius);
    return state;
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Complex> state(m);
    Complex sum(0.0, 0.0);
    for (auto& z : state) {
      z = rng.next_in_disk(disk.center, disk.radius * 0.9);
      sum += z;
    }
    const Complex shift = (target.conserved_sum() - sum) / double(m);
    bool ok = true;
    for (auto& z : state) {
      z += shift;
      ok = ok && disk.contains(z);
    }
    if (ok) return state;
  }
  throw std::runtime_error("mcmc_resample_inside: no valid initial state");
}

}  // namespace

ChainReport mcmc_resample_inside(const ConditionalTarget& target, long steps,
                                 RngState& rng, const McmcOptions& options) {
  const int m = target.m();
  if (m < 1) {
    throw std::invalid_argument("mcmc_resample_inside: m must be >= 1");
  }
  const bool gaf = target.model() == ConditionalTarget::Model::Gaf;
  if (gaf && m < 2) {
    // Sigma_s is a single point when m = 1: the inside point is rigid.
    throw std::invalid_argument(
        "mcmc_resample_inside: gaf chain needs m >= 2 (m = 1 is rigid)");
  }

  const Disk& disk = target.disk();
  const long thin = options.thin > 0 ? options.thin : 10L * m;
  const long burn_in = options.burn_in > 0 ? options.burn_in : steps / 5;

  ChainReport report;
  report.steps = steps;
  report.grid = options.occupancy_grid;
  report.occupancy.assign(
      static_cast<std::size_t>(options.occupancy_grid) * options.occupancy_grid,
      0);
  report.angle_histogram.assign(options.angle_bins, 0);

  // Mark grid cells that poke outside the disk.
  const double cell = 2.0 * disk.radius / options.occupancy_grid;
  for (int iy = 0; iy < options.occupancy_grid; ++iy) {
    for (int ix = 0; ix < options.occupancy_grid; ++ix) {
      const double x0 = disk.center.real() - disk.radius + ix * cell;
      const double y0 = disk.center.imag() - disk.radius + iy * cell;
      double far_corner = 0.0;
      for (int c = 0; c < 4; ++c) {
        const Complex corner(x0 + (c & 1 ? cell : 0.0),
                             y0 + (c & 2 ? cell : 0.0));
        far_corner = std::max(far_corner, std::abs(corner - disk.center));
      }
      if (far_corner >= disk.radius) {
        report.occupancy[iy * options.occupancy_grid + ix] = -1;
      }
    }
  }
  auto record = [&](const std::vector<Complex>& state) {
    const Complex z = state[0];
    const int ix = std::clamp(
        static_cast<int>((z.real() - disk.center.real() + disk.radius) / cell),
        0, options.occupancy_grid - 1);
    const int iy = std::clamp(
        static_cast<int>((z.imag() - disk.center.imag() + disk.radius) / cell),
        0, options.occupancy_grid - 1);
    auto& slot = report.occupancy[iy * options.occupancy_grid + ix];
    if (slot >= 0) ++slot;
    if (gaf && m == 2) {
      double ang = std::arg(state[0] - state[1]);
      if (ang < 0.0) ang += kPi;
      if (ang >= kPi) ang -= kPi;
      const int bin = std::clamp(
          static_cast<int>(ang / kPi * options.angle_bins), 0,
          options.angle_bins - 1);
      ++report.angle_histogram[bin];
    }
  };

  std::vector<Complex> state = initial_state(target, rng);
  std::vector<Complex> proposal = state;
  double step_size = options.gaf_step_fraction * disk.radius;

  long accepted = 0, window_accepted = 0, window_count = 0;
  long adapt_accepted = 0, adapt_count = 0;
  for (long t = 0; t < steps; ++t) {
    bool accept = false;
    if (!gaf) {
      const int i = static_cast<int>(rng.next_u64() % static_cast<unsigned>(m));
      proposal = state;
      proposal[i] = rng.next_in_disk(disk.center, disk.radius);
      const double lr = target.log_ratio(state, proposal);
      accept = lr >= 0.0 || std::log(rng.next_double_open()) < lr;
    } else {
      int i = static_cast<int>(rng.next_u64() % static_cast<unsigned>(m));
      int j = static_cast<int>(rng.next_u64() % static_cast<unsigned>(m - 1));
      if (j >= i) ++j;
      const Complex delta = rng.next_in_disk(Complex(0.0, 0.0), step_size);
      proposal = state;
      proposal[i] += delta;
      proposal[j] -= delta;
      if (disk.contains(proposal[i]) && disk.contains(proposal[j])) {
        const double lr = target.log_ratio(state, proposal);
        accept = lr >= 0.0 || std::log(rng.next_double_open()) < lr;
      }
    }
    if (accept) {
      state.swap(proposal);
      ++accepted;
    }

    if (gaf) {
      const Complex s1 = std::accumulate(state.begin(), state.end(), Complex{});
      report.max_drift =
          std::max(report.max_drift, std::abs(s1 - target.conserved_sum()));
    }
    record(state);
    if ((t + 1) % thin == 0 && t >= burn_in) {
      report.thinned_states.push_back(state);
      report.thinned_log_density.push_back(
          target.log_density_unnormalized(state));
      report.thinned_accepted.push_back(accept ? 1 : 0);
    }

    window_accepted += accept;
    if (++window_count == options.stuck_window) {
      if (window_accepted < 0.01 * options.stuck_window) {
        throw StuckChainError("mcmc_resample_inside: acceptance below 1%");
      }
      window_accepted = 0;
      window_count = 0;
    }
    if (gaf && options.adapt_step && t < burn_in) {
      adapt_accepted += accept;
      if (++adapt_count == 200) {
        const double rate = adapt_accepted / 200.0;
        if (rate < 0.18) step_size *= 0.85;
        if (rate > 0.32) step_size *= 1.15;
        step_size = std::min(step_size, disk.radius);
        adapt_accepted = 0;
        adapt_count = 0;
      }
    }
  }
  report.acceptance = static_cast<double>(accepted) / steps;
  report.step_size = step_size;
  return report;
}

}  // namespace rigidpoints
