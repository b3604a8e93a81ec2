#include "rigidpoints/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "rigidpoints/linstat.hpp"
#include "rigidpoints/symfun.hpp"
#include "rigidpoints/powersums.hpp"
#include "rigidpoints/reconstruct.hpp"
#include "rigidpoints/rigidity.hpp"
#include "rigidpoints/samplers.hpp"
#include "rigidpoints/tolerance.hpp"

namespace rigidpoints {

namespace {

int count_formula(double r0, double eps) {
  const double support = r0 * std::exp(1.0 / eps);
  return static_cast<int>(std::ceil((support + 5.0) * (support + 5.0)));
}

Complex sum_of(std::span<const Complex> zs) {
  return std::accumulate(zs.begin(), zs.end(), Complex{});
}

struct QualifiedReplica {
  int attempt = 0;
  std::vector<Complex> inside;
  std::vector<Complex> outside;
  PointConfiguration config;
  std::vector<Complex> xi;  // gaf only
};

// Rejection-samples replicas until `needed` pass the (m inside points,
// delta boundary separation) filter. Attempts run in parallel blocks but
// are consumed in attempt order, so the output is thread-count
// independent. Returns the retained fraction through `attempts_used`.
std::vector<QualifiedReplica> sample_qualifying(
    const std::string& model, int n, const Disk& disk, int m, double delta,
    int needed, std::uint64_t seed, std::uint64_t stream_base, int threads,
    int max_attempts, int* attempts_used) {
  std::vector<QualifiedReplica> found;
  const int block = std::max(2 * threads, 16);
  int attempt = 0;
  while (static_cast<int>(found.size()) < needed && attempt < max_attempts) {
    const int batch = std::min(block, max_attempts - attempt);
    std::vector<QualifiedReplica> results(batch);
    std::vector<char> ok(batch, 0);
    parallel_replicas(batch, threads, [&](int b) {
      RngState rng(seed, stream_base + attempt + b);
      PointConfiguration config;
      std::vector<Complex> xi;
      if (model == "ginibre") {
        config = sample_ginibre_eigen(n, rng).eigenvalues;
      } else {
        GafSample s = sample_gaf(n, rng);
        xi = s.xi;
        config = s.roots;
      }
      SplitConfiguration split = config.split(disk);
      if (static_cast<int>(split.inside.size()) != m) return;
      for (const Complex& w : split.outside) {
        if (std::abs(w - disk.center) < disk.radius + delta) return;
      }
      results[b].attempt = attempt + b;
      results[b].inside = std::move(split.inside);
      results[b].outside = std::move(split.outside);
      results[b].config = std::move(config);
      results[b].xi = std::move(xi);
      ok[b] = 1;
    });
    for (int b = 0; b < batch && static_cast<int>(found.size()) < needed; ++b) {
      if (ok[b]) found.push_back(std::move(results[b]));
    }
    attempt += batch;
  }
  if (attempts_used) *attempts_used = attempt;
  if (static_cast<int>(found.size()) < needed) {
    throw std::runtime_error(
        "sample_qualifying: attempt budget exhausted before enough replicas "
        "passed the (m, delta) filter");
  }
  return found;
}

}  // namespace

RigidityCountResult run_rigidity_count(const RigidityCountConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  RigidityCountResult result;
  result.rows.columns = {"replica", "eps", "raw", "truth", "error",
                         "rounded_hit"};
  const Disk disk(cfg.r0);

  std::vector<double> log_eps, log_var;
  for (std::size_t e = 0; e < cfg.eps_grid.size(); ++e) {
    const double eps = cfg.eps_grid[e];
    const int n = cfg.n_override > 0 ? cfg.n_override
                                     : count_formula(cfg.r0, eps);
    if (n > kGinibreDefaultCap) {
      throw ConfigError("rigidity-count: required n exceeds the sampler cap");
    }
    const RadialTestFunction bump(cfg.r0, eps);
    const KernelSpec kernel = KernelSpec::finite(n);
    const std::vector<double> breaks = {0.0, bump.r0(), bump.inner_join_end(),
                                        bump.outer_join_begin(),
                                        bump.support_radius()};
    const double integral = intensity_integral(
        kernel, [&](double r) { return bump.value_radial(r); }, breaks, 1e-6);

    std::vector<double> raw(cfg.replicas), err(cfg.replicas);
    std::vector<double> truth(cfg.replicas), hits(cfg.replicas);
    std::vector<double> bookkeeping(cfg.replicas);
    parallel_replicas(cfg.replicas, threads, [&](int r) {
      RngState rng(cfg.seed, e * cfg.replicas + r);
      const GinibreSample sample = sample_ginibre_eigen(n, rng);
      const SplitConfiguration split = sample.eigenvalues.split(disk);
      double sum_out = 0.0, sum_in = 0.0, sum_all = 0.0;
      for (const Complex& w : split.outside) sum_out += bump.value(w);
      for (const Complex& z : split.inside) sum_in += bump.value(z);
      for (const Complex& z : sample.eigenvalues.points()) {
        sum_all += bump.value(z);
      }
      bookkeeping[r] = std::abs((sum_in + sum_out) - sum_all);
      raw[r] = integral - sum_out;
      truth[r] = static_cast<double>(split.inside.size());
      err[r] = raw[r] - truth[r];
      hits[r] = std::llround(raw[r]) ==
                        static_cast<long long>(split.inside.size())
                    ? 1.0
                    : 0.0;
    });

    for (int r = 0; r < cfg.replicas; ++r) {
      result.rows.add_row(
          {double(r), eps, raw[r], truth[r], err[r], hits[r]});
      result.max_bookkeeping_err =
          std::max(result.max_bookkeeping_err, bookkeeping[r]);
    }
    RigidityCountEpsSummary summary;
    summary.eps = eps;
    summary.n = n;
    summary.std_raw_err = sample_std(err);
    summary.variance_raw_err = summary.std_raw_err * summary.std_raw_err;
    summary.hit_rate = mean(hits);
    result.per_eps.push_back(summary);
    log_eps.push_back(std::log(eps));
    log_var.push_back(std::log(summary.variance_raw_err));
    result.plot.push_back(
        {"std_error", eps, summary.std_raw_err,
         summary.std_raw_err / std::sqrt(2.0 * (cfg.replicas - 1))});
    result.plot.push_back({"hit_rate", eps, summary.hit_rate,
                           std::sqrt(summary.hit_rate *
                                     (1.0 - summary.hit_rate) /
                                     cfg.replicas)});
  }
  if (log_eps.size() >= 2) {
    result.slope_logvar_logeps = ols_slope(log_eps, log_var).slope;
  }
  return result;
}

RigiditySumResult run_rigidity_sum(const RigiditySumConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  const double edge = 0.7 * std::sqrt(static_cast<double>(cfg.n));
  for (double eps : cfg.eps_grid) {
    if (cfg.r0 * std::exp(1.0 / eps) > edge) {
      throw ConfigError(
          "rigidity-sum: bump support exceeds 0.7 sqrt(n); shrink r0 or eps");
    }
  }
  RigiditySumResult result;
  result.rows.columns = {"replica", "eps",      "raw_re",  "raw_im",
                         "truth_re", "truth_im", "abs_err"};
  const Disk disk(cfg.r0);

  std::vector<SumTestFunction> thetas;
  for (double eps : cfg.eps_grid) {
    thetas.emplace_back(RadialTestFunction(cfg.r0, eps));
  }

  std::vector<std::vector<double>> abs_err(cfg.eps_grid.size(),
                                           std::vector<double>(cfg.replicas));
  std::vector<std::vector<Complex>> raws(cfg.eps_grid.size(),
                                         std::vector<Complex>(cfg.replicas));
  std::vector<Complex> truths(cfg.replicas);
  parallel_replicas(cfg.replicas, threads, [&](int r) {
    RngState rng(cfg.seed, r);
    const GafSample sample = sample_gaf(cfg.n, rng);
    const SplitConfiguration split = sample.roots.split(disk);
    const Complex truth = sum_of(split.inside);
    truths[r] = truth;
    for (std::size_t e = 0; e < cfg.eps_grid.size(); ++e) {
      const SumEstimate est = estimate_inside_sum(split.outside, thetas[e]);
      raws[e][r] = est.raw;
      abs_err[e][r] = std::abs(est.raw - truth);
    }
  });

  for (std::size_t e = 0; e < cfg.eps_grid.size(); ++e) {
    for (int r = 0; r < cfg.replicas; ++r) {
      result.rows.add_row({double(r), cfg.eps_grid[e], raws[e][r].real(),
                           raws[e][r].imag(), truths[r].real(),
                           truths[r].imag(), abs_err[e][r]});
    }
    RigiditySumEpsSummary summary;
    summary.eps = cfg.eps_grid[e];
    summary.median_abs_err = median(abs_err[e]);
    summary.std_abs_err = sample_std(abs_err[e]);
    result.per_eps.push_back(summary);
    result.plot.push_back({"median_abs_err", summary.eps,
                           summary.median_abs_err,
                           summary.std_abs_err /
                               std::sqrt(double(cfg.replicas))});
  }
  return result;
}

PowerTailsResult run_power_tails(const PowerTailsConfig& cfg) {
  if (cfg.scales.size() < 3) {
    throw InsufficientScaleError("power-tails: need at least 3 dyadic scales");
  }
  const double edge = 0.7 * std::sqrt(static_cast<double>(cfg.n));
  for (int k : cfg.scales) {
    if (std::ldexp(3.0 * cfg.r0, k) > edge) {
      throw ConfigError("power-tails: scale annulus beyond 0.7 sqrt(n)");
    }
  }
  const int threads = resolve_thread_count(cfg.threads);
  const PartitionOfUnity partition(cfg.r0);
  const int k_top = *std::max_element(cfg.scales.begin(), cfg.scales.end());

  std::vector<std::vector<double>> tau_abs(
      cfg.scales.size(), std::vector<double>(cfg.replicas));
  parallel_replicas(cfg.replicas, threads, [&](int r) {
    RngState rng(cfg.seed, r);
    PointConfiguration config;
    if (cfg.model == "ginibre") {
      config = sample_ginibre_eigen(cfg.n, rng).eigenvalues;
    } else if (cfg.model == "gaf") {
      config = sample_gaf(cfg.n, rng).roots;
    } else {
      throw ConfigError("power-tails: model must be ginibre or gaf");
    }
    const PowerSumReport report =
        inverse_power_sums(config, partition, cfg.l, k_top);
    for (std::size_t s = 0; s < cfg.scales.size(); ++s) {
      tau_abs[s][r] = std::abs(report.tails[cfg.l][cfg.scales[s]]);
    }
  });

  PowerTailsResult result;
  result.rows.columns = {"replica", "l", "k", "tau_abs"};
  std::vector<double> ks, log2_means;
  for (std::size_t s = 0; s < cfg.scales.size(); ++s) {
    for (int r = 0; r < cfg.replicas; ++r) {
      result.rows.add_row(
          {double(r), double(cfg.l), double(cfg.scales[s]), tau_abs[s][r]});
    }
    const double m = mean(tau_abs[s]);
    result.mean_abs_tau.push_back(m);
    ks.push_back(static_cast<double>(cfg.scales[s]));
    log2_means.push_back(std::log2(m));
    result.plot.push_back(
        {"log2_mean_abs_tau", double(cfg.scales[s]), std::log2(m),
         sample_std(tau_abs[s]) /
             (m * std::log(2.0) * std::sqrt(double(cfg.replicas)))});
  }
  result.slope = ols_slope(ks, log2_means);
  return result;
}

VarianceQuadratureResult run_variance_quadrature(
    const VarianceQuadratureConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  auto cone = [](double R) {
    RadialFunction f;
    f.profile = [R](double r) {
      return Complex(std::max(0.0, 1.0 - r / R), 0.0);
    };
    f.support_radius = R;
    return f;
  };

  VarianceQuadratureResult result;
  result.rows.columns = {"R", "n", "variance"};
  const double r_ref = *std::min_element(cfg.r_values.begin(),
                                         cfg.r_values.end());
  const int n_ref = *std::max_element(cfg.n_values.begin(),
                                      cfg.n_values.end());
  double ref = 0.0;
  std::vector<std::array<double, 3>> cells;
  for (double R : cfg.r_values) {
    for (int n : cfg.n_values) {
      const double v = dpp_variance(KernelSpec::finite(n), cone(R));
      cells.push_back({R, double(n), v});
      if (R == r_ref && n == n_ref) ref = v;
    }
  }
  result.reference = ref;
  for (const auto& cell : cells) {
    result.rows.add_row({cell[0], cell[1], cell[2]});
    result.max_over_reference =
        std::max(result.max_over_reference, cell[2] / ref);
    result.plot.push_back({"variance_R" + format_double(cell[0]), cell[1],
                           cell[2], 0.0});
  }

  // Monte Carlo cross-check at small n against the eigen sampler.
  const RadialFunction f = cone(cfg.mc_r);
  result.quad_at_mc_case = dpp_variance(KernelSpec::finite(cfg.mc_n), f);
  std::vector<double> stats(cfg.mc_replicas);
  parallel_replicas(cfg.mc_replicas, threads, [&](int r) {
    RngState rng(cfg.seed, r);
    const GinibreSample sample = sample_ginibre_eigen(cfg.mc_n, rng);
    double acc = 0.0;
    for (const Complex& z : sample.eigenvalues.points()) {
      acc += f.profile(std::abs(z)).real();
    }
    stats[r] = acc;
  });
  const double m1 = mean(stats);
  double m2 = 0.0, m4 = 0.0;
  for (double x : stats) {
    const double d = x - m1;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= stats.size();
  m4 /= stats.size();
  result.mc_variance = m2 * stats.size() / (stats.size() - 1.0);
  result.mc_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / stats.size());
  return result;
}

VietaCheckResult run_vieta_check(const VietaCheckConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  VietaCheckResult result;
  result.rows.columns = {"replica", "max_ratio_err"};
  std::vector<double> errs(cfg.replicas);
  parallel_replicas(cfg.replicas, threads, [&](int r) {
    RngState rng(cfg.seed, r);
    const GafSample sample = sample_gaf(cfg.n, rng);
    errs[r] = reconstruct_and_align(sample, cfg.n).max_ratio_rel_err;
  });
  for (int r = 0; r < cfg.replicas; ++r) {
    result.rows.add_row({double(r), errs[r]});
    result.worst = std::max(result.worst, errs[r]);
  }
  result.plot.push_back({"max_ratio_err_worst", double(cfg.n), result.worst,
                         0.0});
  return result;
}

ReconstructResult run_reconstruct(const ReconstructConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  const int k_max = cfg.k_max > 0 ? cfg.k_max : cfg.n;
  ReconstructResult result;
  result.rows.columns = {"replica",       "k_max",      "chi",
                         "chi_err",       "chi_over_xi0", "max_ratio_err",
                         "aligned_err",   "phase_angle"};
  struct Row {
    double chi, chi_err, chi_over, ratio_err, aligned_err, phase;
  };
  std::vector<Row> rows(cfg.replicas);
  parallel_replicas(cfg.replicas, threads, [&](int r) {
    RngState rng(cfg.seed, r);
    const GafSample sample = sample_gaf(cfg.n, rng);
    const ReconstructionResult rec = reconstruct_and_align(sample, k_max);
    rows[r] = {rec.chi,
               rec.chi_err,
               rec.chi / std::abs(sample.xi[0]),
               rec.max_ratio_rel_err,
               rec.aligned_max_rel_err,
               std::arg(rec.alignment_phase)};
  });
  std::vector<double> phases_unit;
  int chi_ok = 0, aligned_ok = 0;
  for (int r = 0; r < cfg.replicas; ++r) {
    const Row& row = rows[r];
    result.rows.add_row({double(r), double(k_max), row.chi, row.chi_err,
                         row.chi_over, row.ratio_err, row.aligned_err,
                         row.phase});
    chi_ok += std::abs(row.chi_over - 1.0) <= 0.25;
    aligned_ok += row.aligned_err <= 0.3;
    phases_unit.push_back((row.phase + kPi) / kTwoPi);
  }
  result.chi_within_025_rate = double(chi_ok) / cfg.replicas;
  result.aligned_within_03_rate = double(aligned_ok) / cfg.replicas;
  result.phase_ks_statistic = ks_statistic(
      std::move(phases_unit), [](double u) { return u; });
  result.plot.push_back({"chi_within_025_rate", double(cfg.n),
                         result.chi_within_025_rate, 0.0});
  result.plot.push_back({"phase_ks", double(cfg.replicas),
                         result.phase_ks_statistic, 0.0});
  return result;
}

ToleranceMcmcResult run_tolerance_mcmc(const ToleranceMcmcConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  const Disk disk(cfg.r0);
  ToleranceMcmcResult result;

  ConditionalTarget target = [&]() {
    if (cfg.model == "ginibre" && cfg.m == 1) {
      // Empty-outside target: the stationary law is the truncated
      // Gaussian e^{-|z|^2} on the disk, exactly comparable to its CDF.
      result.retained_fraction = 1.0;
      return ConditionalTarget::ginibre(disk, {}, 1);
    }
    int attempts = 0;
    std::vector<QualifiedReplica> reps = sample_qualifying(
        cfg.model, cfg.n, disk, cfg.m, cfg.delta, 1, cfg.seed, 0, threads,
        cfg.max_sample_attempts, &attempts);
    result.retained_fraction = 1.0 / std::max(1, attempts);
    QualifiedReplica& rep = reps.front();
    if (cfg.model == "ginibre") {
      return ConditionalTarget::ginibre(disk, std::move(rep.outside), cfg.m);
    }
    const Complex s = sum_of(rep.inside);
    return ConditionalTarget::gaf(disk, cfg.n, std::move(rep.outside), cfg.m,
                                  s);
  }();

  RngState chain_rng(cfg.seed, 1u << 20);
  const ChainReport chain = mcmc_resample_inside(target, cfg.steps, chain_rng);

  result.acceptance = chain.acceptance;
  result.max_drift = chain.max_drift;
  result.angle_bins = static_cast<int>(chain.angle_histogram.size());
  for (long c : chain.occupancy) {
    if (c >= 0) {
      ++result.interior_cells;
      if (c > 0) ++result.occupied_cells;
    }
  }
  for (long c : chain.angle_histogram) {
    if (c > 0) ++result.occupied_angle_bins;
  }

  result.rows.columns = {"step"};
  for (int i = 0; i < cfg.m; ++i) {
    result.rows.columns.push_back("re" + std::to_string(i));
    result.rows.columns.push_back("im" + std::to_string(i));
  }
  result.rows.columns.push_back("log_density");
  result.rows.columns.push_back("accepted");
  for (std::size_t t = 0; t < chain.thinned_states.size(); ++t) {
    std::vector<double> row{static_cast<double>(t)};
    for (const Complex& z : chain.thinned_states[t]) {
      row.push_back(z.real());
      row.push_back(z.imag());
    }
    row.push_back(chain.thinned_log_density[t]);
    row.push_back(static_cast<double>(chain.thinned_accepted[t]));
    result.rows.rows.push_back(std::move(row));
  }

  if (cfg.model == "ginibre" && cfg.m == 1) {
    std::vector<double> radii;
    radii.reserve(chain.thinned_states.size());
    for (const auto& state : chain.thinned_states) {
      radii.push_back(std::abs(state[0]));
    }
    const double z0 = -std::expm1(-cfg.r0 * cfg.r0);
    result.ks_radial = ks_statistic(std::move(radii), [&](double r) {
      return -std::expm1(-r * r) / z0;
    });
  }

  result.plot.push_back(
      {"occupied_cells", double(cfg.m), double(result.occupied_cells), 0.0});
  result.plot.push_back(
      {"acceptance", double(cfg.m), result.acceptance, 0.0});
  return result;
}

RatioEnvelopeResult run_ratio_envelope(const RatioEnvelopeConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  const Disk disk(cfg.r0);
  const PartitionOfUnity partition(cfg.r0);
  const int test_replicas =
      (cfg.test_pairs + cfg.pairs_per_replica - 1) / cfg.pairs_per_replica;
  int attempts = 0;
  std::vector<QualifiedReplica> reps = sample_qualifying(
      "ginibre", cfg.n, disk, cfg.m, cfg.delta,
      cfg.calibration_replicas + test_replicas, cfg.seed, 0, threads,
      cfg.max_sample_attempts, &attempts);

  RatioEnvelopeResult result;
  result.retained_fraction =
      static_cast<double>(reps.size()) / std::max(1, attempts);

  auto replica_ratios = [&](const QualifiedReplica& rep,
                            std::uint64_t pair_stream) {
    const ConditionalTarget target =
        ConditionalTarget::ginibre(disk, rep.outside, cfg.m);
    const PowerSumReport sums = inverse_power_sums(rep.config, partition, 3);
    const double xn = envelope_statistic(sums);
    RngState rng(cfg.seed, (1u << 24) + pair_stream);
    std::vector<double> ratios(cfg.pairs_per_replica);
    for (int p = 0; p < cfg.pairs_per_replica; ++p) {
      std::vector<Complex> zp(cfg.m);
      for (auto& z : zp) z = rng.next_in_disk(disk.center, disk.radius);
      const double remainder = target.log_ratio(rep.inside, zp) -
                               target.inside_vandermonde_term(rep.inside, zp);
      ratios[p] = std::abs(remainder) / (4.0 * cfg.m * xn);
    }
    return ratios;
  };

  std::vector<std::vector<double>> calib(cfg.calibration_replicas);
  parallel_replicas(cfg.calibration_replicas, threads, [&](int i) {
    calib[i] = replica_ratios(reps[i], i);
  });
  for (const auto& rs : calib) {
    for (double r : rs) result.fitted_k = std::max(result.fitted_k, r);
  }

  std::vector<std::vector<double>> test(test_replicas);
  parallel_replicas(test_replicas, threads, [&](int i) {
    test[i] = replica_ratios(reps[cfg.calibration_replicas + i],
                             cfg.calibration_replicas + i);
  });
  result.rows.columns = {"pair", "ratio"};
  long pass = 0;
  int emitted = 0;
  for (const auto& rs : test) {
    for (double r : rs) {
      if (emitted >= cfg.test_pairs) break;
      result.rows.add_row({double(emitted), r});
      pass += r <= result.fitted_k;
      ++emitted;
    }
  }
  result.test_pairs = emitted;
  result.pass_fraction = static_cast<double>(pass) / emitted;
  result.plot.push_back({"envelope_pass_fraction", double(cfg.n),
                         result.pass_fraction, 0.0});
  return result;
}

DiagnosticsGafResult run_diagnostics_gaf(const DiagnosticsGafConfig& cfg) {
  const int threads = resolve_thread_count(cfg.threads);
  const Disk disk(cfg.r0);
  DiagnosticsGafResult result;
  result.rows.columns = {"n",        "replica",  "cross_max", "pair_max",
                         "y_sum",    "dratio_max", "eta1_abs", "eta2_abs"};

  for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
    const int n = cfg.n_values[ni];
    int attempts = 0;
    std::vector<QualifiedReplica> reps = sample_qualifying(
        "gaf", n, disk, cfg.m, cfg.delta, cfg.replicas, cfg.seed,
        ni * 1000000ull, threads, cfg.max_sample_attempts, &attempts);

    struct Row {
      double cross_max, pair_max, y_sum, dratio_max, eta1, eta2;
      std::vector<double> dratios;
      std::vector<double> crosses;
      std::vector<double> ysums;
    };
    std::vector<Row> rows(reps.size());
    parallel_replicas(static_cast<int>(reps.size()), threads, [&](int i) {
      const QualifiedReplica& rep = reps[i];
      const GafRatioDiagnostics diag =
          gaf_ratio_diagnostics(rep.inside, rep.outside, n);
      Row row{};
      for (double v : diag.cross_times_n) {
        row.cross_max = std::max(row.cross_max, v);
        row.crosses.push_back(v);
      }
      for (double v : diag.pair_times_n) {
        row.pair_max = std::max(row.pair_max, v);
      }
      row.y_sum = diag.y_sum;
      row.ysums.push_back(diag.y_sum);

      const Complex s = sum_of(rep.inside);
      const ConditionalTarget target =
          ConditionalTarget::gaf(disk, n, rep.outside, cfg.m, s);
      const double log_d = target.gaf_log_denominator(rep.inside);
      RngState rng(cfg.seed, (ni + 1) * 10000000ull + i);
      for (int p = 0; p < cfg.zeta_primes_per_replica; ++p) {
        std::vector<Complex> zp(cfg.m);
        for (int tries = 0; tries < 1000; ++tries) {
          Complex partial(0.0, 0.0);
          for (int c = 0; c + 1 < cfg.m; ++c) {
            zp[c] = rng.next_in_disk(disk.center, disk.radius);
            partial += zp[c];
          }
          zp[cfg.m - 1] = s - partial;
          if (disk.contains(zp[cfg.m - 1])) break;
        }
        if (!disk.contains(zp[cfg.m - 1])) continue;
        const double dr =
            std::abs((n + 1) * (target.gaf_log_denominator(zp) - log_d));
        row.dratio_max = std::max(row.dratio_max, dr);
        row.dratios.push_back(dr);
      }

      // Residual series values from the sampled coefficients.
      const std::vector<Complex> sigma_in = elementary_symmetric(rep.inside);
      const std::vector<Complex> g = g_expansion(sigma_in, n);
      row.eta1 = std::abs(eta_diagnostic(g, rep.xi, 1));
      row.eta2 = std::abs(eta_diagnostic(g, rep.xi, 2));
      rows[i] = std::move(row);
    });

    std::vector<double> all_dratios, all_crosses, all_ysums;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& row = rows[i];
      result.rows.add_row({double(n), double(i), row.cross_max, row.pair_max,
                           row.y_sum, row.dratio_max, row.eta1, row.eta2});
      all_dratios.insert(all_dratios.end(), row.dratios.begin(),
                         row.dratios.end());
      all_crosses.insert(all_crosses.end(), row.crosses.begin(),
                         row.crosses.end());
      all_ysums.insert(all_ysums.end(), row.ysums.begin(), row.ysums.end());
    }
    DiagnosticsGafPerN per;
    per.n = n;
    per.replicas_used = static_cast<int>(reps.size());
    per.retained_fraction =
        static_cast<double>(reps.size()) / std::max(1, attempts);
    per.cross_p90 = percentile(all_crosses, 90.0);
    per.dratio_p95 = percentile(all_dratios, 95.0);
    per.y_sum_p90 = percentile(all_ysums, 90.0);
    result.per_n.push_back(per);
    result.plot.push_back({"cross_p90", double(n), per.cross_p90, 0.0});
    result.plot.push_back({"dratio_p95", double(n), per.dratio_p95, 0.0});
  }
  return result;
}

}  // namespace rigidpoints
