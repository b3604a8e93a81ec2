#include "rigidpoints/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "rigidpoints/experiments.hpp"
#include "rigidpoints/samplers.hpp"
#include "rigidpoints/serialize.hpp"

namespace rigidpoints {

namespace {

using nlohmann::json;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"sample-ginibre", {"n", "seed", "stream", "method", "steps", "out"}},
      {"sample-gaf", {"n", "seed", "stream", "out"}},
      {"rigidity-count",
       {"r0", "eps", "replicas", "seed", "threads", "n", "out"}},
      {"rigidity-sum",
       {"r0", "n", "eps", "replicas", "seed", "threads", "out"}},
      {"power-tails",
       {"model", "n", "r0", "l", "scales", "replicas", "seed", "threads",
        "out"}},
      {"variance-quadrature",
       {"R", "n", "mc_replicas", "mc_n", "mc_R", "seed", "threads", "out"}},
      {"vieta-check", {"n", "replicas", "seed", "threads", "out"}},
      {"reconstruct", {"n", "replicas", "kmax", "seed", "threads", "out"}},
      {"tolerance-mcmc",
       {"model", "n", "m", "r0", "delta", "steps", "seed", "threads", "out"}},
      {"diagnostics-gaf",
       {"n", "m", "r0", "delta", "replicas", "zeta_primes", "seed", "threads",
        "out"}},
  };
  return keys;
}

[[noreturn]] void fail_validation(const std::string& message,
                                  const std::string& key = "") {
  json err;
  err["error"] = {{"type", "validation"}, {"message", message}};
  if (!key.empty()) err["error"]["key"] = key;
  std::cout << err.dump() << "\n";
  throw CLI::ValidationError(message);  // caught by run_command -> exit 2
}

json load_config_file(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) fail_validation("config file not readable: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    fail_validation(std::string("config parse error: ") + e.what());
  }
  if (!cfg.is_object()) fail_validation("config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key != "version" && key != "command" && key != "params") {
      fail_validation("unknown config key", key);
    }
    (void)value;
  }
  if (cfg.value("version", 0) != 1) {
    fail_validation("config schema version must be 1", "version");
  }
  if (cfg.contains("command") &&
      cfg.at("command").get<std::string>() != command) {
    fail_validation("config command does not match invocation", "command");
  }
  json params = cfg.value("params", json::object());
  const auto& allowed = allowed_keys().at(command);
  for (const auto& [key, value] : params.items()) {
    if (!allowed.count(key)) fail_validation("unknown config key", key);
    (void)value;
  }
  return params;
}

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 1;
  int replicas = 0;
  int threads = 0;
  std::string out = "out";
};

// Adds the flag set shared by every subcommand; per-command callers
// overlay their own numeric flags afterwards.
void add_common(CLI::App* cmd, CommonFlags* flags, bool with_replicas) {
  cmd->add_option("--config", flags->config_path, "JSON config file");
  cmd->add_option("--seed", flags->seed, "master RNG seed");
  if (with_replicas) {
    cmd->add_option("--replicas", flags->replicas, "replica count");
  }
  cmd->add_option("--threads", flags->threads,
                  "worker threads (default: RIGIDPOINTS_THREADS or hardware)");
  cmd->add_option("--out", flags->out, "output directory");
}

// Overlay precedence: defaults < config file < explicit flags.
json merge_params(const CLI::App* cmd, const CommonFlags& flags,
                  const json& file_params, const json& flag_params) {
  json params = file_params;
  for (const auto& [key, value] : flag_params.items()) {
    params[key] = value;
  }
  if (cmd->count("--seed") || !params.contains("seed")) {
    params["seed"] = flags.seed;
  }
  if (cmd->count("--threads") || !params.contains("threads")) {
    params["threads"] = flags.threads;
  }
  if (cmd->count("--out") || !params.contains("out")) {
    params["out"] = flags.out;
  }
  if ((cmd->get_option_no_throw("--replicas") && cmd->count("--replicas")) ||
      (flags.replicas > 0 && !params.contains("replicas"))) {
    if (flags.replicas > 0) params["replicas"] = flags.replicas;
  }
  return params;
}

json config_echo(const std::string& command, const json& params) {
  return json{{"version", 1}, {"command", command}, {"params", params}};
}

ExperimentReport make_report(const std::string& command, const json& params,
                             const json& summary, Table table,
                             std::vector<PlotRow> plot, double wall) {
  ExperimentReport report;
  report.command = command;
  report.config_json = config_echo(command, params).dump();
  report.summary_json = summary.dump();
  report.table = std::move(table);
  report.plot = std::move(plot);
  report.wall_seconds = wall;
  report.version_tag = kVersionTag;
  return report;
}

template <typename T>
T param(const json& params, const std::string& key, T fallback) {
  return params.contains(key) ? params.at(key).get<T>() : fallback;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

int run_sample(const std::string& command, const json& params) {
  const int n = param<int>(params, "n", command == "sample-gaf" ? 32 : 16);
  const std::uint64_t seed = param<std::uint64_t>(params, "seed", 1);
  const std::uint64_t stream = param<std::uint64_t>(params, "stream", 0);
  const std::string out_dir = param<std::string>(params, "out", "out");
  RngState rng(seed, stream);

  PointConfiguration config;
  SampleMeta meta;
  meta.seed = seed;
  meta.stream = stream;
  meta.n = n;
  std::string stem;
  if (command == "sample-ginibre") {
    const std::string method = param<std::string>(params, "method", "eigen");
    meta.model = "ginibre";
    stem = "sample_ginibre";
    if (method == "eigen") {
      GinibreSample s = sample_ginibre_eigen(n, rng);
      meta.residual = s.trace_rel_err;
      config = std::move(s.eigenvalues);
    } else if (method == "mcmc") {
      const long steps = param<long>(params, "steps", 10000L * n);
      GinibreSample s = sample_ginibre_mcmc_oracle(n, steps, rng);
      meta.residual = 0.0;
      config = std::move(s.eigenvalues);
    } else {
      fail_validation("method must be eigen or mcmc", "method");
    }
  } else {
    meta.model = "gaf";
    stem = "sample_gaf";
    GafSample s = sample_gaf(n, rng);
    meta.residual = s.max_rel_residual;
    config = std::move(s.roots);
  }

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path =
      std::filesystem::path(out_dir) / (stem + ".json");
  std::ofstream(path, std::ios::binary)
      << configuration_to_json(config, 1.0, meta) << '\n';
  std::cout << path.string() << "\n";
  return 0;
}

int run_experiment(const std::string& command, const json& params) {
  Timer timer;
  const std::string out_dir = param<std::string>(params, "out", "out");
  json summary;
  Table table;
  std::vector<PlotRow> plot;

  if (command == "rigidity-count") {
    RigidityCountConfig cfg;
    cfg.r0 = param<double>(params, "r0", cfg.r0);
    cfg.eps_grid = param<std::vector<double>>(params, "eps", cfg.eps_grid);
    cfg.replicas = param<int>(params, "replicas", cfg.replicas);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    cfg.n_override = param<int>(params, "n", 0);
    RigidityCountResult res = run_rigidity_count(cfg);
    summary["slope_logvar_logeps"] = res.slope_logvar_logeps;
    summary["max_bookkeeping_err"] = res.max_bookkeeping_err;
    summary["per_eps"] = json::array();
    for (const auto& s : res.per_eps) {
      summary["per_eps"].push_back({{"eps", s.eps},
                                    {"n", s.n},
                                    {"std_raw_err", s.std_raw_err},
                                    {"hit_rate", s.hit_rate}});
    }
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else if (command == "rigidity-sum") {
    RigiditySumConfig cfg;
    cfg.r0 = param<double>(params, "r0", cfg.r0);
    cfg.n = param<int>(params, "n", cfg.n);
    cfg.eps_grid = param<std::vector<double>>(params, "eps", cfg.eps_grid);
    cfg.replicas = param<int>(params, "replicas", cfg.replicas);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    RigiditySumResult res = run_rigidity_sum(cfg);
    summary["per_eps"] = json::array();
    for (const auto& s : res.per_eps) {
      summary["per_eps"].push_back({{"eps", s.eps},
                                    {"median_abs_err", s.median_abs_err},
                                    {"std_abs_err", s.std_abs_err}});
    }
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else if (command == "power-tails") {
    PowerTailsConfig cfg;
    cfg.model = param<std::string>(params, "model", cfg.model);
    cfg.n = param<int>(params, "n", cfg.n);
    cfg.r0 = param<double>(params, "r0", cfg.r0);
    cfg.l = param<int>(params, "l", cfg.l);
    cfg.scales = param<std::vector<int>>(params, "scales", cfg.scales);
    cfg.replicas = param<int>(params, "replicas", cfg.replicas);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    PowerTailsResult res = run_power_tails(cfg);
    summary["slope"] = res.slope.slope;
    summary["slope_stderr"] = res.slope.stderr_slope;
    summary["mean_abs_tau"] = res.mean_abs_tau;
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else if (command == "variance-quadrature") {
    VarianceQuadratureConfig cfg;
    cfg.r_values = param<std::vector<double>>(params, "R", cfg.r_values);
    cfg.n_values = param<std::vector<int>>(params, "n", cfg.n_values);
    cfg.mc_replicas = param<int>(params, "mc_replicas", cfg.mc_replicas);
    cfg.mc_n = param<int>(params, "mc_n", cfg.mc_n);
    cfg.mc_r = param<double>(params, "mc_R", cfg.mc_r);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    VarianceQuadratureResult res = run_variance_quadrature(cfg);
    summary["reference"] = res.reference;
    summary["max_over_reference"] = res.max_over_reference;
    summary["mc_variance"] = res.mc_variance;
    summary["mc_se"] = res.mc_se;
    summary["quad_at_mc_case"] = res.quad_at_mc_case;
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else if (command == "vieta-check") {
    VietaCheckConfig cfg;
    cfg.n = param<int>(params, "n", cfg.n);
    cfg.replicas = param<int>(params, "replicas", cfg.replicas);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    VietaCheckResult res = run_vieta_check(cfg);
    summary["worst_max_ratio_err"] = res.worst;
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else if (command == "reconstruct") {
    ReconstructConfig cfg;
    cfg.n = param<int>(params, "n", cfg.n);
    cfg.replicas = param<int>(params, "replicas", cfg.replicas);
    cfg.k_max = param<int>(params, "kmax", cfg.k_max);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    ReconstructResult res = run_reconstruct(cfg);
    summary["chi_within_025_rate"] = res.chi_within_025_rate;
    summary["aligned_within_03_rate"] = res.aligned_within_03_rate;
    summary["phase_ks_statistic"] = res.phase_ks_statistic;
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else if (command == "tolerance-mcmc") {
    ToleranceMcmcConfig cfg;
    cfg.model = param<std::string>(params, "model", cfg.model);
    cfg.n = param<int>(params, "n", cfg.n);
    cfg.m = param<int>(params, "m", cfg.m);
    cfg.r0 = param<double>(params, "r0", cfg.r0);
    cfg.delta = param<double>(params, "delta", cfg.delta);
    cfg.steps = param<long>(params, "steps", cfg.steps);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    ToleranceMcmcResult res = run_tolerance_mcmc(cfg);
    summary["acceptance"] = res.acceptance;
    summary["max_drift"] = res.max_drift;
    summary["occupied_cells"] = res.occupied_cells;
    summary["interior_cells"] = res.interior_cells;
    summary["occupied_angle_bins"] = res.occupied_angle_bins;
    summary["angle_bins"] = res.angle_bins;
    summary["retained_fraction"] = res.retained_fraction;
    summary["ks_radial"] = res.ks_radial;
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else if (command == "diagnostics-gaf") {
    DiagnosticsGafConfig cfg;
    cfg.n_values = param<std::vector<int>>(params, "n", cfg.n_values);
    cfg.m = param<int>(params, "m", cfg.m);
    cfg.r0 = param<double>(params, "r0", cfg.r0);
    cfg.delta = param<double>(params, "delta", cfg.delta);
    cfg.replicas = param<int>(params, "replicas", cfg.replicas);
    cfg.zeta_primes_per_replica =
        param<int>(params, "zeta_primes", cfg.zeta_primes_per_replica);
    cfg.seed = param<std::uint64_t>(params, "seed", cfg.seed);
    cfg.threads = param<int>(params, "threads", cfg.threads);
    DiagnosticsGafResult res = run_diagnostics_gaf(cfg);
    summary["per_n"] = json::array();
    for (const auto& s : res.per_n) {
      summary["per_n"].push_back({{"n", s.n},
                                  {"replicas_used", s.replicas_used},
                                  {"retained_fraction", s.retained_fraction},
                                  {"cross_p90", s.cross_p90},
                                  {"dratio_p95", s.dratio_p95},
                                  {"y_sum_p90", s.y_sum_p90}});
    }
    table = std::move(res.rows);
    plot = std::move(res.plot);
  } else {
    fail_validation("unknown command", command);
  }

  ExperimentReport report = make_report(command, params, summary,
                                        std::move(table), std::move(plot),
                                        timer.seconds());
  std::string stem = command;
  std::replace(stem.begin(), stem.end(), '-', '_');
  const std::string path = write_report_files(report, out_dir, stem);
  std::cout << path << "\n";
  return 0;
}

}  // namespace

std::string emit_plotdata(const std::string& report_json_path) {
  std::ifstream in(report_json_path);
  if (!in) throw ConfigError("emit_plotdata: cannot read " + report_json_path);
  json j;
  in >> j;
  std::vector<PlotRow> rows;
  for (const auto& r : j.value("plot", json::array())) {
    rows.push_back({r.at("series").get<std::string>(),
                    r.at("x").get<double>(), r.at("y").get<double>(),
                    r.at("yerr").get<double>()});
  }
  return plotdata_csv(rows);
}

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"rigid-points: simulation lab for rigidity and tolerance of "
               "planar point processes"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {
      "sample-ginibre",  "sample-gaf",          "rigidity-count",
      "rigidity-sum",    "power-tails",         "variance-quadrature",
      "vieta-check",     "reconstruct",         "tolerance-mcmc",
      "diagnostics-gaf"};

  struct PerCommand {
    CLI::App* cmd = nullptr;
    CommonFlags flags;
    // Flag targets; only values the user actually passed are merged.
    int n = 0, m = 0, l = 0, kmax = 0, mc_replicas = 0, mc_n = 0, zp = 0;
    long steps = 0;
    std::uint64_t stream = 0;
    double r0 = 0.0, delta = 0.0, mc_r = 0.0;
    std::string model, method;
    std::vector<double> eps, r_list;
    std::vector<int> scales, n_list;
  };
  std::map<std::string, PerCommand> per;

  for (const std::string& name : commands) {
    PerCommand& pc = per[name];
    pc.cmd = app.add_subcommand(name);
    const bool with_replicas = name.rfind("sample-", 0) != 0;
    add_common(pc.cmd, &pc.flags, with_replicas);
    pc.cmd->add_option("--stream", pc.stream, "substream index");
    if (name == "diagnostics-gaf" || name == "variance-quadrature") {
      pc.cmd->add_option("--n", pc.n_list, "degree / kernel size list");
    } else {
      pc.cmd->add_option("--n", pc.n, "model size");
    }
    pc.cmd->add_option("--m", pc.m, "inside point count");
    pc.cmd->add_option("--l", pc.l, "inverse power order");
    pc.cmd->add_option("--kmax", pc.kmax, "reconstruction order cap");
    pc.cmd->add_option("--steps", pc.steps, "chain steps");
    pc.cmd->add_option("--r0", pc.r0, "disk radius");
    pc.cmd->add_option("--delta", pc.delta, "boundary separation");
    pc.cmd->add_option("--model", pc.model, "ginibre | gaf");
    pc.cmd->add_option("--method", pc.method, "eigen | mcmc");
    pc.cmd->add_option("--eps", pc.eps, "bump eps grid");
    pc.cmd->add_option("--scales", pc.scales, "dyadic scale exponents");
    pc.cmd->add_option("--R", pc.r_list, "scaling radii");
    pc.cmd->add_option("--mc-replicas", pc.mc_replicas, "MC replicas");
    pc.cmd->add_option("--mc-n", pc.mc_n, "MC kernel size");
    pc.cmd->add_option("--mc-R", pc.mc_r, "MC scaling radius");
    pc.cmd->add_option("--zeta-primes", pc.zp, "inside resamples per replica");
  }

  CLI::App* plot_cmd = app.add_subcommand(
      "emit-plotdata", "re-emit the tidy plot CSV from a report JSON");
  std::string report_path;
  plot_cmd->add_option("--report", report_path, "report JSON path")
      ->required();

  try {
    std::vector<const char*> argv;
    argv.push_back("rigid-points");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (plot_cmd->parsed()) {
      std::cout << emit_plotdata(report_path);
      return 0;
    }

    for (const std::string& name : commands) {
      PerCommand& pc = per[name];
      if (!pc.cmd->parsed()) continue;

      json file_params = json::object();
      if (!pc.flags.config_path.empty()) {
        file_params = load_config_file(pc.flags.config_path, name);
      }
      json flag_params = json::object();
      auto set_if = [&](const char* flag, const char* key, auto value) {
        const CLI::Option* opt = pc.cmd->get_option_no_throw(flag);
        if (opt && opt->count()) flag_params[key] = value;
      };
      set_if("--n", "n",
             (name == "diagnostics-gaf" || name == "variance-quadrature")
                 ? json(pc.n_list)
                 : json(pc.n));
      set_if("--m", "m", pc.m);
      set_if("--l", "l", pc.l);
      set_if("--kmax", "kmax", pc.kmax);
      set_if("--steps", "steps", pc.steps);
      set_if("--stream", "stream", pc.stream);
      set_if("--r0", "r0", pc.r0);
      set_if("--delta", "delta", pc.delta);
      set_if("--model", "model", pc.model);
      set_if("--method", "method", pc.method);
      set_if("--eps", "eps", pc.eps);
      set_if("--scales", "scales", pc.scales);
      set_if("--R", "R", pc.r_list);
      set_if("--mc-replicas", "mc_replicas", pc.mc_replicas);
      set_if("--mc-n", "mc_n", pc.mc_n);
      set_if("--mc-R", "mc_R", pc.mc_r);
      set_if("--zeta-primes", "zeta_primes", pc.zp);
      set_if("--replicas", "replicas", pc.flags.replicas);

      const json params =
          merge_params(pc.cmd, pc.flags, file_params, flag_params);
      const auto& allowed = allowed_keys().at(name);
      for (const auto& [key, value] : params.items()) {
        if (!allowed.count(key) && key != "seed" && key != "threads" &&
            key != "out" && key != "replicas") {
          fail_validation("unknown config key", key);
        }
        (void)value;
      }
      if (name.rfind("sample-", 0) == 0) {
        return run_sample(name, params);
      }
      return run_experiment(name, params);
    }
    fail_validation("no subcommand given");
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (std::string(e.get_name()) != "ValidationError") {
      json err;
      err["error"] = {{"type", "validation"}, {"message", e.what()}};
      std::cout << err.dump() << "\n";
    }
    return 2;
  } catch (const ConfigError& e) {
    json err;
    err["error"] = {{"type", "validation"}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    json err;
    err["error"] = {{"type", "validation"}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"type", "numerical"}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace rigidpoints
