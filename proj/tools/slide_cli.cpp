// slide_cli: statistics of point files, seeded simulations, oracle
// validation and catalog entropies.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slide/slide.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kOther = 1,
  kConfig = 2,
  kParse = 3,
  kDivergence = 4,
  kValidationFailed = 5,
  kIo = 6,
};

struct CommonFlags {
  std::vector<std::string> stats;
  std::vector<int> orders;
  std::string format = "table";
  std::string output;
  std::optional<double> tol;
  std::optional<double> derivative_tol;
  bool gaps = false;
  bool no_oracle = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--stat", flags.stats, "slide, assembly or level (repeatable)")->delimiter(',');
  cmd->add_option("--orders", flags.orders, "orders to compute, e.g. 1,2")->delimiter(',');
  cmd->add_option("--format", flags.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--output,-o", flags.output, "write to this file instead of stdout");
  cmd->add_option("--tol", flags.tol, "tangibility tolerance (relative residual)");
  cmd->add_option("--derivative-tol", flags.derivative_tol, "finite-difference reliability tolerance");
  cmd->add_flag("--gaps", flags.gaps, "use consecutive gaps of 1-D data instead of nearest neighbors");
  cmd->add_flag("--no-oracle", flags.no_oracle, "skip the finite-difference check of rho_1");
}

void apply_common(const CommonFlags& flags, slide::ExperimentConfig& config) {
  if (!flags.stats.empty() || !flags.orders.empty()) {
    std::vector<std::string> kinds = flags.stats;
    if (kinds.empty())
      for (const auto& r : config.statistics) kinds.push_back(slide::to_string(r.kind));
    std::vector<slide::StatisticRequest> requests;
    for (const auto& k : kinds) {
      slide::StatisticRequest r;
      r.kind = slide::statistic_kind_from_string(k);
      if (!flags.orders.empty()) r.orders = flags.orders;
      requests.push_back(r);
    }
    config.statistics = requests;
  }
  if (flags.tol) config.tolerances["tangibility"] = *flags.tol;
  if (flags.derivative_tol) config.tolerances["derivative"] = *flags.derivative_tol;
  if (flags.gaps) config.extractor = slide::DistanceExtractor::consecutive_gaps;
  if (flags.no_oracle) config.oracle_check = false;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    slide::write_text(path, text);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    if (!slide::detail::parse_double(item, v)) throw slide::ConfigError("'" + item + "' is not a number");
    values.push_back(v);
  }
  return values;
}

std::string render_checks(const std::vector<slide::ValidationCheck>& checks, const std::string& format) {
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : checks)
      out.push_back({{"name", c.name},
                     {"passed", c.passed},
                     {"max_error", c.max_error},
                     {"tolerance", c.tolerance},
                     {"detail", c.detail}});
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (error " << c.max_error << ", tol " << c.tolerance
        << ")";
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Slide, assembly and level statistics of finite point sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", slide::kVersion);

  // stats
  auto* stats = app.add_subcommand("stats", "statistics of one point set read from a file");
  std::string input;
  CommonFlags stats_flags;
  stats->add_option("--input,-i", input, "CSV or JSON point file")->required();
  add_common(stats, stats_flags);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo experiment");
  std::string config_path, process_text, sweep;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates, size, workers, pairwise_cap;
  CommonFlags sim_flags;
  simulate->add_option("--config,-c", config_path, "JSON experiment config; flags override it");
  simulate->add_option("--process,-p", process_text, "process, e.g. uniform_cube:m=2");
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--replicates,-R", replicates, "number of replicates");
  simulate->add_option("--size,-k", size, "points per replicate");
  simulate->add_option("--workers,-j", workers, "concurrent replicates");
  simulate->add_option("--pairwise-cap", pairwise_cap, "largest sample for assembly statistics");
  simulate->add_option("--sweep", sweep, "run once per value of a process parameter, e.g. m=1,2,3,4");
  add_common(simulate, sim_flags);

  // validate
  auto* validate = app.add_subcommand("validate", "closed forms against numerical oracles");
  slide::ValidationOptions vopts;
  std::string validate_format = "table";
  validate->add_option("--seed", vopts.seed, "seed of the random sequence corpus");
  validate->add_option("--sequences", vopts.sequences, "number of random sequences");
  validate->add_option("--format", validate_format, "json or table")->check(CLI::IsMember({"json", "table"}));

  // entropy
  auto* entropy = app.add_subcommand("entropy", "genial entropy and slide function of a catalog density");
  std::string density;
  std::vector<std::string> params;
  std::string t_values = "0.25,0.5,1,1.5,2";
  std::string entropy_format = "table";
  double entropy_tol = 1e-10;
  entropy->add_option("--density,-d", density,
                      "uniform, neg_log, exponential, power, half_normal, half_cauchy, neg_log_power")
      ->required();
  entropy->add_option("--param", params, "density parameter key=value (repeatable)");
  entropy->add_option("--t", t_values, "comma-separated t values for the slide function");
  entropy->add_option("--tol", entropy_tol, "quadrature tolerance");
  entropy->add_option("--format", entropy_format, "json or table")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*stats) {
    slide::ExperimentConfig config;
    config.process.kind = slide::ProcessKind::from_file;
    config.process.path = input;
    config.sample_size = 0;
    config.replicates = 1;
    apply_common(stats_flags, config);
    const auto report = slide::run_experiment(config);
    if (report.failed() > 0) {
      // Recompute directly so the typed error reaches the exit-code mapping.
      const auto points = slide::load_points(input);
      for (const auto& request : config.statistics) slide::detail::compute_statistic(request, points, config);
      std::cerr << "error: " << report.replicates.front().error << "\n";
      return kOther;
    }
    const std::vector<slide::ExperimentReport> reports{report};
    write_output(slide::format_reports(reports, slide::report_format_from_string(stats_flags.format)),
                 stats_flags.output);
    return kOk;
  }

  if (*simulate) {
    slide::ExperimentConfig config;
    if (!config_path.empty()) config = slide::load_config(config_path);
    if (!process_text.empty()) config.process = slide::parse_process(process_text);
    if (seed) config.master_seed = *seed;
    if (replicates) config.replicates = *replicates;
    if (size) config.sample_size = *size;
    if (workers) config.workers = *workers;
    if (pairwise_cap) config.pairwise_cap = *pairwise_cap;
    apply_common(sim_flags, config);
    std::vector<slide::ExperimentConfig> configs{config};
    if (!sweep.empty()) {
      const auto eq = sweep.find('=');
      if (eq == std::string::npos) throw slide::ConfigError("--sweep expects key=v1,v2,...");
      const auto values = parse_list(sweep.substr(eq + 1));
      configs = slide::parameter_sweep(config, sweep.substr(0, eq), values);
    }
    std::vector<slide::ExperimentReport> reports;
    for (const auto& c : configs) reports.push_back(slide::run_experiment(c));
    write_output(slide::format_reports(reports, slide::report_format_from_string(sim_flags.format)),
                 sim_flags.output);
    return kOk;
  }

  if (*validate) {
    const auto checks = slide::run_validation(vopts);
    std::cout << render_checks(checks, validate_format);
    for (const auto& c : checks)
      if (!c.passed) return kValidationFailed;
    return kOk;
  }

  if (*entropy) {
    slide::ParamMap param_map;
    for (const auto& p : params) {
      const auto eq = p.find('=');
      double v = 0.0;
      if (eq == std::string::npos || !slide::detail::parse_double(p.substr(eq + 1), v))
        throw slide::ConfigError("--param expects key=value, got '" + p + "'");
      param_map[p.substr(0, eq)] = v;
    }
    const auto f = slide::analytic_catalog(density, param_map);
    const double g = slide::genial_entropy(f, entropy_tol);
    const auto ts = parse_list(t_values);
    std::vector<slide::SlideFunctionEvaluation> curve;
    for (double t : ts) curve.push_back(slide::slide_function(f, t, entropy_tol));
    if (entropy_format == "json") {
      nlohmann::json out = {{"density", density}, {"params", f.metadata().params}, {"genial_entropy", g}};
      if (f.metadata().genial_entropy) out["closed_form"] = *f.metadata().genial_entropy;
      out["slide_function"] = nlohmann::json::array();
      for (const auto& e : curve) out["slide_function"].push_back({{"t", e.t}, {"sigma", e.value}, {"area", e.area}});
      std::cout << out.dump(2) << "\n";
    } else {
      std::printf("density          %s\n", density.c_str());
      std::printf("genial entropy   %.12g\n", g);
      if (f.metadata().genial_entropy) std::printf("closed form      %.12g\n", *f.metadata().genial_entropy);
      std::printf("%10s  %18s  %18s\n", "t", "sigma(t)", "A(t)");
      for (const auto& e : curve) std::printf("%10.4g  %18.12g  %18.12g\n", e.t, e.value, e.area);
    }
    return kOk;
  }
  return kOther;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const slide::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const slide::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const slide::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kDivergence;
  } catch (const slide::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
