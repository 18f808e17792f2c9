#pragma once

// Monte Carlo experiments: replicate generation, per-replicate statistics,
// aggregation, and report serialization (JSON, CSV, text table).

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "slide/errors.hpp"
#include "slide/geometry.hpp"
#include "slide/io.hpp"
#include "slide/processes.hpp"
#include "slide/slide_stats.hpp"
#include "slide/version.hpp"

namespace slide {

inline constexpr int kReportSchemaVersion = 1;

enum class StatisticKind { slide, assembly, level };

inline std::string to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::slide: return "slide";
    case StatisticKind::assembly: return "assembly";
    case StatisticKind::level: return "level";
  }
  return "slide";
}

inline StatisticKind statistic_kind_from_string(const std::string& s) {
  if (s == "slide") return StatisticKind::slide;
  if (s == "assembly") return StatisticKind::assembly;
  if (s == "level") return StatisticKind::level;
  throw ConfigError("unknown statistic '" + s + "' (expected slide, assembly or level)");
}

inline std::string to_string(DistanceExtractor e) {
  return e == DistanceExtractor::consecutive_gaps ? "consecutive_gaps" : "nearest_neighbor";
}

inline DistanceExtractor distance_extractor_from_string(const std::string& s) {
  if (s == "nearest_neighbor") return DistanceExtractor::nearest_neighbor;
  if (s == "consecutive_gaps") return DistanceExtractor::consecutive_gaps;
  throw ConfigError("unknown distance extractor '" + s + "'");
}

inline constexpr int kMaxLevelOrder = 10;

struct StatisticRequest {
  StatisticKind kind = StatisticKind::slide;
  std::vector<int> orders{1};

  friend bool operator==(const StatisticRequest&, const StatisticRequest&) = default;
};

struct ExperimentConfig {
  ProcessSpec process;
  std::size_t sample_size = 1000;  // 0 with from_file: every point in the file
  std::size_t replicates = 1;
  std::vector<StatisticRequest> statistics{StatisticRequest{}};
  std::uint64_t master_seed = 0;
  // "tangibility": relative residual bound; "derivative": finite-difference
  // reliability bound.
  std::map<std::string, double> tolerances{{"tangibility", kDefaultTangibilityTolerance},
                                           {"derivative", 1e-4}};
  std::size_t workers = 1;
  std::size_t pairwise_cap = kDefaultPairwiseCap;
  DistanceExtractor extractor = DistanceExtractor::nearest_neighbor;
  bool oracle_check = true;  // cross-check closed-form rho_1 by finite differences
  int max_retries = 3;

  double tolerance(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }

  void validate() const {
    process.validate();
    const bool whole_file = process.kind == ProcessKind::from_file && sample_size == 0;
    if (sample_size < 2 && !whole_file) throw ConfigError("sample size must be at least 2");
    if (replicates < 1) throw ConfigError("replicates must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (max_retries < 0) throw ConfigError("max_retries must be non-negative");
    if (statistics.empty()) throw ConfigError("no statistics requested");
    for (const auto& [key, value] : tolerances)
      if (!(value > 0.0) || !std::isfinite(value))
        throw ConfigError("tolerance '" + key + "' must be positive");
    for (const auto& request : statistics) {
      if (request.orders.empty()) throw ConfigError(to_string(request.kind) + ": no orders");
      const int limit = request.kind == StatisticKind::level ? kMaxLevelOrder : 4;
      for (int order : request.orders)
        if (order < 1 || order > limit)
          throw ConfigError(to_string(request.kind) + " orders must lie in 1.." + std::to_string(limit));
      if (request.kind == StatisticKind::assembly && sample_size > pairwise_cap)
        throw ConfigError("assembly statistics are capped at " + std::to_string(pairwise_cap) +
                          " points; sample size is " + std::to_string(sample_size));
    }
    if (extractor == DistanceExtractor::consecutive_gaps && process.dimension() != 1 &&
        process.kind != ProcessKind::from_file)
      throw ConfigError("consecutive gaps need a one-dimensional process");
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ReplicateRecord {
  std::size_t replicate = 0;
  std::uint64_t stream_index = 0;  // stream of the final attempt
  int attempts = 0;
  bool ok = false;
  std::string error;

  friend bool operator==(const ReplicateRecord&, const ReplicateRecord&) = default;
};

// One (statistic, order) column. values[j] belongs to the j-th successful
// replicate in replicate order.
struct StatisticSummary {
  StatisticKind kind = StatisticKind::slide;
  int order = 1;
  StatMethod method = StatMethod::closed_form;
  std::vector<double> values;
  std::vector<double> oracle_errors;  // empty when no oracle applies
  std::size_t unreliable = 0;         // replicates whose finite difference was unreliable
  std::optional<double> mean;
  std::optional<double> sd;  // R - 1 denominator; needs two values

  friend bool operator==(const StatisticSummary&, const StatisticSummary&) = default;
};

struct ExperimentReport {
  int schema_version = kReportSchemaVersion;
  std::string software_version = kVersion;
  std::string generator = kGeneratorName;
  ExperimentConfig config;
  std::vector<ReplicateRecord> replicates;
  std::vector<StatisticSummary> statistics;
  std::map<int, double> dimension_estimates;  // from the slide means
  std::optional<TangibilityVerdict> tangibility;

  std::size_t failed() const {
    return static_cast<std::size_t>(
        std::count_if(replicates.begin(), replicates.end(), [](const auto& r) { return !r.ok; }));
  }

  const StatisticSummary& find(StatisticKind kind, int order) const {
    for (const auto& s : statistics)
      if (s.kind == kind && s.order == order) return s;
    throw ConfigError(to_string(kind) + " order " + std::to_string(order) + " not in report");
  }

  double mean(StatisticKind kind, int order) const {
    const auto& s = find(kind, order);
    if (!s.mean) throw ConfigError("no successful replicates");
    return *s.mean;
  }

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

// ---------------------------------------------------------------------------
// Aggregation.

inline std::pair<std::optional<double>, std::optional<double>> mean_and_sd(
    std::span<const double> values) {
  if (values.empty()) return {std::nullopt, std::nullopt};
  detail::CompensatedSum sum;
  for (double v : values) sum.add(v);
  const double mean = sum.value() / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, std::nullopt};
  detail::CompensatedSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  return {mean, std::sqrt(sq.value() / static_cast<double>(values.size() - 1))};
}

namespace detail {

inline SlideReport compute_statistic(const StatisticRequest& request, const PointSet& points,
                                     const ExperimentConfig& config) {
  SlideOptions options;
  options.check_first_order = config.oracle_check;
  options.derivative.tolerance = config.tolerance("derivative", 1e-4);
  options.extractor = config.extractor;
  options.pairwise_cap = config.pairwise_cap;
  switch (request.kind) {
    case StatisticKind::slide: return slide_numbers(points, request.orders, options);
    case StatisticKind::assembly: return assembly_numbers(points, request.orders, options);
    case StatisticKind::level: {
      const int max_order = *std::max_element(request.orders.begin(), request.orders.end());
      SlideReport full = level_numbers(points, max_order);
      SlideReport picked;
      picked.orders = request.orders;
      for (int order : request.orders) {
        picked.values[order] = full.values.at(order);
        picked.method[order] = full.method.at(order);
        picked.reliable[order] = true;
      }
      return picked;
    }
  }
  throw ConfigError("unknown statistic");
}

struct ReplicateOutcome {
  ReplicateRecord record;
  std::vector<SlideReport> reports;  // one per request
  std::exception_ptr fatal;          // configuration errors surface to the caller
};

// Stream of attempt a for replicate r. Retries move to a disjoint block of
// stream indices so they never collide with another replicate's first try.
inline std::uint64_t attempt_stream(std::size_t replicate, int attempt) {
  return static_cast<std::uint64_t>(replicate) + (static_cast<std::uint64_t>(attempt) << 40);
}

inline ReplicateOutcome run_replicate(const ExperimentConfig& config, std::size_t replicate,
                                      const PointSet* preloaded) {
  ReplicateOutcome out;
  out.record.replicate = replicate;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    out.record.attempts = attempt + 1;
    out.record.stream_index = attempt_stream(replicate, attempt);
    try {
      RandomStream stream(config.master_seed, out.record.stream_index);
      const PointSet points = preloaded ? *preloaded : generate(config.process, config.sample_size, stream);
      out.reports.clear();
      for (const auto& request : config.statistics)
        out.reports.push_back(compute_statistic(request, points, config));
      out.record.ok = true;
      out.record.error.clear();
      return out;
    } catch (const DuplicatePointError& e) {
      out.record.error = e.what();
    } catch (const ConfigError&) {
      out.fatal = std::current_exception();
      return out;
    } catch (const Error& e) {
      out.record.error = e.what();
      return out;
    }
  }
  return out;
}

}  // namespace detail

// Runs config.replicates replicates, replicate r drawing from
// substream(master_seed, r). The report does not depend on config.workers.
inline ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.config.process.seed = config.master_seed;

  std::optional<PointSet> preloaded;
  if (config.process.kind == ProcessKind::from_file) {
    RandomStream unused(config.master_seed, 0);
    preloaded = generate(config.process, config.sample_size, unused);
  }
  const PointSet* shared = preloaded ? &*preloaded : nullptr;

  const std::size_t count = config.replicates;
  std::vector<detail::ReplicateOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < count; r = next++) outcomes[r] = detail::run_replicate(config, r, shared);
  };
  const std::size_t threads = std::min(config.workers, count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& outcome : outcomes)
    if (outcome.fatal) std::rethrow_exception(outcome.fatal);

  for (const auto& outcome : outcomes) report.replicates.push_back(outcome.record);

  for (std::size_t q = 0; q < config.statistics.size(); ++q) {
    const auto& request = config.statistics[q];
    for (int order : request.orders) {
      StatisticSummary summary;
      summary.kind = request.kind;
      summary.order = order;
      summary.method = request.kind == StatisticKind::level ? StatMethod::closed_form
                       : order == 1                         ? StatMethod::closed_form
                       : order == 2                         ? StatMethod::conjectured_closed_form
                                                            : StatMethod::numeric_oracle;
      bool all_have_oracle = true;
      for (const auto& outcome : outcomes) {
        if (!outcome.record.ok) continue;
        const auto& rep = outcome.reports[q];
        summary.values.push_back(rep.values.at(order));
        auto oracle = rep.oracle_error.find(order);
        if (oracle == rep.oracle_error.end())
          all_have_oracle = false;
        else
          summary.oracle_errors.push_back(oracle->second);
        auto rel = rep.reliable.find(order);
        if (rel != rep.reliable.end() && !rel->second) ++summary.unreliable;
      }
      if (!all_have_oracle) summary.oracle_errors.clear();
      std::tie(summary.mean, summary.sd) = mean_and_sd(summary.values);
      report.statistics.push_back(std::move(summary));
    }
  }

  // Dimension estimates and tangibility from the mean slide numbers.
  SlideReport means;
  for (const auto& s : report.statistics)
    if (s.kind == StatisticKind::slide && s.mean) means.values[s.order] = *s.mean;
  if (!means.values.empty()) {
    report.dimension_estimates = dimension_estimates(means).estimates;
    if (means.values.size() >= 2 && means.values.contains(1))
      report.tangibility = tangibility_check(means, config.tolerance("tangibility", kDefaultTangibilityTolerance));
  }
  return report;
}

// One config per value of a process parameter (e.g. m = 1..4 for uniform_cube).
inline std::vector<ExperimentConfig> parameter_sweep(const ExperimentConfig& base, const std::string& key,
                                                     std::span<const double> values) {
  std::vector<ExperimentConfig> out;
  for (double v : values) {
    ExperimentConfig c = base;
    c.process.params[key] = v;
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON.

namespace detail {

inline nlohmann::json order_map_to_json(const std::map<int, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [order, value] : m) j[std::to_string(order)] = value;
  return j;
}

inline std::map<int, double> order_map_from_json(const nlohmann::json& j) {
  std::map<int, double> m;
  for (const auto& [key, value] : j.items()) m[std::stoi(key)] = value.get<double>();
  return m;
}

template <class T>
nlohmann::json optional_to_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> optional_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const ProcessSpec& p) {
  j = {{"kind", to_string(p.kind)}, {"params", p.params}, {"seed", p.seed}};
  if (!p.path.empty()) j["path"] = p.path;
}

// Accepts the object form or the "kind:key=value,..." string form.
inline void from_json(const nlohmann::json& j, ProcessSpec& p) {
  if (j.is_string()) {
    p = parse_process(j.get<std::string>());
    return;
  }
  p = ProcessSpec{};
  p.kind = process_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("params")) p.params = j.at("params").get<ParamMap>();
  if (j.contains("path")) p.path = j.at("path").get<std::string>();
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
}

inline void to_json(nlohmann::json& j, const StatisticRequest& r) {
  j = {{"kind", to_string(r.kind)}, {"orders", r.orders}};
}

inline void from_json(const nlohmann::json& j, StatisticRequest& r) {
  r.kind = statistic_kind_from_string(j.at("kind").get<std::string>());
  r.orders = j.contains("orders") ? j.at("orders").get<std::vector<int>>() : std::vector<int>{1};
}

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = {{"process", c.process},
       {"sample_size", c.sample_size},
       {"replicates", c.replicates},
       {"statistics", c.statistics},
       {"master_seed", c.master_seed},
       {"tolerances", c.tolerances},
       {"workers", c.workers},
       {"pairwise_cap", c.pairwise_cap},
       {"extractor", to_string(c.extractor)},
       {"oracle_check", c.oracle_check},
       {"max_retries", c.max_retries}};
}

// Missing keys keep their defaults, so a config file may be partial.
inline void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  static const std::vector<std::string> known = {"process", "sample_size", "replicates", "statistics",
                                                 "master_seed", "tolerances", "workers", "pairwise_cap",
                                                 "extractor", "oracle_check", "max_retries"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");
  if (j.contains("process")) c.process = j.at("process").get<ProcessSpec>();
  if (j.contains("sample_size")) c.sample_size = j.at("sample_size").get<std::size_t>();
  if (j.contains("replicates")) c.replicates = j.at("replicates").get<std::size_t>();
  if (j.contains("statistics")) c.statistics = j.at("statistics").get<std::vector<StatisticRequest>>();
  if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("tolerances"))
    for (const auto& [key, value] : j.at("tolerances").items()) c.tolerances[key] = value.get<double>();
  if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
  if (j.contains("pairwise_cap")) c.pairwise_cap = j.at("pairwise_cap").get<std::size_t>();
  if (j.contains("extractor")) c.extractor = distance_extractor_from_string(j.at("extractor").get<std::string>());
  if (j.contains("oracle_check")) c.oracle_check = j.at("oracle_check").get<bool>();
  if (j.contains("max_retries")) c.max_retries = j.at("max_retries").get<int>();
}

inline void to_json(nlohmann::json& j, const ReplicateRecord& r) {
  j = {{"replicate", r.replicate}, {"stream_index", r.stream_index}, {"attempts", r.attempts}, {"ok", r.ok}};
  if (!r.error.empty()) j["error"] = r.error;
}

inline void from_json(const nlohmann::json& j, ReplicateRecord& r) {
  r.replicate = j.at("replicate").get<std::size_t>();
  r.stream_index = j.at("stream_index").get<std::uint64_t>();
  r.attempts = j.at("attempts").get<int>();
  r.ok = j.at("ok").get<bool>();
  r.error = j.value("error", std::string{});
}

inline void to_json(nlohmann::json& j, const StatisticSummary& s) {
  j = {{"kind", to_string(s.kind)},
       {"order", s.order},
       {"method", to_string(s.method)},
       {"values", s.values},
       {"oracle_errors", s.oracle_errors},
       {"unreliable", s.unreliable},
       {"mean", detail::optional_to_json(s.mean)},
       {"sd", detail::optional_to_json(s.sd)}};
}

inline void from_json(const nlohmann::json& j, StatisticSummary& s) {
  s.kind = statistic_kind_from_string(j.at("kind").get<std::string>());
  s.order = j.at("order").get<int>();
  s.method = stat_method_from_string(j.at("method").get<std::string>());
  s.values = j.at("values").get<std::vector<double>>();
  s.oracle_errors = j.at("oracle_errors").get<std::vector<double>>();
  s.unreliable = j.at("unreliable").get<std::size_t>();
  s.mean = detail::optional_from_json<double>(j, "mean");
  s.sd = detail::optional_from_json<double>(j, "sd");
}

inline void to_json(nlohmann::json& j, const TangibilityVerdict& v) {
  j = {{"dimension_estimates", detail::order_map_to_json(v.dimension_estimates)},
       {"consensus_dimension", detail::optional_to_json(v.consensus_dimension)},
       {"residuals", detail::order_map_to_json(v.residuals)},
       {"tangible", v.tangible},
       {"tolerance", v.tolerance},
       {"note", v.note}};
}

inline void from_json(const nlohmann::json& j, TangibilityVerdict& v) {
  v.dimension_estimates = detail::order_map_from_json(j.at("dimension_estimates"));
  v.consensus_dimension = detail::optional_from_json<double>(j, "consensus_dimension");
  v.residuals = detail::order_map_from_json(j.at("residuals"));
  v.tangible = j.at("tangible").get<bool>();
  v.tolerance = j.at("tolerance").get<double>();
  v.note = j.at("note").get<std::string>();
}

inline void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = {{"schema_version", r.schema_version},
       {"software_version", r.software_version},
       {"generator", r.generator},
       {"config", r.config},
       {"replicates", r.replicates},
       {"statistics", r.statistics},
       {"dimension_estimates", detail::order_map_to_json(r.dimension_estimates)},
       {"tangibility", r.tangibility ? nlohmann::json(*r.tangibility) : nlohmann::json(nullptr)}};
}

inline void from_json(const nlohmann::json& j, ExperimentReport& r) {
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kReportSchemaVersion)
    throw ParseError("unsupported report schema version " + std::to_string(r.schema_version), 0);
  r.software_version = j.at("software_version").get<std::string>();
  r.generator = j.at("generator").get<std::string>();
  r.config = j.at("config").get<ExperimentConfig>();
  r.replicates = j.at("replicates").get<std::vector<ReplicateRecord>>();
  r.statistics = j.at("statistics").get<std::vector<StatisticSummary>>();
  r.dimension_estimates = detail::order_map_from_json(j.at("dimension_estimates"));
  r.tangibility = detail::optional_from_json<TangibilityVerdict>(j, "tangibility");
}

inline std::string report_json(const ExperimentReport& report) { return nlohmann::json(report).dump(2); }

inline ExperimentReport parse_report_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<ExperimentReport>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what(), 0);
  }
}

inline ExperimentConfig parse_config_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  try {
    ExperimentConfig config = doc.get<ExperimentConfig>();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

// ---------------------------------------------------------------------------
// CSV and text table.

namespace detail {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_g17(*v) : ""; }

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "process,sample_size,replicates,failed,statistic,order,method,count,mean,sd\n";

// One row per (statistic, order).
inline std::string report_csv_rows(const ExperimentReport& report) {
  std::string out;
  for (const auto& s : report.statistics) {
    out += detail::csv_quote(describe(report.config.process)) + ',' + std::to_string(report.config.sample_size) +
           ',' + std::to_string(report.config.replicates) + ',' + std::to_string(report.failed()) + ',' +
           to_string(s.kind) + ',' + std::to_string(s.order) + ',' + to_string(s.method) + ',' +
           std::to_string(s.values.size()) + ',' + detail::format_optional(s.mean) + ',' +
           detail::format_optional(s.sd) + '\n';
  }
  return out;
}

inline std::string report_csv(const ExperimentReport& report) { return kCsvHeader + report_csv_rows(report); }

inline std::string statistic_label(StatisticKind kind, int order) {
  switch (kind) {
    case StatisticKind::slide: return "rho_" + std::to_string(order);
    case StatisticKind::assembly: return "alpha_" + std::to_string(order);
    case StatisticKind::level: return "rhoL_" + std::to_string(order);
  }
  return "";
}

// One row per (report, statistic): process, k, R, statistic, mu, sigma, 1/mu.
inline std::string render_table(std::span<const ExperimentReport> reports) {
  std::vector<std::array<std::string, 7>> rows;
  rows.push_back({"process", "k", "R", "statistic", "mu", "sigma", "1/mu"});
  auto fixed = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return std::string(buf);
  };
  for (const auto& report : reports)
    for (const auto& s : report.statistics) {
      std::optional<double> inverse;
      if (s.mean && *s.mean != 0.0) inverse = 1.0 / *s.mean;
      rows.push_back({describe(report.config.process), std::to_string(report.config.sample_size),
                      std::to_string(report.config.replicates), statistic_label(s.kind, s.order), fixed(s.mean),
                      fixed(s.sd), fixed(inverse)});
    }
  std::array<std::size_t, 7> width{};
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      out += c < 4 ? row[c] + pad : pad + row[c];
      out += c + 1 < row.size() ? "  " : "\n";
    }
  }
  return out;
}

enum class ReportFormat { json, csv, table };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "table" || s == "text") return ReportFormat::table;
  throw ConfigError("unknown format '" + s + "' (expected json, csv or table)");
}

// A single report serializes as an object; several as a JSON array.
inline std::string format_reports(std::span<const ExperimentReport> reports, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      if (reports.size() == 1) return report_json(reports.front()) + "\n";
      nlohmann::json all = nlohmann::json::array();
      for (const auto& r : reports) all.push_back(r);
      return all.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::string out = kCsvHeader;
      for (const auto& r : reports) out += report_csv_rows(r);
      return out;
    }
    case ReportFormat::table: return render_table(reports);
  }
  return "";
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline void emit_reports(std::span<const ExperimentReport> reports, ReportFormat format, const std::string& path) {
  write_text(path, format_reports(reports, format));
}

inline void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  emit_reports(std::span<const ExperimentReport>(&report, 1), format, path);
}

}  // namespace slide
