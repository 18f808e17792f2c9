#pragma once

// Seeded generators for the point processes used in the simulations.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slide/corner_density.hpp"
#include "slide/errors.hpp"
#include "slide/geometry.hpp"
#include "slide/io.hpp"

namespace slide {

inline constexpr const char* kGeneratorName = "mt19937_64/seed_seq(master_seed,stream_index)";

// A reproducible random stream identified by (master_seed, stream_index).
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard; uniform and normal variates are derived here rather than through
// the implementation-defined <random> distributions.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : master_seed_(master_seed), stream_index_(stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal by Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline RandomStream substream(std::uint64_t master_seed, std::uint64_t replicate) {
  return RandomStream(master_seed, replicate);
}

// ---------------------------------------------------------------------------

enum class ProcessKind {
  uniform_cube,
  normal,
  bivariate_normal,
  exponential,
  log_uniform,
  inv_sqrt,
  cantor,
  sierpinski,
  circle,
  disk_polar,
  disk_uniform,
  cos_iteration,
  primes,
  from_file,
};

inline const std::vector<std::pair<ProcessKind, std::string>>& process_kind_names() {
  static const std::vector<std::pair<ProcessKind, std::string>> names = {
      {ProcessKind::uniform_cube, "uniform_cube"},
      {ProcessKind::normal, "normal"},
      {ProcessKind::bivariate_normal, "bivariate_normal"},
      {ProcessKind::exponential, "exponential"},
      {ProcessKind::log_uniform, "log_uniform"},
      {ProcessKind::inv_sqrt, "inv_sqrt"},
      {ProcessKind::cantor, "cantor"},
      {ProcessKind::sierpinski, "sierpinski"},
      {ProcessKind::circle, "circle"},
      {ProcessKind::disk_polar, "disk_polar"},
      {ProcessKind::disk_uniform, "disk_uniform"},
      {ProcessKind::cos_iteration, "cos_iteration"},
      {ProcessKind::primes, "primes"},
      {ProcessKind::from_file, "from_file"},
  };
  return names;
}

inline std::string to_string(ProcessKind kind) {
  for (const auto& [k, name] : process_kind_names())
    if (k == kind) return name;
  return "unknown";
}

inline ProcessKind process_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : process_kind_names())
    if (n == name) return k;
  throw ConfigError("unknown process '" + name + "'");
}

inline constexpr double kDefaultPrimeCap = 2e7;

struct ProcessSpec {
  ProcessKind kind = ProcessKind::uniform_cube;
  // uniform_cube: m (dimension, default 1); sierpinski: burn_in (default
  // 100); primes: max_primes (default 2e7).
  ParamMap params;
  std::string path;  // from_file only
  std::uint64_t seed = 0;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }

  std::size_t dimension() const {
    switch (kind) {
      case ProcessKind::uniform_cube: return static_cast<std::size_t>(param("m", 1.0));
      case ProcessKind::bivariate_normal:
      case ProcessKind::sierpinski:
      case ProcessKind::circle:
      case ProcessKind::disk_polar:
      case ProcessKind::disk_uniform: return 2;
      default: return 1;
    }
  }

  void validate() const {
    auto integral_at_least = [this](const std::string& key, double fallback, double min) {
      const double v = param(key, fallback);
      if (!(v >= min) || v != std::floor(v))
        throw ConfigError(to_string(kind) + ": '" + key + "' must be an integer >= " +
                          std::to_string(static_cast<long long>(min)));
    };
    if (kind == ProcessKind::uniform_cube) integral_at_least("m", 1.0, 1.0);
    if (kind == ProcessKind::sierpinski) integral_at_least("burn_in", 100.0, 0.0);
    if (kind == ProcessKind::primes) integral_at_least("max_primes", kDefaultPrimeCap, 1.0);
    if (kind == ProcessKind::from_file && path.empty())
      throw ConfigError("from_file requires a path");
  }

  friend bool operator==(const ProcessSpec&, const ProcessSpec&) = default;
};

// "kind[:key=value,...]", e.g. "uniform_cube:m=3" or "from_file:path=pts.csv".
inline ProcessSpec parse_process(const std::string& text, std::uint64_t seed = 0) {
  ProcessSpec spec;
  spec.seed = seed;
  const auto colon = text.find(':');
  spec.kind = process_kind_from_string(text.substr(0, colon));
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key=value in '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "path") {
        spec.path = value;
        continue;
      }
      double v = 0.0;
      if (!detail::parse_double(value, v))
        throw ConfigError("parameter '" + key + "' is not a number");
      spec.params[key] = v;
    }
  }
  spec.validate();
  return spec;
}

inline std::string describe(const ProcessSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.kind);
  char sep = ':';
  for (const auto& [key, value] : spec.params) {
    out << sep << key << '=' << value;
    sep = ',';
  }
  if (!spec.path.empty()) out << sep << "path=" << spec.path;
  return out.str();
}

// ---------------------------------------------------------------------------
// Deterministic building blocks.

// sum_{i=1}^{40} a_i / 3^i with a_i = 2 * (bit i-1 of bits).
inline double cantor_point(std::uint64_t bits) {
  double x = 0.0;
  for (int i = 39; i >= 0; --i) {
    const double digit = ((bits >> i) & 1u) ? 2.0 : 0.0;
    x = (x + digit) / 3.0;
  }
  return x;
}

// First count primes by a sieve of Eratosthenes.
inline std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  if (count == 0) return primes;
  const double k = static_cast<double>(count);
  // p_k < k (ln k + ln ln k) for k >= 6.
  const auto limit = count < 6 ? std::uint64_t{15}
                               : static_cast<std::uint64_t>(k * (std::log(k) + std::log(std::log(k)))) + 3;
  std::vector<bool> composite(limit + 1, false);
  primes.reserve(count);
  for (std::uint64_t p = 2; p <= limit && primes.size() < count; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return primes;
}

// x_0 = 0, x_{i+1} = x_i + cos(i).
inline std::vector<double> cos_orbit(std::size_t count) {
  std::vector<double> xs;
  xs.reserve(count);
  double x = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    xs.push_back(x);
    x += std::cos(static_cast<double>(i));
  }
  return xs;
}

// k points from spec drawing randomness from stream.
inline PointSet generate(const ProcessSpec& spec, std::size_t k, RandomStream& stream) {
  spec.validate();
  using std::numbers::pi;
  const std::size_t dim = spec.dimension();
  std::vector<double> coords;
  coords.reserve(k * dim);

  switch (spec.kind) {
    case ProcessKind::uniform_cube:
      for (std::size_t i = 0; i < k * dim; ++i) coords.push_back(stream.uniform());
      break;
    case ProcessKind::normal:
    case ProcessKind::bivariate_normal:
      for (std::size_t i = 0; i < k * dim; ++i) coords.push_back(stream.normal());
      break;
    case ProcessKind::exponential:
      for (std::size_t i = 0; i < k; ++i) coords.push_back(-std::log(stream.uniform_open()));
      break;
    case ProcessKind::log_uniform:
      for (std::size_t i = 0; i < k; ++i) coords.push_back(std::log(stream.uniform_open()));
      break;
    case ProcessKind::inv_sqrt:
      for (std::size_t i = 0; i < k; ++i) {
        const double u = stream.uniform();
        coords.push_back(u * u);
      }
      break;
    case ProcessKind::cantor:
      for (std::size_t i = 0; i < k; ++i) coords.push_back(cantor_point(stream.next_u64()));
      break;
    case ProcessKind::sierpinski: {
      static constexpr std::array<std::array<double, 2>, 3> vertices = {
          {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.86602540378443864676}}};
      // Start inside the triangle at a random convex combination.
      std::array<double, 3> w{stream.uniform_open(), stream.uniform_open(), stream.uniform_open()};
      const double total = w[0] + w[1] + w[2];
      double x = 0.0, y = 0.0;
      for (std::size_t v = 0; v < 3; ++v) {
        x += w[v] / total * vertices[v][0];
        y += w[v] / total * vertices[v][1];
      }
      const auto burn_in = static_cast<std::size_t>(spec.param("burn_in", 100.0));
      for (std::size_t step = 0; step < burn_in + k; ++step) {
        const auto& v = vertices[stream.next_u64() % 3];
        x = 0.5 * (x + v[0]);
        y = 0.5 * (y + v[1]);
        if (step >= burn_in) {
          coords.push_back(x);
          coords.push_back(y);
        }
      }
      break;
    }
    case ProcessKind::circle:
      for (std::size_t i = 0; i < k; ++i) {
        const double angle = 2.0 * pi * stream.uniform();
        coords.push_back(std::sin(angle));
        coords.push_back(std::cos(angle));
      }
      break;
    case ProcessKind::disk_polar:
      for (std::size_t i = 0; i < k; ++i) {
        const double u = stream.uniform();
        const double angle = 2.0 * pi * stream.uniform();
        coords.push_back(u * std::sin(angle));
        coords.push_back(u * std::cos(angle));
      }
      break;
    case ProcessKind::disk_uniform:
      while (coords.size() < 2 * k) {
        const double u = 2.0 * stream.uniform() - 1.0;
        const double v = 2.0 * stream.uniform() - 1.0;
        if (u * u + v * v <= 1.0) {
          coords.push_back(u);
          coords.push_back(v);
        }
      }
      break;
    case ProcessKind::cos_iteration:
      coords = cos_orbit(k);
      break;
    case ProcessKind::primes: {
      const double cap = spec.param("max_primes", kDefaultPrimeCap);
      if (static_cast<double>(k) > cap)
        throw ConfigError("primes: requested " + std::to_string(k) + " exceeds max_primes");
      for (auto p : first_primes(k)) coords.push_back(static_cast<double>(p));
      break;
    }
    case ProcessKind::from_file: {
      const PointSet loaded = load_points(spec.path);
      if (k == 0) return loaded;
      if (loaded.size() < k)
        throw ConfigError("from_file: '" + spec.path + "' has " + std::to_string(loaded.size()) +
                          " points, " + std::to_string(k) + " requested");
      const auto c = loaded.coordinates();
      return PointSet::euclidean(std::vector<double>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k * loaded.dim())),
                                 loaded.dim());
    }
  }
  return PointSet::euclidean(std::move(coords), dim);
}

// Pure function of (spec, k): randomness comes from stream (spec.seed, 0).
// For from_file, k = 0 loads every point.
inline PointSet generate(const ProcessSpec& spec, std::size_t k) {
  RandomStream stream(spec.seed, 0);
  return generate(spec, k, stream);
}

}  // namespace slide
