#pragma once

// Corner densities, genial entropy and the slide function.
//
// A corner density is a monotone decreasing density on an interval anchored
// at 0. Its genial entropy is G(f) = -1 - int f ln(x f) dx, and the slide
// function sigma_f(t) is the genial entropy of the power deformation
// f^t / A(t) with A(t) = int f^t.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slide/distances.hpp"
#include "slide/errors.hpp"
#include "slide/numerics.hpp"

namespace slide {

using ParamMap = std::map<std::string, double>;

// Known closed-form facts attached to catalog densities.
struct DensityMetadata {
  std::string name;
  ParamMap params;
  std::optional<double> genial_entropy;
  std::map<int, double> slide_derivatives;  // order -> psi_n
};

struct SlideFunctionEvaluation {
  double t = 0.0;
  double area = 0.0;   // A(t)
  double value = 0.0;  // sigma_f(t)
};

namespace detail {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

inline double pow_t(double v, double t) {
  if (!(v > 0.0)) return 0.0;
  return std::exp(t * std::log(v));
}

// Integrates piece by piece between known discontinuities of the integrand.
template <class F>
double integrate_pieces(F&& f, const Interval& domain, const std::vector<double>& breaks, double tol) {
  if (breaks.empty()) return integrate(f, domain, tol);
  CompensatedSum sum;
  const double piece_tol = tol / static_cast<double>(breaks.size() + 1);
  QuadratureOptions tail_opts;
  tail_opts.geometric_levels = 0;
  double lo = domain.lo;
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    const double hi = i < breaks.size() ? breaks[i] : domain.hi;
    sum.add(integrate(f, Interval(lo, hi), piece_tol, i == 0 ? QuadratureOptions{} : tail_opts));
    lo = hi;
  }
  return sum.value();
}

}  // namespace detail

class CornerDensity {
 public:
  using Function = std::function<double(double)>;

  // f must be non-negative and monotone decreasing on domain, with a finite
  // positive integral. The domain must start at 0. Breakpoints mark known
  // jumps of f; integrals are split there.
  static CornerDensity analytic(Function f, Interval domain, DensityMetadata meta = {},
                                std::vector<double> breakpoints = {}) {
    if (domain.lo != 0.0) throw ConfigError("corner density domain must start at 0");
    for (std::size_t i = 0; i < breakpoints.size(); ++i)
      if (!(breakpoints[i] > (i == 0 ? domain.lo : breakpoints[i - 1])) || !(breakpoints[i] < domain.hi))
        throw ConfigError("breakpoints must be increasing and inside the domain");
    CornerDensity density;
    density.function_ = std::move(f);
    density.domain_ = domain;
    density.metadata_ = std::move(meta);
    density.breakpoints_ = std::move(breakpoints);
    density.check_monotone();
    density.normalization_ = detail::integrate_pieces(density.function_, domain, density.breakpoints_, 1e-13);
    if (!(density.normalization_ > 0.0) || !std::isfinite(density.normalization_))
      throw ConfigError("corner density must have a finite positive integral");
    return density;
  }

  // f_D on [0, width): value d_i on [(i-1) width / n, i width / n).
  static CornerDensity step(DescendingDistances d, double width = 1.0) {
    if (d.empty()) throw SizeError("step density needs at least one value");
    if (!(width > 0.0) || !std::isfinite(width))
      throw DomainError("step width must be positive");
    if (!(d.front() > 0.0)) throw DomainError("step density values are all zero");
    CornerDensity density;
    density.domain_ = Interval(0.0, width);
    density.normalization_ = d.mean() * width;
    density.steps_ = std::make_shared<const DescendingDistances>(std::move(d));
    density.metadata_.name = "step";
    return density;
  }

  bool is_step() const noexcept { return steps_ != nullptr; }
  const Interval& domain() const noexcept { return domain_; }
  double normalization() const noexcept { return normalization_; }
  const DensityMetadata& metadata() const noexcept { return metadata_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  // Only valid for step densities.
  const DescendingDistances& steps() const {
    if (!steps_) throw ConfigError("density is not a step density");
    return *steps_;
  }

  double operator()(double x) const {
    if (!steps_) return function_(x);
    if (x < 0.0 || x >= domain_.hi) return 0.0;
    const auto n = steps_->size();
    auto i = static_cast<std::size_t>(x / domain_.hi * static_cast<double>(n));
    if (i >= n) i = n - 1;
    return (*steps_)[i];
  }

  // g(z) = beta f(z / lambda) on lambda I.
  CornerDensity rescaled(double beta, double lambda) const {
    if (!(beta > 0.0) || !(lambda > 0.0))
      throw DomainError("rescale factors must be positive");
    if (steps_) return step(steps_->scaled(beta), domain_.hi * lambda);
    auto f = function_;
    DensityMetadata meta = metadata_;
    meta.genial_entropy.reset();
    auto breaks = breakpoints_;
    for (double& b : breaks) b *= lambda;
    return analytic([f, beta, lambda](double z) { return beta * f(z / lambda); },
                    Interval(0.0, domain_.hi * lambda), std::move(meta), std::move(breaks));
  }

  // f^r for r > 0.
  CornerDensity powered(double r) const {
    if (!(r > 0.0)) throw DomainError("power must be positive");
    if (steps_) return step(steps_->powered(r), domain_.hi);
    auto f = function_;
    DensityMetadata meta;
    meta.name = metadata_.name + "^r";
    return analytic([f, r](double x) { return detail::pow_t(f(x), r); }, domain_,
                    std::move(meta), breakpoints_);
  }

 private:
  CornerDensity() = default;

  void check_monotone() const {
    constexpr int kGrid = 1024;
    double previous = kInf;
    for (int k = 0; k < kGrid; ++k) {
      const double s = (k + 0.5) / kGrid;
      const double x = domain_.finite() ? domain_.lo + s * domain_.length() : s / (1.0 - s);
      const double v = function_(x);
      if (!(v >= 0.0)) throw ConfigError("corner density must be non-negative");
      if (v > previous * (1.0 + 1e-12) + 1e-300)
        throw ConfigError("corner density is not monotone decreasing");
      previous = v;
    }
  }

  Function function_;
  std::shared_ptr<const DescendingDistances> steps_;
  Interval domain_;
  double normalization_ = 1.0;
  DensityMetadata metadata_;
  std::vector<double> breakpoints_;
};

// ---------------------------------------------------------------------------
// Slide function by quadrature.

namespace detail {

// Genial entropy of the density g = h / area, where h is the (unnormalized)
// function on domain. On a finite domain [0, b] the integrand is written
// relative to the uniform density 1/b so it vanishes when g is constant:
//   G(g) = -int [(g - 1/b) ln(x/b) + g ln(b g)] dx.
template <class H>
double genial_entropy_of(H& h, double area, const Interval& domain, double tol,
                         const std::vector<double>& breaks = {}) {
  if (domain.finite()) {
    const double b = domain.hi;
    auto integrand = [&](double x) {
      const double g = h(x) / area;
      const double tail = g > 0.0 ? g * std::log(b * g) : 0.0;
      return (g - 1.0 / b) * std::log(x / b) + tail;
    };
    return -integrate_pieces(integrand, domain, breaks, tol);
  }
  auto integrand = [&](double x) {
    const double g = h(x) / area;
    return g > 0.0 ? g * (std::log(x) + std::log(g)) : 0.0;
  };
  return -1.0 - integrate_pieces(integrand, domain, breaks, tol);
}

[[noreturn]] inline void rethrow_area_divergence(const DivergenceError& e, double t) {
  throw DivergenceError("A(t) diverges at t = " + std::to_string(t) + ": " + e.what(),
                        e.lo(), e.hi());
}

}  // namespace detail

// sigma_f(t) and A(t) by quadrature. For step densities the integral is taken
// piece by piece (still numerically); step_slide_function is the exact route.
inline SlideFunctionEvaluation slide_function(const CornerDensity& f, double t,
                                              double tol = 1e-10) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("slide_function requires t >= 0");
  const Interval& domain = f.domain();
  if (t == 0.0) return {0.0, domain.length(), 0.0};

  if (f.is_step()) {
    const auto& d = f.steps();
    d.require_positive();
    const std::size_t n = d.size();
    const double width = domain.hi;
    const double piece = width / static_cast<double>(n);
    detail::CompensatedSum area_sum;
    for (double v : d.values()) area_sum.add(detail::pow_t(v, t));
    const double area = area_sum.value() * piece;

    QuadratureOptions opts;
    detail::CompensatedSum integral;
    const double piece_tol = tol / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double g = detail::pow_t(d[i], t) / area;
      const double tail = g * std::log(width * g);
      auto integrand = [&](double x) { return (g - 1.0 / width) * std::log(x / width) + tail; };
      opts.geometric_levels = i == 0 ? 8 : 0;
      const double lo = piece * static_cast<double>(i);
      const double hi = i + 1 == n ? width : piece * static_cast<double>(i + 1);
      integral.add(integrate(integrand, Interval(lo, hi), piece_tol, opts));
    }
    return {t, area, -integral.value()};
  }

  auto power = [&](double x) { return detail::pow_t(f(x), t); };
  double area = 0.0;
  try {
    area = detail::integrate_pieces(power, domain, f.breakpoints(), tol * 1e-2);
  } catch (const DivergenceError& e) {
    detail::rethrow_area_divergence(e, t);
  }
  if (!(area > 0.0) || !std::isfinite(area))
    throw DivergenceError("A(t) is not finite at t = " + std::to_string(t), domain.lo,
                          domain.hi);
  return {t, area, detail::genial_entropy_of(power, area, domain, tol, f.breakpoints())};
}

// G(f) of the normalized density f / int f.
inline double genial_entropy(const CornerDensity& f, double tol = 1e-10) {
  return slide_function(f, 1.0, tol).value;
}

// Differential entropy h(X) = -int g ln g of the normalized density.
inline double differential_entropy(const CornerDensity& f, double tol = 1e-10) {
  const double norm = f.normalization();
  auto integrand = [&](double x) { return -detail::xlogx(f(x) / norm); };
  return detail::integrate_pieces(integrand, f.domain(), f.breakpoints(), tol);
}

// E[ln X] under the normalized density.
inline double mean_log(const CornerDensity& f, double tol = 1e-10) {
  const double norm = f.normalization();
  auto integrand = [&](double x) {
    const double g = f(x) / norm;
    return g > 0.0 ? g * std::log(x) : 0.0;
  };
  return detail::integrate_pieces(integrand, f.domain(), f.breakpoints(), tol);
}

// ---------------------------------------------------------------------------
// Exact slide function of a step density f_D.
//
// With a_i(t) = n d_i^t / sum_j d_j^t and b_i = i ln(i/n) - (i-1) ln((i-1)/n),
//   sigma(t) = -(1/n) sum a_i ln a_i - (1/n) sum (a_i - 1) b_i,
// an exact rearrangement of the piecewise integral in which every term is
// O(t), so small t loses no precision to cancellation.
class StepSlideFunction {
 public:
  explicit StepSlideFunction(const DescendingDistances& d) {
    if (d.empty()) throw SizeError("step slide function needs a non-empty sequence");
    d.require_positive();
    const std::size_t n = d.size();
    const double dn = static_cast<double>(n);
    deviations_.resize(n);
    weights_.resize(n);
    detail::CompensatedSum log_sum;
    for (std::size_t i = 0; i < n; ++i) {
      deviations_[i] = std::log(d[i]);
      log_sum.add(deviations_[i]);
    }
    mean_log_ = log_sum.value() / dn;
    for (double& v : deviations_) v -= mean_log_;
    weights_[0] = -std::log(dn);
    for (std::size_t k = 1; k < n; ++k) {
      const double i = static_cast<double>(k + 1);
      weights_[k] = std::log(i / dn) + (i - 1.0) * std::log1p(1.0 / (i - 1.0));
    }
  }

  std::size_t size() const noexcept { return deviations_.size(); }

  SlideFunctionEvaluation operator()(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw DomainError("step slide function requires t >= 0");
    const double dn = static_cast<double>(size());
    if (t == 0.0) return {0.0, 1.0, 0.0};
    detail::CompensatedSum shift;
    for (double dev : deviations_) shift.add(std::expm1(t * dev));
    const double log_mean_power = std::log1p(shift.value() / dn);

    detail::CompensatedSum entropy, drift;
    for (std::size_t i = 0; i < deviations_.size(); ++i) {
      const double log_a = t * deviations_[i] - log_mean_power;
      const double a_minus_1 = std::expm1(log_a);
      entropy.add((1.0 + a_minus_1) * log_a);
      drift.add(a_minus_1 * weights_[i]);
    }
    const double value = -(entropy.value() + drift.value()) / dn;
    const double area = std::exp(t * mean_log_ + log_mean_power);
    return {t, area, value};
  }

 private:
  std::vector<double> deviations_;  // ln d_i - mean ln d
  std::vector<double> weights_;     // b_i
  double mean_log_ = 0.0;
};

inline SlideFunctionEvaluation step_slide_function(const DescendingDistances& d, double t) {
  return StepSlideFunction(d)(t);
}

// ---------------------------------------------------------------------------
// Empirical CDF restricted to [0, inf).

class EmpiricalCdfRestriction {
 public:
  EmpiricalCdfRestriction(std::vector<double> jumps, std::vector<double> levels)
      : jumps_(std::move(jumps)), levels_(std::move(levels)) {}

  std::span<const double> jump_locations() const noexcept { return jumps_; }
  std::span<const double> level_values() const noexcept { return levels_; }

  // L(y) = (number of d_i <= y) / n, right-continuous.
  double operator()(double y) const {
    auto it = std::upper_bound(jumps_.begin(), jumps_.end(), y);
    if (it == jumps_.begin()) return 0.0;
    return levels_[static_cast<std::size_t>(it - jumps_.begin() - 1)];
  }

  // inf { y >= 0 : 1 - L(y) <= x }.
  double generalized_inverse(double x) const {
    if (x >= 1.0 || jumps_.empty()) return 0.0;
    auto it = std::find_if(levels_.begin(), levels_.end(),
                           [x](double level) { return 1.0 - level <= x; });
    return jumps_[static_cast<std::size_t>(it - levels_.begin())];
  }

 private:
  std::vector<double> jumps_;
  std::vector<double> levels_;
};

inline EmpiricalCdfRestriction empirical_cdf(const DescendingDistances& d) {
  if (d.empty()) throw DomainError("empirical_cdf requires a non-empty sequence");
  const auto n = static_cast<double>(d.size());
  std::vector<double> jumps, levels;
  // Walk ascending: the sequence is stored descending.
  std::size_t count = 0;
  for (auto it = d.values().rbegin(); it != d.values().rend(); ++it) {
    ++count;
    const bool last_of_value = std::next(it) == d.values().rend() || *std::next(it) != *it;
    if (last_of_value) {
      jumps.push_back(*it);
      levels.push_back(static_cast<double>(count) / n);
    }
  }
  return EmpiricalCdfRestriction(std::move(jumps), std::move(levels));
}

// The survival function 1 - L as a corner density on [0, inf).
inline CornerDensity survival_density(const EmpiricalCdfRestriction& cdf) {
  DensityMetadata meta;
  meta.name = "survival";
  const auto jumps = cdf.jump_locations();
  std::vector<double> breaks;
  for (double y : jumps)
    if (y > 0.0) breaks.push_back(y);
  return CornerDensity::analytic([cdf](double y) { return 1.0 - cdf(y); }, Interval(0.0, kInf),
                                 std::move(meta), std::move(breaks));
}

// ---------------------------------------------------------------------------
// Analytic catalog.

namespace detail {

inline double require_param(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("missing parameter '" + key + "'");
  return it->second;
}

inline double param_or(const ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// Slide derivatives of (-ln x)^r: psi_1 = r, psi_n = (-1)^(n+1) (n-1)! (n-1) zeta(n) r^n.
inline std::map<int, double> neg_log_power_derivatives(double r, int max_order = 4) {
  std::map<int, double> out;
  out[1] = r;
  double factorial = 1.0;
  for (int n = 2; n <= max_order; ++n) {
    factorial *= (n - 1);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    out[n] = sign * factorial * (n - 1) * zeta_int(n) * std::pow(r, n);
  }
  return out;
}

}  // namespace detail

// sigma of -ln x on (0, 1): -1 + t - t Psi(t) + ln Gamma(1 + t), t > 0.
inline double neg_log_slide_value(double t) {
  if (t == 0.0) return 0.0;
  return -1.0 + t - t * digamma(t) + log_gamma(1.0 + t);
}

// Catalog names: uniform(b), neg_log, exponential, power(a), half_normal,
// half_cauchy, neg_log_power(r).
inline CornerDensity analytic_catalog(const std::string& name, const ParamMap& params = {}) {
  using std::numbers::pi;
  DensityMetadata meta;
  meta.name = name;
  meta.params = params;

  if (name == "uniform") {
    const double b = detail::param_or(params, "b", 1.0);
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("uniform requires b > 0");
    meta.params["b"] = b;
    meta.genial_entropy = 0.0;
    return CornerDensity::analytic([b](double) { return 1.0 / b; }, Interval(0.0, b), meta);
  }
  if (name == "neg_log") {
    meta.genial_entropy = kEulerGamma;
    meta.slide_derivatives = detail::neg_log_power_derivatives(1.0);
    return CornerDensity::analytic([](double x) { return -std::log(x); }, Interval(0.0, 1.0),
                                   meta);
  }
  if (name == "exponential") {
    meta.genial_entropy = kEulerGamma;
    return CornerDensity::analytic([](double x) { return std::exp(-x); }, Interval(0.0, kInf),
                                   meta);
  }
  if (name == "power") {
    const double a = detail::require_param(params, "a");
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("power requires 0 < a < 1");
    meta.genial_entropy = -std::log(a);
    return CornerDensity::analytic([a](double x) { return a * std::pow(x, a - 1.0); },
                                   Interval(0.0, 1.0), meta);
  }
  if (name == "half_normal") {
    meta.genial_entropy = (-1.0 + kEulerGamma + std::log(pi)) / 2.0;
    const double c = 2.0 / std::sqrt(pi);
    return CornerDensity::analytic([c](double x) { return c * std::exp(-x * x); },
                                   Interval(0.0, kInf), meta);
  }
  if (name == "half_cauchy") {
    meta.genial_entropy = -1.0 + std::log(2.0) + std::log(pi);
    return CornerDensity::analytic([](double x) { return 2.0 / (pi * (1.0 + x * x)); },
                                   Interval(0.0, kInf), meta);
  }
  if (name == "neg_log_power") {
    const double r = detail::require_param(params, "r");
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("neg_log_power requires r > 0");
    const double scale = std::exp(-log_gamma(1.0 + r));
    meta.genial_entropy = neg_log_slide_value(r);
    meta.slide_derivatives = detail::neg_log_power_derivatives(r);
    return CornerDensity::analytic(
        [r, scale](double x) { return scale * std::pow(-std::log(x), r); },
        Interval(0.0, 1.0), meta);
  }
  throw ConfigError("unknown catalog density '" + name + "'");
}

// The rows of the genial-entropy table, in order.
inline std::vector<std::pair<std::string, ParamMap>> entropy_table_rows() {
  return {{"uniform", {{"b", 1.0}}},   {"neg_log", {}},         {"exponential", {}},
          {"power", {{"a", 0.25}}},    {"power", {{"a", 0.5}}}, {"power", {{"a", 0.9}}},
          {"half_normal", {}},         {"half_cauchy", {}}};
}

}  // namespace slide
