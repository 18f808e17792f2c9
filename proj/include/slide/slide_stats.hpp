#pragma once

// Slide, assembly and level statistics of finite point sets.
//
// For a descending distance sequence D the statistics are derivatives at
// t = 0 of the slide function of the step density f_D: psi_1 has an exact
// closed form, psi_2 a conjectured one (always cross-checked against finite
// differences), and higher orders are computed numerically only.

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slide/corner_density.hpp"
#include "slide/distances.hpp"
#include "slide/errors.hpp"
#include "slide/geometry.hpp"
#include "slide/numerics.hpp"

namespace slide {

enum class StatMethod { closed_form, conjectured_closed_form, numeric_oracle };

inline std::string to_string(StatMethod method) {
  switch (method) {
    case StatMethod::closed_form: return "closed_form";
    case StatMethod::conjectured_closed_form: return "conjectured_closed_form";
    case StatMethod::numeric_oracle: return "numeric_oracle";
  }
  return "numeric_oracle";
}

inline StatMethod stat_method_from_string(const std::string& s) {
  if (s == "closed_form") return StatMethod::closed_form;
  if (s == "conjectured_closed_form") return StatMethod::conjectured_closed_form;
  if (s == "numeric_oracle") return StatMethod::numeric_oracle;
  throw ParseError("unknown method '" + s + "'", 0);
}

// S1 = sum ln d_i, S2 = sum (ln d_i)^2, S3 = sum_{i<n} (ln(d_i / d_n))^2.
struct LogDistanceSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

namespace detail {

inline void require_slide_input(const DescendingDistances& d) {
  if (d.size() < 2) throw SizeError("slide derivatives need at least two distances");
  d.require_positive();
}

}  // namespace detail

inline LogDistanceSums log_distance_sums(const DescendingDistances& d) {
  detail::require_slide_input(d);
  detail::CompensatedSum s1, s2, s3;
  const double last = d.back();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double l = std::log(d[i]);
    s1.add(l);
    s2.add(l * l);
    if (i + 1 < d.size()) {
      const double u = std::log(d[i] / last);
      s3.add(u * u);
    }
  }
  return {s1.value(), s2.value(), s3.value()};
}

// First slide derivative of f_D:
//   (1/n) sum_{i=2}^{n-1} i ln i ln(d_{i+1}/d_i) + (ln n / n) sum_{i=1}^{n-1} ln(d_i/d_n).
inline double psi1(const DescendingDistances& d) {
  detail::require_slide_input(d);
  const std::size_t n = d.size();
  const double dn = static_cast<double>(n);
  detail::CompensatedSum ladder, spread;
  for (std::size_t k = 1; k + 1 < n; ++k) {  // i = k + 1 runs 2..n-1
    const double i = static_cast<double>(k + 1);
    ladder.add(i * std::log(i) * std::log(d[k + 1] / d[k]));
  }
  for (std::size_t k = 0; k + 1 < n; ++k) spread.add(std::log(d[k] / d.back()));
  return ladder.value() / dn + std::log(dn) / dn * spread.value();
}

// Conjectured second slide derivative of f_D. Evaluated with u_j = ln(d_j/d_n)
// in place of ln d_j, which leaves every bracket of the expression unchanged
// (S1 - n ln d_n = U1, S3 = U2, n S2 - S1^2 = n U2 - U1^2) and makes the
// result exactly scale invariant.
inline double psi2_conjectured(const DescendingDistances& d) {
  detail::require_slide_input(d);
  const std::size_t n = d.size();
  const double dn = static_cast<double>(n);
  std::vector<double> u(n);
  detail::CompensatedSum u1_sum, u2_sum;
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = std::log(d[j] / d.back());
    u1_sum.add(u[j]);
    u2_sum.add(u[j] * u[j]);
  }
  const double u1 = u1_sum.value();
  const double u2 = u2_sum.value();
  const double mean = u1 / dn;
  detail::CompensatedSum centered;
  for (double v : u) centered.add((v - mean) * (v - mean));
  const double n_s2_minus_s1_sq = dn * centered.value();

  detail::CompensatedSum ladder;
  for (std::size_t k = 1; k + 1 < n; ++k) {  // i = 1 contributes 1 ln 1 = 0
    const double i = static_cast<double>(k + 1);
    ladder.add(i * std::log(i) * std::log(d[k + 1] / d[k]) *
               (2.0 * u1 - dn * (u[k] + u[k + 1])));
  }
  const double total =
      ladder.value() + std::log(dn) * (2.0 * u1 * u1 - dn * u2) + n_s2_minus_s1_sq;
  return -total / (dn * dn);
}

// Slide derivatives of f_D by finite differences of the exact step slide
// function, orders 1..max_order (max_order <= 4).
inline std::vector<DerivativeEstimate> psi_numeric_all(const DescendingDistances& d,
                                                       int max_order,
                                                       const DerivativeOptions& options = {}) {
  detail::require_slide_input(d);
  const StepSlideFunction sigma(d);
  return right_derivatives([&sigma](double t) { return sigma(t).value; }, max_order, options);
}

inline DerivativeEstimate psi_numeric(const DescendingDistances& d, int order,
                                      const DerivativeOptions& options = {}) {
  if (order < 1 || order > 4) throw DomainError("psi_numeric supports orders 1..4");
  return psi_numeric_all(d, order, options).back();
}

// Level derivatives of f_{D*}, orders 1..max_order:
//   lambda_1 = sum (1 - d_i/mu) ((i/n) ln(i/n) - ((i-1)/n) ln((i-1)/n)),
//   lambda_k = -(1/n) sum (1 - d_i/mu)^k.
inline std::vector<double> level_derivatives(const DescendingDistances& d, int max_order) {
  if (d.empty()) throw SizeError("level derivatives need a non-empty sequence");
  if (max_order < 1) throw DomainError("max_order must be at least 1");
  const double mu = d.mean();
  if (!(mu > 0.0)) throw DomainError("level derivatives undefined when all distances are zero");
  const std::size_t n = d.size();
  const double dn = static_cast<double>(n);

  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = 1.0 - d[i] / mu;

  std::vector<double> out;
  detail::CompensatedSum first;
  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    first.add(residual[k] * (detail::xlogx(i / dn) - detail::xlogx((i - 1.0) / dn)));
  }
  out.push_back(first.value());
  for (int order = 2; order <= max_order; ++order) {
    detail::CompensatedSum sum;
    for (double r : residual) sum.add(std::pow(r, order));
    out.push_back(-sum.value() / dn);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports over point sets.

struct SlideReport {
  std::vector<int> orders;
  std::map<int, double> values;
  std::map<int, StatMethod> method;
  // Order 1-2: |closed form - finite difference|. Order >= 3: the finite
  // difference error estimate.
  std::map<int, double> oracle_error;
  std::map<int, bool> reliable;

  double at(int order) const {
    auto it = values.find(order);
    if (it == values.end()) throw ConfigError("order " + std::to_string(order) + " not in report");
    return it->second;
  }
};

enum class DistanceExtractor { nearest_neighbor, consecutive_gaps };

struct SlideOptions {
  // Cross-check order 1 against finite differences as well (order 2 is
  // always cross-checked).
  bool check_first_order = true;
  DerivativeOptions derivative;
  DistanceExtractor extractor = DistanceExtractor::nearest_neighbor;
  NearestNeighborOptions neighbors;
  std::size_t pairwise_cap = kDefaultPairwiseCap;
};

// psi_n for each requested order of a distance sequence.
inline SlideReport slide_report(const DescendingDistances& d, std::span<const int> orders,
                                const SlideOptions& options = {}) {
  detail::require_slide_input(d);
  int max_order = 0;
  for (int order : orders) {
    if (order < 1 || order > 4) throw ConfigError("slide orders must lie in 1..4");
    max_order = std::max(max_order, order);
  }
  const bool need_numeric = max_order >= 2 || options.check_first_order;
  std::vector<DerivativeEstimate> numeric;
  if (need_numeric) numeric = psi_numeric_all(d, std::max(max_order, 1), options.derivative);

  SlideReport report;
  report.orders.assign(orders.begin(), orders.end());
  for (int order : orders) {
    const auto* est = numeric.empty() ? nullptr : &numeric[static_cast<std::size_t>(order - 1)];
    if (order == 1) {
      report.values[1] = psi1(d);
      report.method[1] = StatMethod::closed_form;
      report.reliable[1] = true;
      if (est) report.oracle_error[1] = std::abs(report.values[1] - est->value);
    } else if (order == 2) {
      report.values[2] = psi2_conjectured(d);
      report.method[2] = StatMethod::conjectured_closed_form;
      report.oracle_error[2] = std::abs(report.values[2] - est->value);
      report.reliable[2] = est->reliable;
    } else {
      report.values[order] = est->value;
      report.method[order] = StatMethod::numeric_oracle;
      report.oracle_error[order] = est->error;
      report.reliable[order] = est->reliable;
    }
  }
  return report;
}

// Slide numbers rho_n(U) from nearest-neighbor distances (or consecutive gaps
// of 1-D data when selected).
inline SlideReport slide_numbers(const PointSet& points, std::span<const int> orders,
                                 const SlideOptions& options = {}) {
  auto d = options.extractor == DistanceExtractor::consecutive_gaps
               ? consecutive_gaps(points)
               : nn_distances(points, options.neighbors);
  return slide_report(d, orders, options);
}

// Assembly numbers alpha_n(U) from all pairwise distances.
inline SlideReport assembly_numbers(const PointSet& points, std::span<const int> orders,
                                    const SlideOptions& options = {}) {
  const auto d = pairwise_distances(points, options.pairwise_cap);
  if (d.size() > 1) return slide_report(d, orders, options);
  // Two points: one distance, a constant step density, every alpha_n = 0.
  SlideReport report;
  report.orders.assign(orders.begin(), orders.end());
  for (int order : orders) {
    if (order < 1 || order > 4) throw ConfigError("slide orders must lie in 1..4");
    report.values[order] = 0.0;
    report.method[order] = StatMethod::closed_form;
    report.reliable[order] = true;
  }
  return report;
}

// Level numbers rho_n^L(U), orders 1..max_order. Coincident points are allowed.
inline SlideReport level_numbers(const PointSet& points, int max_order,
                                 const NearestNeighborOptions& neighbors = {}) {
  NearestNeighborOptions opts = neighbors;
  opts.allow_duplicates = true;
  const auto d = nn_distances(points, opts);
  if (!(d.front() > 0.0)) throw DomainError("all points coincide");
  const auto lambdas = level_derivatives(d, max_order);
  SlideReport report;
  for (int order = 1; order <= max_order; ++order) {
    report.orders.push_back(order);
    report.values[order] = lambdas[static_cast<std::size_t>(order - 1)];
    report.method[order] = StatMethod::closed_form;
    report.reliable[order] = true;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Dimension estimates and tangibility.

// (-1)^(n+1) (n-1)! (n-1) zeta(n): the value rho_n takes for a tangible
// process of slide dimension 1 (n >= 2).
inline double tangible_coefficient(int n) {
  if (n < 2) throw DomainError("tangible coefficient defined for n >= 2");
  double factorial = 1.0;
  for (int k = 2; k < n; ++k) factorial *= k;
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  return sign * factorial * (n - 1) * zeta_int(n);
}

// rho_n of a tangible process with slide dimension d.
inline double tangible_value(int n, double d) {
  if (n == 1) return 1.0 / d;
  return tangible_coefficient(n) / std::pow(d, n);
}

struct DimensionEstimates {
  std::map<int, double> estimates;
  std::map<int, std::string> flags;  // orders without an estimate, and why
};

inline DimensionEstimates dimension_estimates(const SlideReport& report) {
  DimensionEstimates out;
  for (const auto& [order, rho] : report.values) {
    if (order == 1) {
      if (rho > 0.0)
        out.estimates[1] = 1.0 / rho;
      else
        out.flags[1] = "rho_1 <= 0";
      continue;
    }
    const double ratio = tangible_coefficient(order) / rho;
    if (rho == 0.0 || !(ratio > 0.0) || !std::isfinite(ratio))
      out.flags[order] = "rho_" + std::to_string(order) + " has the wrong sign";
    else
      out.estimates[order] = std::pow(ratio, 1.0 / order);
  }
  return out;
}

inline constexpr double kDefaultTangibilityTolerance = 0.1;

struct TangibilityVerdict {
  std::map<int, double> dimension_estimates;
  std::optional<double> consensus_dimension;
  std::map<int, double> residuals;  // relative, orders >= 2
  bool tangible = false;
  double tolerance = kDefaultTangibilityTolerance;
  std::string note;

  friend bool operator==(const TangibilityVerdict&, const TangibilityVerdict&) = default;
};

// Tangible iff every |rho_n - expected_n| / |expected_n| <= tol, where the
// expected values follow from d = 1 / rho_1.
inline TangibilityVerdict tangibility_check(const SlideReport& report,
                                            double tol = kDefaultTangibilityTolerance) {
  if (report.values.size() < 2) throw SizeError("tangibility needs at least two orders");
  if (!report.values.contains(1)) throw ConfigError("tangibility needs rho_1");
  TangibilityVerdict verdict;
  verdict.tolerance = tol;
  verdict.dimension_estimates = dimension_estimates(report).estimates;
  const double rho1 = report.values.at(1);
  if (!(rho1 > 0.0)) {
    verdict.note = "rho_1 <= 0: intangible by definition";
    return verdict;
  }
  const double d = 1.0 / rho1;
  verdict.consensus_dimension = d;
  double worst = 0.0;
  for (const auto& [order, rho] : report.values) {
    if (order == 1) continue;
    const double expected = tangible_value(order, d);
    const double residual = std::abs(rho - expected) / std::abs(expected);
    verdict.residuals[order] = residual;
    worst = std::max(worst, residual);
  }
  verdict.tangible = worst <= tol;
  return verdict;
}

}  // namespace slide
