#pragma once

// Oracle suites: closed forms checked against independent numerical routes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "slide/corner_density.hpp"
#include "slide/distances.hpp"
#include "slide/numerics.hpp"
#include "slide/processes.hpp"
#include "slide/slide_stats.hpp"

namespace slide {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 20240601;
  std::size_t sequences = 200;
  std::size_t max_length = 500;
  double psi1_tolerance = 1e-6;
  double psi2_tolerance = 1e-4;
  double entropy_tolerance = 1e-6;
};

// Descending sequence of length n in 2..max_length with entries 10^U(-2, 2).
inline DescendingDistances random_log_uniform_sequence(RandomStream& stream, std::size_t max_length) {
  const std::size_t n = 2 + static_cast<std::size_t>(stream.next_u64() % (max_length - 1));
  std::vector<double> values(n);
  for (double& v : values) v = std::pow(10.0, -2.0 + 4.0 * stream.uniform());
  return DescendingDistances::sorted(std::move(values), DistanceOrigin::raw);
}

namespace detail {

inline std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline ValidationCheck finish(ValidationCheck check) {
  check.passed = check.max_error <= check.tolerance;
  return check;
}

}  // namespace detail

inline std::vector<ValidationCheck> run_validation(const ValidationOptions& options = {}) {
  std::vector<ValidationCheck> checks;

  ValidationCheck first{"psi1 closed form vs finite differences", false, 0.0, options.psi1_tolerance, ""};
  ValidationCheck second{"psi2 conjectured form vs finite differences", false, 0.0, options.psi2_tolerance, ""};
  RandomStream stream(options.seed, 0);
  for (std::size_t s = 0; s < options.sequences; ++s) {
    const auto d = random_log_uniform_sequence(stream, options.max_length);
    const auto numeric = psi_numeric_all(d, 2);
    first.max_error = std::max(first.max_error, std::abs(psi1(d) - numeric[0].value));
    second.max_error = std::max(second.max_error, std::abs(psi2_conjectured(d) - numeric[1].value));
  }
  first.detail = second.detail = std::to_string(options.sequences) + " random sequences";
  checks.push_back(detail::finish(first));
  checks.push_back(detail::finish(second));

  for (const auto& [name, params] : entropy_table_rows()) {
    const auto f = analytic_catalog(name, params);
    const double g = genial_entropy(f);
    std::string label = "genial entropy of " + name;
    for (const auto& [key, value] : params) label += " " + key + "=" + detail::short_number(value);
    checks.push_back(detail::finish({label, false, std::abs(g - *f.metadata().genial_entropy),
                                     options.entropy_tolerance, "quadrature " + detail::short_number(g)}));
  }

  const auto neg_log = analytic_catalog("neg_log");
  ValidationCheck sigma{"slide function of -ln x vs digamma form", false, 0.0, 1e-6, ""};
  for (double t : {0.1, 0.25, 0.5, 1.0, 2.0})
    sigma.max_error = std::max(sigma.max_error, std::abs(slide_function(neg_log, t).value - neg_log_slide_value(t)));
  checks.push_back(detail::finish(sigma));

  const auto derivs = right_derivatives([&](double t) { return neg_log_slide_value(t); }, 2);
  checks.push_back(detail::finish({"psi1 of -ln x equals 1", false, std::abs(derivs[0].value - 1.0), 1e-4, ""}));
  checks.push_back(detail::finish({"psi2 of -ln x equals -pi^2/6", false,
                                   std::abs(derivs[1].value + std::numbers::pi * std::numbers::pi / 6.0),
                                   1e-3, ""}));

  // -int_0^1 (1 - (-ln x))^n dx = (-1)^(n+1) times the derangement count.
  ValidationCheck level{"level limits of -ln x vs derangements", false, 0.0, 1e-6, ""};
  const double derangements[] = {1.0, 0.0, 1.0, 2.0, 9.0, 44.0};
  for (int n = 2; n <= 5; ++n) {
    const double q = -integrate([n](double x) { return std::pow(1.0 + std::log(x), n); }, Interval(0.0, 1.0), 1e-12);
    const double expected = (n % 2 == 0 ? -1.0 : 1.0) * derangements[n];
    level.max_error = std::max(level.max_error, std::abs(q - expected));
  }
  checks.push_back(detail::finish(level));
  return checks;
}

}  // namespace slide
