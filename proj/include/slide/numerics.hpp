#pragma once

// Quadrature, special functions and one-sided differentiation.
//
// These routines back the closed-form statistics with independent numerical
// routes: integrals of densities, lnGamma/digamma/zeta for the analytic
// catalog, and finite differences of the slide function at t = 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "slide/errors.hpp"

namespace slide {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Domain of integration [lo, hi] with lo >= 0; hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo >= 0.0) || std::isinf(lo) || !(hi > lo))
      throw DomainError("interval requires 0 <= lo < hi");
  }

  bool finite() const noexcept { return std::isfinite(hi); }
  double length() const noexcept { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct QuadratureOptions {
  std::size_t max_segments = 20000;
  // Breakpoints in the initial geometric partition toward lo.
  int geometric_levels = 8;
};

namespace detail {

struct Segment {
  double a, b;   // in integration coordinates
  double value;  // GK15 estimate
  double error;  // truncation error estimate
  double floor;  // roundoff floor, 50 eps |f|
  bool operator<(const Segment& other) const { return error < other.error; }
};

// 15-point Gauss-Kronrod rule with the QUADPACK error heuristic.
template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 7> fv1{}, fv2{};

  const double fc = f(center);
  double resg = fc * wg[3];
  double resk = fc * wgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * xgk[jtw];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += wg[j] * (f1 + f2);
    resk += wgk[jtw] * (f1 + f2);
    resabs += wgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * xgk[jtwm1];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += wgk[jtwm1] * (f1 + f2);
    resabs += wgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = resk * 0.5;
  double resasc = wgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double abs_half = std::abs(half);
  resasc *= abs_half;
  resabs *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (!std::isfinite(resk)) err = kInf;

  return {a, b, resk * half, err,
          50.0 * std::numeric_limits<double>::epsilon() * resabs};
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over domain to absolute tolerance
// tol. Integrable singularities at the endpoints are handled by refinement;
// the initial partition is already geometric toward lo. Semi-infinite domains
// are mapped through x = lo + u / (1 - u).
//
// Throws DivergenceError naming the worst sub-interval (in x coordinates)
// when the segment budget runs out.
template <class F>
double integrate(F&& f, const Interval& domain, double tol,
                 const QuadratureOptions& options = {}) {
  if (!(tol > 0.0)) throw DomainError("integrate: tol must be positive");

  const bool mapped = !domain.finite();
  const double lo = domain.lo;
  auto to_x = [&](double u) { return mapped ? lo + u / (1.0 - u) : u; };
  auto integrand = [&](double u) -> double {
    if (!mapped) return f(u);
    const double one_minus = 1.0 - u;
    const double x = lo + u / one_minus;
    if (!std::isfinite(x)) return 0.0;
    const double value = f(x);
    if (value == 0.0) return 0.0;
    return value / (one_minus * one_minus);
  };

  const double a = mapped ? 0.0 : domain.lo;
  const double b = mapped ? 1.0 : domain.hi;
  const double width = b - a;

  std::priority_queue<detail::Segment> queue;
  double left = a;
  for (int level = options.geometric_levels; level >= 0; --level) {
    const double right = level == 0 ? b : a + std::ldexp(width, -level);
    queue.push(detail::gauss_kronrod_15(integrand, left, right));
    left = right;
  }

  auto totals = [&queue]() {
    // priority_queue hides its container; copy is cheap relative to f calls.
    auto copy = queue;
    double value = 0.0, error = 0.0, floor = 0.0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      floor += copy.top().floor;
      copy.pop();
    }
    return std::array<double, 3>{value, error, floor};
  };

  double error = 0.0, floor = 0.0;
  {
    auto t = totals();
    error = t[1];
    floor = t[2];
  }

  while (!(error <= std::max(tol, floor))) {
    const detail::Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (queue.size() >= options.max_segments || !(mid > worst.a) ||
        !(mid < worst.b) || !std::isfinite(worst.value)) {
      std::ostringstream msg;
      msg << "quadrature did not converge (error estimate " << error
          << ") on sub-interval [" << to_x(worst.a) << ", " << to_x(worst.b)
          << "]";
      throw DivergenceError(msg.str(), to_x(worst.a), to_x(worst.b));
    }
    queue.pop();
    const auto left_half = detail::gauss_kronrod_15(integrand, worst.a, mid);
    const auto right_half = detail::gauss_kronrod_15(integrand, mid, worst.b);
    error += left_half.error + right_half.error - worst.error;
    floor += left_half.floor + right_half.floor - worst.floor;
    queue.push(left_half);
    queue.push(right_half);
    // Resynchronize the running sums now and then; they drift otherwise.
    if (queue.size() % 256 == 0 || !std::isfinite(error)) {
      auto t = totals();
      error = t[1];
      floor = t[2];
    }
  }
  const double value = totals()[0];
  if (!std::isfinite(value)) {
    auto copy = queue;
    while (!copy.empty() && std::isfinite(copy.top().value)) copy.pop();
    const double bad_lo = copy.empty() ? a : copy.top().a, bad_hi = copy.empty() ? b : copy.top().b;
    std::ostringstream msg;
    msg << "quadrature produced a non-finite value on sub-interval [" << to_x(bad_lo) << ", " << to_x(bad_hi)
        << "]";
    throw DivergenceError(msg.str(), to_x(bad_lo), to_x(bad_hi));
  }
  return value;
}

// ln Gamma(x) for x > 0: upward recurrence into the Stirling regime.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma requires x > 0");
  constexpr double kShift = 15.0;
  double product = 1.0;
  double y = x;
  while (y < kShift) {
    product *= y;
    y += 1.0;
  }
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  // Bernoulli terms B_{2k} / (2k (2k-1) y^(2k-1)), k = 1..7.
  const double series =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 +
                     inv2 * (1.0 / 1260.0 +
                             inv2 * (-1.0 / 1680.0 +
                                     inv2 * (1.0 / 1188.0 +
                                             inv2 * (-691.0 / 360360.0 +
                                                     inv2 * (1.0 / 156.0)))))));
  const double stirling = (y - 0.5) * std::log(y) - y +
                          0.5 * std::log(2.0 * std::numbers::pi) + series;
  return stirling - std::log(product);
}

// Digamma Psi(x) for x > 0: recurrence Psi(x) = Psi(x+1) - 1/x up to x >= 10,
// then the asymptotic expansion.
inline double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("digamma requires x > 0");
  double shift = 0.0;
  double y = x;
  while (y < 10.0) {
    shift += 1.0 / y;
    y += 1.0;
  }
  const double inv2 = 1.0 / (y * y);
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 -
                                                      inv2 * (1.0 / 12.0)))))));
  return std::log(y) - 0.5 / y - series - shift;
}

// Riemann zeta at integers n >= 2, via Borwein's accelerated alternating
// series for the Dirichlet eta function.
inline double zeta_int(int n) {
  if (n < 2) throw DomainError("zeta_int requires n >= 2");
  constexpr int kTerms = 40;
  std::array<double, kTerms + 1> d{};
  double term = 1.0 / kTerms;
  double partial = term;
  d[0] = kTerms * partial;
  for (int i = 1; i <= kTerms; ++i) {
    term *= 4.0 * (kTerms + i - 1.0) * (kTerms - i + 1.0) /
            ((2.0 * i) * (2.0 * i - 1.0));
    partial += term;
    d[i] = kTerms * partial;
  }
  double eta = 0.0;
  for (int k = kTerms - 1; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    eta += sign * (d[k] - d[kTerms]) / d[kTerms] *
           std::pow(static_cast<double>(k + 1), -n);
  }
  eta = -eta;
  return eta / (1.0 - std::ldexp(1.0, 1 - n));
}

struct SpecialConstants {
  double euler_gamma = kEulerGamma;
  std::map<int, double> zeta_values;
};

inline SpecialConstants special_constants(int max_n = 10) {
  SpecialConstants constants;
  for (int n = 2; n <= max_n; ++n) constants.zeta_values[n] = zeta_int(n);
  return constants;
}

// ---------------------------------------------------------------------------
// One-sided differentiation at 0.

struct DerivativeEstimate {
  int order = 0;
  double value = 0.0;
  double error = 0.0;  // Richardson-tableau error estimate
  double step = 0.0;   // h0 used for this order
  bool reliable = false;
};

struct DerivativeOptions {
  // Largest step; unset selects 1e-2 for orders 1-2 and 5e-2 for orders 3-4.
  std::optional<double> h0;
  // An estimate is reliable when error <= tolerance * max(1, |value|).
  double tolerance = 1e-4;
  // Number of halvings of the step (h0 * 2^-j, j = 0..levels-1).
  int levels = 6;
};

inline double default_step(int order) { return order <= 2 ? 1e-2 : 5e-2; }

namespace detail {

// Forward 5-point stencils g(0), g(h), ..., g(4h) for derivative orders 1-4,
// as numerator coefficients / (denominator * h^order).
struct Stencil {
  std::array<double, 5> weights;
  double denominator;
  int accuracy;  // leading truncation power of h
};

inline const Stencil& forward_stencil(int order) {
  static const std::array<Stencil, 4> stencils = {{
      {{-25.0, 48.0, -36.0, 16.0, -3.0}, 12.0, 4},
      {{35.0, -104.0, 114.0, -56.0, 11.0}, 12.0, 3},
      {{-5.0, 18.0, -24.0, 14.0, -3.0}, 2.0, 2},
      {{1.0, -4.0, 6.0, -4.0, 1.0}, 1.0, 1},
  }};
  return stencils[order - 1];
}

}  // namespace detail

// Right derivatives of g at 0 for orders 1..max_order (max_order <= 4).
// Each order uses its forward stencil at steps h0 * 2^-j followed by a
// Richardson tableau; the tableau entry with the smallest error estimate wins.
template <class F>
std::vector<DerivativeEstimate> right_derivatives(
    F&& g, int max_order, const DerivativeOptions& options = {}) {
  if (max_order < 1 || max_order > 4)
    throw DomainError("right_derivatives supports orders 1..4");
  if (options.levels < 2) throw DomainError("right_derivatives needs >= 2 levels");

  std::map<double, double> cache;
  auto eval = [&](double t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    const double v = g(t);
    cache.emplace(t, v);
    return v;
  };

  std::vector<DerivativeEstimate> out;
  out.reserve(static_cast<std::size_t>(max_order));
  for (int order = 1; order <= max_order; ++order) {
    const auto& stencil = detail::forward_stencil(order);
    const double h0 = options.h0.value_or(default_step(order));
    if (!(h0 > 0.0)) throw DomainError("right_derivatives requires h0 > 0");
    const int levels = options.levels;

    std::vector<std::vector<double>> tableau(static_cast<std::size_t>(levels));
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_err = kInf;
    for (int j = 0; j < levels; ++j) {
      const double h = std::ldexp(h0, -j);
      double sum = 0.0;
      for (int m = 0; m < 5; ++m) sum += stencil.weights[static_cast<std::size_t>(m)] * eval(m * h);
      auto& row = tableau[static_cast<std::size_t>(j)];
      row.push_back(sum / (stencil.denominator * std::pow(h, order)));
      for (int l = 1; l <= j; ++l) {
        const auto& prev = tableau[static_cast<std::size_t>(j - 1)];
        const double factor = std::ldexp(1.0, stencil.accuracy + l - 1) - 1.0;
        const double lower = row[static_cast<std::size_t>(l - 1)];
        const double value = lower + (lower - prev[static_cast<std::size_t>(l - 1)]) / factor;
        row.push_back(value);
        const double err = std::max(std::abs(value - lower),
                                    std::abs(value - prev[static_cast<std::size_t>(l - 1)]));
        if (err < best_err) {
          best_err = err;
          best = value;
        }
      }
    }
    DerivativeEstimate est;
    est.order = order;
    est.value = best;
    est.error = best_err;
    est.step = h0;
    est.reliable = std::isfinite(best) &&
                   best_err <= options.tolerance * std::max(1.0, std::abs(best));
    out.push_back(est);
  }
  return out;
}

}  // namespace slide
