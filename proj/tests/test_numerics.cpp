#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "slide/corner_density.hpp"
#include "slide/numerics.hpp"

using namespace slide;
using std::numbers::pi;

namespace {

// Independent zeta: partial sum to N plus the Euler-Maclaurin tail
//   N^(1-s)/(s-1) - N^-s/2 + s N^(-s-1)/12 - s(s+1)(s+2) N^(-s-3)/720.
double zeta_euler_maclaurin(int s) {
  const int N = 1000;
  long double sum = 0.0L;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<long double>(k), -s);
  const long double n = N;
  sum += std::pow(n, 1 - s) / (s - 1) + std::pow(n, -s) / 2 + s * std::pow(n, -s - 1) / 12 -
         static_cast<long double>(s) * (s + 1) * (s + 2) * std::pow(n, -s - 3) / 720;
  return static_cast<double>(sum);
}

}  // namespace

TEST(Integrate, Constant) { EXPECT_NEAR(integrate([](double) { return 1.0; }, Interval(0, 1), 1e-12), 1.0, 1e-12); }

TEST(Integrate, LogSingularity) {
  EXPECT_NEAR(integrate([](double x) { return -std::log(x); }, Interval(0, 1), 1e-12), 1.0, 1e-11);
}

TEST(Integrate, SemiInfiniteExponential) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, Interval(0, kInf), 1e-12), 1.0, 1e-11);
}

TEST(Integrate, InverseSquareRootSingularity) {
  EXPECT_NEAR(integrate([](double x) { return 0.5 / std::sqrt(x); }, Interval(0, 1), 1e-10), 1.0, 1e-9);
}

TEST(Integrate, HeavyTail) {
  EXPECT_NEAR(integrate([](double x) { return 2.0 / (pi * (1 + x * x)); }, Interval(0, kInf), 1e-11), 1.0,
              1e-10);
}

TEST(Integrate, Deterministic) {
  auto f = [](double x) { return std::log(x) * std::log(x) * std::exp(-x); };
  const double a = integrate(f, Interval(0, kInf), 1e-10);
  const double b = integrate(f, Interval(0, kInf), 1e-10);
  EXPECT_EQ(a, b);
}

TEST(Integrate, DivergentIntegralNamesSubinterval) {
  // 1/x on (0, 1] diverges at 0.
  try {
    integrate([](double x) { return 1.0 / x; }, Interval(0, 1), 1e-10);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_GE(e.lo(), 0.0);
    EXPECT_LT(e.hi(), 1e-3);
  }
}

TEST(Interval, RejectsInvalidBounds) {
  EXPECT_THROW(Interval(-1, 1), DomainError);
  EXPECT_THROW(Interval(1, 1), DomainError);
  EXPECT_THROW(Interval(2, 1), DomainError);
}

TEST(LogGamma, Examples) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-14);
  EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-14);
  EXPECT_NEAR(log_gamma(1.5), std::log(std::sqrt(pi) / 2.0), 1e-13);
  EXPECT_NEAR(log_gamma(1.5), -0.1207822376352452, 1e-13);
}

TEST(LogGamma, MatchesStdLgamma) {
  for (double x : {1e-3, 0.1, 0.7, 3.3, 12.5, 40.0, 170.0})
    EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x)))) << x;
}

TEST(LogGamma, DomainError) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.0), DomainError);
}

TEST(Digamma, Examples) {
  EXPECT_NEAR(digamma(1.0), -kEulerGamma, 1e-12);
  EXPECT_NEAR(digamma(2.0), 1.0 - kEulerGamma, 1e-12);
  EXPECT_NEAR(digamma(0.5), -kEulerGamma - 2.0 * std::log(2.0), 1e-12);
  EXPECT_THROW(digamma(0.0), DomainError);
}

TEST(Digamma, AgreesWithDerivativeOfLogGamma) {
  for (double x : {0.3, 1.7, 6.0}) {
    const double h = 1e-5;
    const double fd = (log_gamma(x + h) - log_gamma(x - h)) / (2 * h);
    EXPECT_NEAR(digamma(x), fd, 1e-8) << x;
  }
}

TEST(SpecialFunctions, Recurrences) {
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    EXPECT_NEAR(digamma(x + 1) - digamma(x) - 1.0 / x, 0.0, 1e-10) << x;
    EXPECT_NEAR(log_gamma(x + 1) - log_gamma(x) - std::log(x), 0.0, 1e-10) << x;
  }
}

TEST(Zeta, EulerIdentities) {
  EXPECT_NEAR(zeta_int(2), pi * pi / 6.0, 1e-14);
  EXPECT_NEAR(zeta_int(4), std::pow(pi, 4) / 90.0, 1e-14);
  EXPECT_NEAR(zeta_int(6), std::pow(pi, 6) / 945.0, 1e-14);
}

TEST(Zeta, OddValuesAgainstEulerMaclaurinOracle) {
  const double oracle3 = zeta_euler_maclaurin(3);
  EXPECT_NEAR(oracle3, 1.2020569031595943, 1e-13);
  EXPECT_NEAR(zeta_int(3), oracle3, 1e-12);
  for (int s = 5; s <= 12; ++s) EXPECT_NEAR(zeta_int(s), zeta_euler_maclaurin(s), 1e-12) << s;
  EXPECT_THROW(zeta_int(1), DomainError);
}

TEST(SpecialConstants, Values) {
  const auto c = special_constants();
  EXPECT_NEAR(c.euler_gamma, 0.5772156649015329, 1e-12);
  EXPECT_NEAR(c.zeta_values.at(2), pi * pi / 6.0, 1e-12);
}

TEST(RightDerivatives, Square) {
  const auto d = right_derivatives([](double t) { return t * t; }, 2);
  EXPECT_NEAR(d[0].value, 0.0, 1e-8);
  EXPECT_NEAR(d[1].value, 2.0, 1e-8);
  EXPECT_TRUE(d[0].reliable);
  EXPECT_TRUE(d[1].reliable);
}

TEST(RightDerivatives, Sine) {
  const auto d = right_derivatives([](double t) { return std::sin(t); }, 4);
  EXPECT_NEAR(d[0].value, 1.0, 1e-9);
  EXPECT_NEAR(d[1].value, 0.0, 1e-7);
  EXPECT_NEAR(d[2].value, -1.0, 1e-5);
  EXPECT_NEAR(d[3].value, 0.0, 1e-3);
}

TEST(RightDerivatives, PolynomialsExact) {
  // Degree <= max_order: every order exact to 1e-8.
  auto p = [](double t) { return 0.5 - 1.5 * t + 2.0 * t * t + 0.75 * t * t * t - 0.25 * t * t * t * t; };
  const auto d = right_derivatives(p, 4);
  EXPECT_NEAR(d[0].value, -1.5, 1e-8);
  EXPECT_NEAR(d[1].value, 4.0, 1e-8);
  EXPECT_NEAR(d[2].value, 4.5, 1e-8);
  EXPECT_NEAR(d[3].value, -6.0, 1e-8);
}

TEST(RightDerivatives, StepSlideOfTwoOne) {
  const DescendingDistances d({2.0, 1.0}, DistanceOrigin::raw);
  const auto est = right_derivatives([&](double t) { return step_slide_function(d, t).value; }, 1);
  const double ln2 = std::log(2.0);
  EXPECT_NEAR(est[0].value, ln2 * ln2 / 2.0, 1e-10);
  EXPECT_NEAR(est[0].value, 0.24023, 1e-5);
}

TEST(RightDerivatives, FlagsInfiniteSlope) {
  // sqrt(t) has an infinite right derivative at 0: the estimate must not be
  // reported as reliable.
  const auto d = right_derivatives([](double t) { return std::sqrt(t); }, 1);
  EXPECT_FALSE(d[0].reliable);
}

TEST(RightDerivatives, RejectsBadOrders) {
  auto g = [](double t) { return t; };
  EXPECT_THROW(right_derivatives(g, 0), DomainError);
  EXPECT_THROW(right_derivatives(g, 5), DomainError);
}
