#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "slide/processes.hpp"
#include "slide/slide_stats.hpp"

using namespace slide;
using std::numbers::pi;

namespace {

const double kZeta2 = pi * pi / 6.0;

DescendingDistances seq(std::vector<double> v) { return DescendingDistances(std::move(v), DistanceOrigin::raw); }

DescendingDistances random_sequence(RandomStream& rs, std::size_t max_n) {
  const std::size_t n = 2 + rs.next_u64() % (max_n - 1);
  std::vector<double> v(n);
  for (double& x : v) x = std::pow(10.0, -2.0 + 4.0 * rs.uniform());
  return DescendingDistances::sorted(std::move(v), DistanceOrigin::raw);
}

// Second slide derivative written exactly as the conjecture states it, in raw
// logarithms (S1, S2, S3).
double psi2_verbatim(const DescendingDistances& d) {
  const double n = static_cast<double>(d.size());
  double s1 = 0, s2 = 0, s3 = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    s1 += std::log(d[i]);
    s2 += std::log(d[i]) * std::log(d[i]);
    if (i + 1 < d.size()) s3 += std::pow(std::log(d[i] / d.back()), 2);
  }
  double first = 0.0;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    first += i * std::log(i) * std::log(d[k + 1] / d[k]) * (2 * s1 - n * std::log(d[k] * d[k + 1]));
  }
  const double shifted = s1 - n * std::log(d.back());
  return -(first + std::log(n) * (2 * shifted * shifted - n * s3) + n * s2 - s1 * s1) / (n * n);
}

double numeric(const DescendingDistances& d, int order) { return psi_numeric(d, order).value; }

}  // namespace

TEST(Psi1, ConstantIsZero) {
  EXPECT_EQ(psi1(seq({3, 3, 3, 3, 3})), 0.0);
  EXPECT_EQ(psi1(seq({0.2, 0.2})), 0.0);
}

TEST(Psi1, FourTwoOne) {
  const auto d = seq({4, 2, 1});
  const double hand = (2 * std::log(2.0) / 3) * std::log(0.5) + (std::log(3.0) / 3) * std::log(8.0);
  EXPECT_NEAR(psi1(d), hand, 1e-15);
  EXPECT_NEAR(psi1(d), 0.441198, 1e-6);
  EXPECT_NEAR(psi1(d), numeric(d, 1), 1e-6);
}

TEST(Psi1, TwoOne) {
  const auto d = seq({2, 1});
  EXPECT_NEAR(psi1(d), std::log(2.0) * std::log(2.0) / 2, 1e-15);
  EXPECT_NEAR(numeric(d, 1), 0.24023, 1e-5);
}

TEST(Psi1, Errors) {
  EXPECT_THROW(psi1(seq({1})), SizeError);
  EXPECT_THROW(psi1(seq({1, 0})), DomainError);
  EXPECT_THROW(psi2_conjectured(seq({2})), SizeError);
}

TEST(Psi2, ConstantIsZero) { EXPECT_NEAR(psi2_conjectured(seq({5, 5, 5, 5})), 0.0, 1e-15); }

TEST(Psi2, EOne) {
  const auto d = seq({std::exp(1.0), 1.0});
  EXPECT_NEAR(psi2_conjectured(d), -0.25, 1e-15);
  EXPECT_NEAR(numeric(d, 2), -0.25, 1e-4);
}

TEST(Psi2, FourTwoOne) {
  const auto d = seq({4, 2, 1});
  EXPECT_NEAR(psi2_conjectured(d), numeric(d, 2), 1e-4);
  EXPECT_NEAR(psi2_conjectured(d), psi2_verbatim(d), 1e-13);
}

TEST(Psi2, MatchesVerbatimConjecture) {
  RandomStream rs(21, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = random_sequence(rs, 200);
    EXPECT_NEAR(psi2_conjectured(d), psi2_verbatim(d), 1e-9 * std::max(1.0, std::abs(psi2_verbatim(d))));
  }
}

TEST(OracleEquivalence, RandomSequences) {
  RandomStream rs(22, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_sequence(rs, 200);
    const auto est = psi_numeric_all(d, 2);
    EXPECT_NEAR(psi1(d), est[0].value, 1e-6) << "n = " << d.size();
    EXPECT_NEAR(psi2_conjectured(d), est[1].value, 1e-4) << "n = " << d.size();
  }
}

TEST(PsiNumeric, ConstantHigherOrders) {
  const auto d = seq({2, 2, 2});
  for (int order = 1; order <= 4; ++order) EXPECT_NEAR(numeric(d, order), 0.0, 1e-9);
}

TEST(PsiNumeric, ApproximatesNegLog) {
  // d_i = -ln((i - 1/2) / n) makes f_D a midpoint sampling of -ln x.
  const std::size_t n = 100000;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = -std::log((static_cast<double>(i) + 0.5) / n);
  const auto d = seq(v);
  EXPECT_NEAR(psi1(d), 1.0, 0.01);
  EXPECT_NEAR(psi2_conjectured(d), -kZeta2, 0.01);
  EXPECT_NEAR(numeric(d, 2), -kZeta2, 0.01);
}

TEST(PsiNumeric, OrderRange) {
  EXPECT_THROW(psi_numeric(seq({2, 1}), 0), DomainError);
  EXPECT_THROW(psi_numeric(seq({2, 1}), 5), DomainError);
}

TEST(Properties, ScaleInvariance) {
  RandomStream rs(23, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = random_sequence(rs, 300);
    for (double lambda : {1e-3, 0.5, 7.0, 1e4}) {
      const auto s = d.scaled(lambda);
      EXPECT_NEAR(psi1(s), psi1(d), 1e-12);
      EXPECT_NEAR(psi2_conjectured(s), psi2_conjectured(d), 1e-12);
      const auto a = level_derivatives(d, 4), b = level_derivatives(s, 4);
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(a[k], b[k], 1e-12 * std::max(1.0, std::abs(a[k])));
    }
  }
}

TEST(Properties, Psi1NonNegative) {
  RandomStream rs(24, 0);
  for (int trial = 0; trial < 1000; ++trial) EXPECT_GE(psi1(random_sequence(rs, 100)), -1e-12);
}

TEST(Properties, LevelSecondIsNegativeSquaredCv) {
  RandomStream rs(25, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = random_sequence(rs, 300);
    double mean = 0, var = 0;
    for (double x : d.values()) mean += x;
    mean /= d.size();
    for (double x : d.values()) var += (x - mean) * (x - mean);
    var /= d.size();
    EXPECT_NEAR(level_derivatives(d, 2)[1], -var / (mean * mean), 1e-12);
  }
}

TEST(Level, Constant) {
  for (double v : level_derivatives(seq({4, 4, 4}), 5)) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(Level, TwoOneOne) {
  const auto lam = level_derivatives(seq({2, 1, 1}), 3);
  EXPECT_NEAR(lam[1], -1.0 / 8.0, 1e-15);
  // -1 - int_0^1 f_{D*} ln x: f_{D*} = 3/2 on [0, 1/3), 3/4 on [1/3, 1).
  const double quad = -1.0 - integrate([](double x) { return 1.5 * std::log(x); }, Interval(0, 1.0 / 3), 1e-13) -
                      integrate([](double x) { return 0.75 * std::log(x); }, Interval(1.0 / 3, 1), 1e-13);
  EXPECT_NEAR(lam[0], quad, 1e-10);
  EXPECT_NEAR(lam[0], 0.27465, 1e-5);
}

TEST(Level, ZerosAllowedButNotAllZero) {
  EXPECT_NO_THROW(level_derivatives(seq({1, 0, 0}), 3));
  EXPECT_THROW(level_derivatives(seq({0, 0}), 2), DomainError);
}

TEST(SlideNumbers, TwoPointsAreZero) {
  const int orders[] = {1, 2};
  const auto r = slide_numbers(PointSet::euclidean({0.3, 8.0}, 1), orders);
  EXPECT_EQ(r.at(1), 0.0);
  EXPECT_NEAR(r.at(2), 0.0, 1e-15);
  const int one[] = {1};
  EXPECT_EQ(assembly_numbers(PointSet::euclidean({0, 1}, 1), one).at(1), 0.0);
}

TEST(SlideNumbers, ZeroOneThree) {
  const int orders[] = {1, 2, 3};
  const auto r = slide_numbers(PointSet::euclidean({0, 1, 3}, 1), orders);
  const double ln2 = std::log(2.0), ln3 = std::log(3.0);
  EXPECT_NEAR(r.at(1), ln2 * ln3 / 3.0, 1e-15);
  EXPECT_NEAR(r.at(1), 0.253833, 1e-6);
  EXPECT_LT(r.oracle_error.at(1), 1e-6);
  EXPECT_LT(r.oracle_error.at(2), 1e-4);
  EXPECT_EQ(r.method.at(1), StatMethod::closed_form);
  EXPECT_EQ(r.method.at(2), StatMethod::conjectured_closed_form);
  EXPECT_EQ(r.method.at(3), StatMethod::numeric_oracle);
  EXPECT_TRUE(r.reliable.at(3));
}

TEST(SlideNumbers, OrderValidation) {
  const int bad[] = {5};
  EXPECT_THROW(slide_numbers(PointSet::euclidean({0, 1, 3}, 1), bad), ConfigError);
}

TEST(SlideNumbers, PermutationInvariance) {
  auto pts = generate(parse_process("uniform_cube:m=2"), 400);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < pts.size(); ++i) rows.push_back({pts.point(i)[0], pts.point(i)[1]});
  std::reverse(rows.begin(), rows.end());
  std::rotate(rows.begin(), rows.begin() + 37, rows.end());
  const int orders[] = {1, 2};
  const auto a = slide_numbers(pts, orders), b = slide_numbers(PointSet::from_rows(rows), orders);
  EXPECT_EQ(a.at(1), b.at(1));
  EXPECT_EQ(a.at(2), b.at(2));
}

TEST(SlideNumbers, UniformLine) {
  const int orders[] = {1};
  const auto r = slide_numbers(generate(parse_process("uniform_cube", 5), 10000), orders);
  EXPECT_NEAR(r.at(1), 1.0, 0.05);
}

TEST(AssemblyNumbers, UniformLineNearQuarterPi) {
  const int orders[] = {1};
  double sum = 0;
  for (int r = 0; r < 10; ++r) {
    RandomStream rs(31, r);
    sum += assembly_numbers(generate(parse_process("uniform_cube"), 1000, rs), orders).at(1);
  }
  EXPECT_NEAR(sum / 10, 0.7897, 0.01);
}

TEST(AssemblyNumbers, SquareSizeHundred) {
  const int orders[] = {1};
  double sum = 0;
  for (int r = 0; r < 100; ++r) {
    RandomStream rs(32, r);
    sum += assembly_numbers(generate(parse_process("uniform_cube:m=2"), 100, rs), orders).at(1);
  }
  EXPECT_NEAR(sum / 100, 0.4612, 3 * 0.0061 / std::sqrt(100.0) * 2);
}

TEST(LevelNumbers, EqualDistancesAreZero) {
  const auto r = level_numbers(PointSet::euclidean({0, 1, 2, 3}, 1), 3);
  for (int order = 1; order <= 3; ++order) EXPECT_NEAR(r.at(order), 0.0, 1e-15);
}

TEST(LevelNumbers, ZeroOneThreeMatchesDerivatives) {
  const auto r = level_numbers(PointSet::euclidean({0, 1, 3}, 1), 3);
  const auto lam = level_derivatives(seq({2, 1, 1}), 3);
  for (int order = 1; order <= 3; ++order) EXPECT_EQ(r.at(order), lam[order - 1]);
}

TEST(LevelNumbers, DuplicatesAllowedButNotAllIdentical) {
  EXPECT_NO_THROW(level_numbers(PointSet::euclidean({0, 0, 1, 3}, 1), 2));
  EXPECT_THROW(level_numbers(PointSet::euclidean({2, 2, 2}, 1), 2), DomainError);
}

TEST(LevelNumbers, UniformMeansNearDerangementPattern) {
  double l1 = 0, l2 = 0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    RandomStream rs(33, r);
    const auto rep = level_numbers(generate(parse_process("uniform_cube"), 10000, rs), 2);
    l1 += rep.at(1) / reps;
    l2 += rep.at(2) / reps;
  }
  EXPECT_NEAR(l1, 1.0, 0.1);
  EXPECT_NEAR(l2, -1.0, 0.1);
}

TEST(DimensionEstimates, Examples) {
  SlideReport r;
  r.values[1] = 0.5;
  r.values[2] = -kZeta2 / 4.0;
  auto e = dimension_estimates(r);
  EXPECT_DOUBLE_EQ(e.estimates.at(1), 2.0);
  EXPECT_NEAR(e.estimates.at(2), 2.0, 1e-14);

  r.values[2] = -0.4096;
  e = dimension_estimates(r);
  EXPECT_NEAR(e.estimates.at(2), pi / std::sqrt(6 * 0.4096), 1e-14);
  EXPECT_NEAR(e.estimates.at(2), 2.0039, 1e-4);
}

TEST(DimensionEstimates, WrongSignsFlagged) {
  SlideReport r;
  r.values[1] = -0.1;
  r.values[2] = 0.3;
  r.values[3] = -1.0;
  const auto e = dimension_estimates(r);
  EXPECT_TRUE(e.estimates.empty());
  EXPECT_EQ(e.flags.size(), 3u);
}

TEST(DimensionEstimates, HigherOrdersInvertTangibleValues) {
  for (double d : {0.63, 1.0, 2.5}) {
    SlideReport r;
    for (int n = 1; n <= 4; ++n) r.values[n] = tangible_value(n, d);
    const auto e = dimension_estimates(r);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(e.estimates.at(n), d, 1e-12) << n;
  }
  EXPECT_NEAR(tangible_coefficient(2), -kZeta2, 1e-15);
  EXPECT_NEAR(tangible_coefficient(3), 2 * 2 * 1.2020569031595943, 1e-13);
}

TEST(Tangibility, ExactUniform) {
  SlideReport r;
  r.values[1] = 1.0;
  r.values[2] = -kZeta2;
  const auto v = tangibility_check(r);
  EXPECT_TRUE(v.tangible);
  EXPECT_DOUBLE_EQ(*v.consensus_dimension, 1.0);
  EXPECT_NEAR(v.residuals.at(2), 0.0, 1e-15);
}

TEST(Tangibility, NormalIsIntangible) {
  SlideReport r;
  r.values[1] = 1.2664;
  r.values[2] = -1.0273;
  const auto v = tangibility_check(r, 0.15);
  EXPECT_FALSE(v.tangible);
  EXPECT_NEAR(tangible_value(2, 1 / 1.2664), -2.638, 1e-3);
}

TEST(Tangibility, CantorIsTangible) {
  SlideReport r;
  r.values[1] = 1.6014;
  r.values[2] = -4.1464;
  const auto v = tangibility_check(r, 0.05);
  EXPECT_TRUE(v.tangible);
  EXPECT_NEAR(*v.consensus_dimension, 0.6245, 1e-4);
  EXPECT_NEAR(*v.consensus_dimension, std::log(2.0) / std::log(3.0), 0.01);
}

TEST(Tangibility, VerdictMatchesMaxResidual) {
  RandomStream rs(34, 0);
  for (int trial = 0; trial < 100; ++trial) {
    SlideReport r;
    r.values[1] = 0.2 + rs.uniform();
    r.values[2] = -0.5 - 3 * rs.uniform();
    r.values[3] = 5 * rs.uniform();
    const double tol = 0.05 + 0.3 * rs.uniform();
    const auto v = tangibility_check(r, tol);
    double worst = 0;
    for (const auto& [order, res] : v.residuals) worst = std::max(worst, res);
    EXPECT_EQ(v.tangible, worst <= tol);
  }
}

TEST(Tangibility, Errors) {
  SlideReport one;
  one.values[1] = 1.0;
  EXPECT_THROW(tangibility_check(one), SizeError);
  SlideReport no_first;
  no_first.values[2] = -1.0;
  no_first.values[3] = 2.0;
  EXPECT_THROW(tangibility_check(no_first), ConfigError);
  SlideReport negative;
  negative.values[1] = -0.5;
  negative.values[2] = -1.0;
  const auto v = tangibility_check(negative);
  EXPECT_FALSE(v.tangible);
  EXPECT_FALSE(v.consensus_dimension.has_value());
  EXPECT_FALSE(v.note.empty());
}
