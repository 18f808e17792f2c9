#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "slide/geometry.hpp"
#include "slide/processes.hpp"

using namespace slide;

namespace {

std::vector<double> as_vector(const DescendingDistances& d) { return {d.values().begin(), d.values().end()}; }

PointSet random_cloud(std::size_t k, std::size_t dim, std::uint64_t seed) {
  RandomStream rs(seed, 0);
  std::vector<double> c(k * dim);
  for (double& x : c) x = rs.uniform();
  return PointSet::euclidean(std::move(c), dim);
}

}  // namespace

TEST(NearestNeighbor, Line) {
  const auto d = nn_distances(PointSet::euclidean({0, 1, 3}, 1));
  EXPECT_EQ(as_vector(d), (std::vector<double>{2, 1, 1}));
  EXPECT_EQ(d.origin(), DistanceOrigin::nearest_neighbor);
}

TEST(NearestNeighbor, MutualPair) {
  EXPECT_EQ(as_vector(nn_distances(PointSet::euclidean({0, 5}, 1))), (std::vector<double>{5, 5}));
}

TEST(NearestNeighbor, DuplicateIsError) {
  try {
    nn_distances(PointSet::euclidean({0, 1, 1}, 1));
    FAIL();
  } catch (const DuplicatePointError& e) {
    EXPECT_EQ(e.first(), 1u);
    EXPECT_EQ(e.second(), 2u);
  }
}

TEST(NearestNeighbor, TooFewPoints) {
  EXPECT_THROW(nn_distances(PointSet::euclidean({1.0}, 1)), SizeError);
  EXPECT_THROW(pairwise_distances(PointSet::euclidean({}, 2)), SizeError);
}

TEST(NearestNeighbor, DuplicatesAllowedForLevelStatistics) {
  NearestNeighborOptions opts;
  opts.allow_duplicates = true;
  const auto d = nn_distances(PointSet::euclidean({0, 1, 1}, 1), opts);
  EXPECT_EQ(as_vector(d), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(d.origin(), DistanceOrigin::raw);
}

TEST(Pairwise, Line) {
  const auto d = pairwise_distances(PointSet::euclidean({0, 1, 3}, 1));
  EXPECT_EQ(as_vector(d), (std::vector<double>{3, 2, 1}));
  EXPECT_EQ(d.origin(), DistanceOrigin::pairwise);
}

TEST(Pairwise, PythagoreanPair) {
  EXPECT_EQ(as_vector(pairwise_distances(PointSet::from_rows({{0, 0}, {3, 4}}))), (std::vector<double>{5}));
}

TEST(Pairwise, Count) { EXPECT_EQ(pairwise_distances(random_cloud(100, 2, 1)).size(), 4950u); }

TEST(Pairwise, CapIsConfigError) {
  EXPECT_THROW(pairwise_distances(random_cloud(50, 1, 2), 49), ConfigError);
  EXPECT_NO_THROW(pairwise_distances(random_cloud(50, 1, 2), 50));
}

TEST(Pairwise, DuplicateIsError) {
  EXPECT_THROW(pairwise_distances(PointSet::from_rows({{0, 0}, {1, 1}, {0, 0}})), DuplicatePointError);
}

TEST(Isometry, TranslationAndRotationInvariance) {
  const auto base = random_cloud(300, 2, 3);
  const double angle = 0.7, c = std::cos(angle), s = std::sin(angle);
  std::vector<double> moved;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto p = base.point(i);
    moved.push_back(c * p[0] - s * p[1] + 10.25);
    moved.push_back(s * p[0] + c * p[1] - 3.5);
  }
  const auto other = PointSet::euclidean(moved, 2);
  const auto a = nn_distances(base), b = nn_distances(other);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  const auto pa = pairwise_distances(base), pb = pairwise_distances(other);
  for (std::size_t i = 0; i < pa.size(); ++i) ASSERT_NEAR(pa[i], pb[i], 1e-12);
}

TEST(Scaling, DistancesScaleLinearly) {
  const auto base = random_cloud(200, 3, 4);
  for (double lambda : {0.001, 2.0, 1e4}) {
    std::vector<double> c(base.coordinates().begin(), base.coordinates().end());
    for (double& x : c) x *= lambda;
    const auto scaled = PointSet::euclidean(c, 3);
    const auto a = nn_distances(base), b = nn_distances(scaled);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i], lambda * a[i], 1e-14 * lambda * a[i]);
  }
}

TEST(KdTree, AgreesExactlyWithBruteForce) {
  for (std::size_t dim : {1u, 2u, 3u, 5u}) {
    for (std::size_t k : {2u, 9u, 100u, 500u}) {
      const auto pts = random_cloud(k, dim, 100 + k + dim);
      NearestNeighborOptions brute, tree;
      brute.brute_force_limit = k;
      tree.brute_force_limit = 0;
      EXPECT_EQ(nearest_neighbor_distances_unsorted(pts, brute), nearest_neighbor_distances_unsorted(pts, tree))
          << "dim " << dim << " k " << k;
    }
  }
}

TEST(KdTree, HandlesClusteredAndLatticeData) {
  // Integer lattice: many equal distances and ties on split planes.
  std::vector<double> c;
  for (int x = 0; x < 20; ++x)
    for (int y = 0; y < 15; ++y) {
      c.push_back(x);
      c.push_back(y);
    }
  const auto lattice = PointSet::euclidean(c, 2);
  NearestNeighborOptions tree;
  tree.brute_force_limit = 0;
  for (double v : nearest_neighbor_distances_unsorted(lattice, tree)) EXPECT_EQ(v, 1.0);

  const auto cantor = generate(parse_process("cantor"), 500);
  NearestNeighborOptions brute;
  brute.brute_force_limit = 1000;
  EXPECT_EQ(nearest_neighbor_distances_unsorted(cantor, brute), nearest_neighbor_distances_unsorted(cantor, tree));
}

TEST(CustomMetric, AbstractElements) {
  // Points on a circle of circumference 12 with arc-length distance.
  const std::vector<double> pos = {0, 1, 5, 11};
  auto metric = [&](std::size_t i, std::size_t j) {
    const double d = std::abs(pos[i] - pos[j]);
    return std::min(d, 12.0 - d);
  };
  const auto set = PointSet::with_metric(pos.size(), metric);
  EXPECT_TRUE(set.metric_spot_check());
  EXPECT_TRUE(set.distinct());
  EXPECT_EQ(as_vector(nn_distances(set)), (std::vector<double>{4, 1, 1, 1}));
  EXPECT_EQ(pairwise_distances(set).size(), 6u);
}

TEST(CustomMetric, SpotCheckCatchesAsymmetry) {
  const auto set = PointSet::with_metric(5, [](std::size_t i, std::size_t j) { return i == j ? 0.0 : double(i); });
  EXPECT_FALSE(set.metric_spot_check());
}

TEST(ConsecutiveGaps, SortedDifferences) {
  const auto d = consecutive_gaps(PointSet::euclidean({3, 0, 1, 7}, 1));
  EXPECT_EQ(as_vector(d), (std::vector<double>{4, 2, 1}));
  EXPECT_THROW(consecutive_gaps(PointSet::euclidean({0, 0, 1, 1}, 2)), DomainError);
  EXPECT_THROW(consecutive_gaps(PointSet::euclidean({0, 1, 1}, 1)), DuplicatePointError);
}

TEST(PointSet, Validation) {
  EXPECT_THROW(PointSet::euclidean({1, 2, 3}, 2), DomainError);
  EXPECT_THROW(PointSet::euclidean({1, NAN}, 1), DomainError);
  EXPECT_THROW(PointSet::from_rows({{1, 2}, {3}}), DomainError);
}

TEST(DescendingDistances, Invariants) {
  EXPECT_THROW(DescendingDistances({1, 2}, DistanceOrigin::raw), DomainError);
  EXPECT_THROW(DescendingDistances({1, 0}, DistanceOrigin::nearest_neighbor), DomainError);
  EXPECT_NO_THROW(DescendingDistances({1, 0}, DistanceOrigin::raw));
  const auto d = DescendingDistances::sorted({1, 3, 2}, DistanceOrigin::raw);
  EXPECT_EQ(as_vector(d), (std::vector<double>{3, 2, 1}));
}
