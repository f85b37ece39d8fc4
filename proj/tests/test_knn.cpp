#include <gtest/gtest.h>

#include <cmath>

#include "copent/knn.hpp"
#include "test_util.hpp"

namespace copent {
namespace {

std::vector<double> kth(const PointsView& p, std::size_t k, Norm norm, Backend backend) {
  std::vector<double> out;
  for (const auto& r : kth_neighbor_distances(p, k, norm, backend)) out.push_back(r.kth_distance);
  return out;
}

TEST(Knn, LineExample) {
  const std::vector<double> v{0, 1, 3};
  const PointsView p{v, 3, 1};
  for (auto backend : {Backend::naive, Backend::kdtree}) {
    EXPECT_EQ(kth(p, 1, Norm::chebyshev, backend), (std::vector<double>{1, 1, 2}));
    const auto r = kth_neighbor_distances(p, 1, Norm::chebyshev, backend);
    EXPECT_EQ(r[0].neighbor_indices, (std::vector<std::size_t>{1}));
    EXPECT_EQ(r[1].neighbor_indices, (std::vector<std::size_t>{0}));
    EXPECT_EQ(r[2].neighbor_indices, (std::vector<std::size_t>{1}));
  }
}

TEST(Knn, PlaneExampleChebyshev) {
  const std::vector<double> v{0, 0, 1, 0, 0, 2};
  const PointsView p{v, 3, 2};
  for (auto backend : {Backend::naive, Backend::kdtree}) {
    EXPECT_EQ(kth(p, 1, Norm::chebyshev, backend), (std::vector<double>{1, 1, 2}));
  }
}

TEST(Knn, DistanceTieGoesToLowerIndex) {
  const std::vector<double> v{5, 4, 6, 0};
  const PointsView p{v, 4, 1};
  for (auto backend : {Backend::naive, Backend::kdtree}) {
    const auto r = kth_neighbor_distances(p, 2, Norm::chebyshev, backend);
    EXPECT_EQ(r[0].neighbor_indices, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(r[0].neighbor_distances, (std::vector<double>{1, 1}));
  }
}

TEST(Knn, DuplicatePairHasZeroDistance) {
  const std::vector<double> v{0.5, 0.5, 0.1, 0.9, 0.5, 0.5, 0.3, 0.3};
  const PointsView p{v, 4, 2};
  for (auto backend : {Backend::naive, Backend::kdtree}) {
    const auto r = kth_neighbor_distances(p, 1, Norm::chebyshev, backend);
    EXPECT_EQ(r[0].kth_distance, 0.0);
    EXPECT_EQ(r[2].kth_distance, 0.0);
    EXPECT_EQ(r[0].neighbor_indices.front(), 2u);
    EXPECT_EQ(r[2].neighbor_indices.front(), 0u);
  }
}

TEST(Knn, Errors) {
  const std::vector<double> v{0, 1, 3};
  EXPECT_THROW(kth_neighbor_distances(PointsView{v, 3, 1}, 3), std::invalid_argument);
  EXPECT_THROW(kth_neighbor_distances(PointsView{v, 3, 1}, 0), std::invalid_argument);
  EXPECT_THROW(kth_neighbor_distances(PointsView{{}, 0, 1}, 1), std::invalid_argument);
  const std::vector<double> bad{0, std::nan(""), 3};
  EXPECT_THROW(kth_neighbor_distances(PointsView{bad, 3, 1}, 1), std::invalid_argument);
}

TEST(Knn, BackendsAgreeOnRandomSets) {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t T = 2 + static_cast<std::size_t>(rng.uniform() * 600);
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * 5);
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * std::min<double>(8, T - 1));
    const bool coarse = trial % 3 == 0;
    std::vector<double> v(T * d);
    for (auto& x : v) x = coarse ? std::floor(rng.uniform() * 6) : rng.normal();
    const PointsView p{v, T, d};
    for (auto norm : {Norm::chebyshev, Norm::euclidean}) {
      const auto a = kth_neighbor_distances(p, k, norm, Backend::naive);
      const auto b = kth_neighbor_distances(p, k, norm, Backend::kdtree);
      ASSERT_EQ(a, b) << "trial " << trial << " T=" << T << " d=" << d << " k=" << k;
    }
  }
}

TEST(Knn, ThreadCountDoesNotChangeResults) {
  const auto m = testing::normal_matrix(700, 3, 5);
  const auto a = kth_neighbor_distances(m.view(), 4, Norm::chebyshev, Backend::kdtree, 1);
  const auto b = kth_neighbor_distances(m.view(), 4, Norm::chebyshev, Backend::kdtree, 4);
  EXPECT_EQ(a, b);
}

TEST(Knn, NeighborListInvariants) {
  const auto m = testing::normal_matrix(300, 2, 8);
  for (auto norm : {Norm::chebyshev, Norm::euclidean}) {
    const auto res = kth_neighbor_distances(m.view(), 5, norm);
    for (const auto& r : res) {
      ASSERT_EQ(r.neighbor_indices.size(), 5u);
      EXPECT_TRUE(std::is_sorted(r.neighbor_distances.begin(), r.neighbor_distances.end()));
      EXPECT_EQ(r.kth_distance, r.neighbor_distances.back());
      for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_NE(r.neighbor_indices[j], r.query_index);
        EXPECT_EQ(distance(m.row(r.query_index), m.row(r.neighbor_indices[j]), norm),
                  r.neighbor_distances[j]);
      }
    }
  }
}

TEST(Knn, TranslationInvariance) {
  // Dyadic grid coordinates keep differences exact under a dyadic offset.
  Rng rng(3);
  std::vector<double> v(400 * 3), shifted(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::floor(rng.uniform() * 4096) / 64.0;
    shifted[i] = v[i] + 1024.0;
  }
  const PointsView a{v, 400, 3}, b{shifted, 400, 3};
  EXPECT_EQ(kth_neighbor_distances(a, 3, Norm::chebyshev), kth_neighbor_distances(b, 3, Norm::chebyshev));

  // Generic reals under euclidean: same neighbors, distances within rounding.
  const auto m = testing::normal_matrix(400, 3, 12);
  std::vector<double> moved(m.values().begin(), m.values().end());
  for (auto& x : moved) x += 0.375;
  const auto ra = kth_neighbor_distances(m.view(), 3, Norm::euclidean);
  const auto rb = kth_neighbor_distances(PointsView{moved, 400, 3}, 3, Norm::euclidean);
  for (std::size_t t = 0; t < ra.size(); ++t) {
    EXPECT_NEAR(ra[t].kth_distance, rb[t].kth_distance, 1e-14 * (1 + ra[t].kth_distance));
  }
}

TEST(CountWithin, Examples) {
  const std::vector<double> p{0, 1, 2, 5};
  EXPECT_EQ(count_within(p, 1, 1.5, true), 2u);
  EXPECT_EQ(count_within(p, 1, 0.5, true), 0u);
  EXPECT_EQ(count_within(p, 1, 100.0, true), 3u);
  EXPECT_EQ(count_within(p, 1, 1.0, true), 0u);
  EXPECT_EQ(count_within(p, 1, 1.0, false), 2u);
}

TEST(CountWithin, SortedCounterMatchesBruteForce) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> p(150);
    for (auto& x : p) x = trial % 2 ? std::floor(rng.uniform() * 20) / 4 : rng.normal();
    const MarginalCounter counter(p);
    for (std::size_t c = 0; c < p.size(); ++c) {
      // Radii equal to actual gaps hit the strict/non-strict boundary.
      const double r = std::abs(p[(c * 7 + 3) % p.size()] - p[c]) + (trial % 4 == 1 ? 1e-3 : 0.0);
      for (bool strict : {true, false}) {
        ASSERT_EQ(counter.count(c, r, strict), count_within(p, c, r, strict));
      }
    }
  }
}

}  // namespace
}  // namespace copent
