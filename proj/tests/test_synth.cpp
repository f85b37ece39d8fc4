#include <gtest/gtest.h>

#include <cmath>

#include "copent/synth.hpp"

namespace copent {
namespace {

double correlation(const SampleMatrix& m) {
  const double n = static_cast<double>(m.rows());
  double mx = 0, my = 0;
  for (std::size_t t = 0; t < m.rows(); ++t) {
    mx += m(t, 0);
    my += m(t, 1);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t t = 0; t < m.rows(); ++t) {
    sxy += (m(t, 0) - mx) * (m(t, 1) - my);
    sxx += (m(t, 0) - mx) * (m(t, 0) - mx);
    syy += (m(t, 1) - my) * (m(t, 1) - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

TEST(GaussianSample, Correlation) {
  EXPECT_NEAR(correlation(gaussian_sample({0.0, 100000, 1})), 0.0, 0.02);
  EXPECT_NEAR(correlation(gaussian_sample({0.9, 100000, 1})), 0.9, 0.01);
  EXPECT_NEAR(correlation(gaussian_sample({-0.5, 100000, 2})), -0.5, 0.01);
}

TEST(GaussianSample, Marginals) {
  const auto m = gaussian_sample({0.7, 10000, 3});
  for (std::size_t i = 0; i < 2; ++i) {
    const auto c = m.column(i);
    double mean = 0;
    for (double v : c) mean += v;
    mean /= c.size();
    double var = 0;
    for (double v : c) var += (v - mean) * (v - mean);
    var /= (c.size() - 1);
    EXPECT_NEAR(mean, 0.0, 0.05);
    EXPECT_NEAR(var, 1.0, 0.1);
  }
}

TEST(GaussianSample, Deterministic) {
  EXPECT_EQ(gaussian_sample({0.3, 500, 99}), gaussian_sample({0.3, 500, 99}));
  EXPECT_FALSE(gaussian_sample({0.3, 500, 99}) == gaussian_sample({0.3, 500, 100}));
}

// Frozen stream values. Uniforms depend only on std::mt19937_64 and are
// exact; normals pass through libm, so they get a few ulps of slack.
TEST(GaussianSample, FrozenStream) {
  Rng u(0);
  EXPECT_EQ(u.uniform(), 0x1.4741be2e5a0ecp-3);
  EXPECT_EQ(u.uniform(), 0x1.fbfa74f87c81fp-1);
  EXPECT_EQ(u.uniform(), 0x1.442642fe065dp-5);

  Rng n(0);
  EXPECT_NEAR(n.normal(), 1.9128045292843205, 1e-14);
  EXPECT_NEAR(n.normal(), -0.094479561125843062, 1e-14);
  EXPECT_NEAR(n.normal(), -2.0794079062393949, 1e-14);

  const auto m = gaussian_sample({0.5, 2, 7});
  EXPECT_NEAR(m(1, 0), 1.6105563141402484, 1e-14);
  EXPECT_NEAR(m(1, 1), -0.32062209221799765, 1e-14);
}

TEST(GaussianSample, RejectsDegenerateRho) {
  EXPECT_THROW(gaussian_sample({1.0, 10, 0}), std::invalid_argument);
  EXPECT_THROW(gaussian_sample({-1.2, 10, 0}), std::invalid_argument);
  EXPECT_THROW(gaussian_sample({0.5, 1, 0}), std::invalid_argument);
}

TEST(GaussianMi, ClosedForm) {
  EXPECT_EQ(gaussian_mi_analytic(0.0), 0.0);
  EXPECT_NEAR(gaussian_mi_analytic(0.5), 0.1438410362258905, 1e-7);
  EXPECT_NEAR(gaussian_mi_analytic(0.9), 0.8303656034108256, 1e-7);
  EXPECT_THROW(gaussian_mi_analytic(1.0), std::invalid_argument);
  EXPECT_THROW(gaussian_mi_analytic(-1.0), std::invalid_argument);
}

TEST(GaussianMi, SymmetricAndIncreasing) {
  double prev = -1.0;
  for (int i = 0; i < 99; ++i) {
    const double r = i / 100.0;
    EXPECT_EQ(gaussian_mi_analytic(r), gaussian_mi_analytic(-r));
    EXPECT_GT(gaussian_mi_analytic(r), prev);
    prev = gaussian_mi_analytic(r);
  }
  EXPECT_LT(gaussian_mi_analytic(1e-6), 1e-11);
}

}  // namespace
}  // namespace copent
