#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>

#include "lauricella/quadrature.hpp"

using namespace lauricella;

TEST(GaussJacobi, Legendre) {
  auto r = gauss_jacobi_rule(0.0, 0.0, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.weights[0], 1.0, 1e-14);
  EXPECT_NEAR(r.weights[1], 1.0, 1e-14);
}

TEST(GaussJacobi, Chebyshev) {
  for (int n : {1, 5, 16, 33}) {
    auto r = gauss_jacobi_rule(-0.5, -0.5, n);
    for (int k = 1; k <= n; ++k) {
      // eigenvalues ascend; cos((2k-1) pi / 2n) descends in k
      EXPECT_NEAR(r.nodes[n - k], std::cos((2.0 * k - 1.0) * M_PI / (2.0 * n)), 1e-13);
      EXPECT_NEAR(r.weights[n - k], M_PI / n, 1e-13);
    }
  }
}

TEST(GaussJacobi, MomentsAgainstAdaptiveOracle) {
  const double a = -1.0 / 3.0, b = -0.25;
  auto r = gauss_jacobi_rule(a, b, 8);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int j = 0; j <= 5; ++j) {
    double ref = ts.integrate([&](double x, double xc) {
      // xc is the distance to the nearer endpoint, for accuracy at the singularities
      double om = x > 0 ? xc : 1.0 - x;
      double op = x < 0 ? -xc : 1.0 + x;
      return std::pow(om, a) * std::pow(op, b) * std::pow(x, j);
    }, -1.0, 1.0);
    double got = r.apply([&](double x) { return std::pow(x, j); });
    EXPECT_NEAR(got, ref, 1e-12) << "j=" << j;
  }
}

TEST(GaussJacobi, ExactnessDegree) {
  // Exact for degree 2n-1 with the closed-form Beta moments of (1+x)^j.
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> ex(-0.95, 0.0);
  for (int t = 0; t < 30; ++t) {
    double a = ex(rng), b = ex(rng);
    const int n = 6;
    auto r = gauss_jacobi_rule(a, b, n);
    for (int j = 0; j <= 2 * n - 1; ++j) {
      double ref = std::exp((a + b + j + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + j + 1) -
                            std::lgamma(a + b + j + 2));
      double got = r.apply([&](double x) { return std::pow(1.0 + x, j); });
      EXPECT_NEAR(got / ref, 1.0, 1e-12);
    }
  }
}

TEST(GaussJacobi, Structure) {
  auto r = gauss_jacobi_rule(-0.7, -0.2, 40);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r.weights[i], 0.0);
    EXPECT_GT(r.nodes[i], -1.0);
    EXPECT_LT(r.nodes[i], 1.0);
    if (i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
  }
  EXPECT_THROW(gauss_jacobi_rule(-1.0, 0.0, 4), Error);
  EXPECT_THROW(gauss_jacobi_rule(0.0, 0.0, 0), Error);
  EXPECT_EQ(cached_rule(-0.7, -0.2, 40).get(), cached_rule(-0.7, -0.2, 40).get());
}
