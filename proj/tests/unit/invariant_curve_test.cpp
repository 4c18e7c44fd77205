#include <cmath>

#include <gtest/gtest.h>

#include "bluesky/circle_bounds.hpp"
#include "bluesky/invariant_curve.hpp"
#include "demo_configs.hpp"
#include "oracles.hpp"
#include "random_configs.hpp"

using namespace bluesky;

namespace {

ModelConfig circle_config(int m) {
  ModelConfig c;
  c.m = m;
  c.n = 3;
  c.gamma = 1.0;
  c.lambda = 1.6;
  c.beta = 2.2;
  return c;
}

}  // namespace

TEST(GraphTransform, UncoupledCurveIsExactAfterOneStep) {
  auto c = circle_config(1);
  c.alpha = FourierSeries(1.0, {0.3}, {0.1});
  c.h = FourierSeries(0, {}, {0.2});
  const auto model = validate_config(c);
  const double mu = 1e-4;
  const auto curve = graph_transform_curve(model, mu, 256);
  EXPECT_LE(curve.iterations, 2);
  // Nodes are exact; between nodes only the Hermite error remains.
  EXPECT_LT(curve.residual_sup, 1e-7);

  // Oracle: X = alpha(t)^nu where t solves the leading-order circle map
  // omega + t + h(t) - ln alpha(t) = theta (mod 2pi), found by bisection.
  const double om = omega(model, mu);
  auto F = [&](double t) { return om + t + c.h(t) - std::log(c.alpha(t)); };
  for (int i = 0; i < 256; i += 5) {
    const double th = curve.theta_grid[static_cast<std::size_t>(i)];
    const double target = th + kTwoPi * std::ceil((F(0.0) - th) / kTwoPi);
    double lo = 0.0, hi = kTwoPi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (F(mid) < target ? lo : hi) = mid;
    }
    EXPECT_NEAR(curve.values(0, i), std::pow(c.alpha(lo), model.nu()), 1e-12) << "node " << i;
    EXPECT_EQ(curve.values(1, i), 0.0);
  }
}

TEST(GraphTransform, ConstantKleinBottle) {
  const auto model = validate_config(circle_config(-1));
  const auto curve = graph_transform_curve(model, 1e-4, 128);
  EXPECT_EQ(curve.orientation, Orientation::Reversing);
  for (int i = 0; i < 128; ++i) EXPECT_EQ(curve.values(0, i), 1.0);
  EXPECT_EQ(curve.residual_sup, 0.0);
}

TEST(GraphTransform, CoupledTorusAttractsOrbits) {
  auto c = circle_config(1);
  c.alpha = FourierSeries(1.0, {0.4}, {});
  c.coupling_fx = FourierSeries::constant(1e-3);
  c.coupling_hx = FourierSeries::constant(1e-3);
  c.coupling_fy = {FourierSeries(1e-3, {1e-3}, {})};
  c.coupling_hy = {FourierSeries::constant(1e-3)};
  c.g0 = {FourierSeries(0, {1e-3}, {})};
  const auto model = validate_config(c);
  const double mu = 1e-4;
  const auto curve = graph_transform_curve(model, mu);
  EXPECT_LT(curve.residual_sup, 1e-8);
  EXPECT_EQ(curve.orientation, Orientation::Preserving);

  bluesky::testing::ConfigSampler s(3);
  for (int i = 0; i < 50; ++i) {
    const auto end = bluesky::testing::iterate(model, mu, s.point(model), 1000);
    EXPECT_LT(curve.distance(end), 1e-6) << "orbit " << i;
  }
}

TEST(GraphTransform, RejectsWrongDegreeAndFoldedLift) {
  auto c = circle_config(0);
  EXPECT_THROW(graph_transform_curve(validate_config(c), 1e-4), Error);
  // 1 + s < 0 somewhere: the theta-lift folds.
  c = circle_config(1);
  c.h = FourierSeries(0, {}, {1.5});
  try {
    graph_transform_curve(validate_config(c), 1e-4, 256);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACircleMap);
  }
}

TEST(GraphTransform, HermiteInterpolantReproducesCubicData) {
  InvariantCurve curve;
  const int n = 64;
  curve.theta_grid.resize(n);
  curve.values.resize(1, n);
  curve.slopes.resize(1, n);
  for (int i = 0; i < n; ++i) {
    const double th = kTwoPi * i / n;
    curve.theta_grid[static_cast<std::size_t>(i)] = th;
    curve.values(0, i) = std::sin(th);
    curve.slopes(0, i) = std::cos(th);
  }
  // Cubic Hermite error bound: h^4 / 384 times the sup of the fourth derivative.
  const double tol = std::pow(kTwoPi / n, 4) / 384.0;
  for (int i = 0; i < 1000; ++i) {
    const double th = 0.0071 * i;
    EXPECT_NEAR(curve.evaluate(th)[0], std::sin(th), tol);
    EXPECT_NEAR(curve.derivative(th)[0], std::cos(th), 1e-4);
  }
}

TEST(CircleDegree, MatchesM) {
  using bluesky::testing::demo_model;
  EXPECT_EQ(circle_degree(demo_model("m0"), 1e-5), 0);
  EXPECT_EQ(circle_degree(demo_model("m_minus1"), 1e-5), -1);
  EXPECT_EQ(circle_degree(demo_model("m1"), 1e-5), 1);
  ModelConfig c;
  c.m = 3;
  c.n = 4;
  c.h = FourierSeries(0, {}, {0, 0.2});
  EXPECT_EQ(circle_degree(validate_config(c), 1e-5), 3);
}
