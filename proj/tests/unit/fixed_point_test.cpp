#include <cmath>

#include <gtest/gtest.h>

#include "bluesky/circle_bounds.hpp"
#include "bluesky/fixed_point.hpp"
#include "bluesky/lyapunov.hpp"
#include "oracles.hpp"
#include "random_configs.hpp"

using namespace bluesky;

namespace {

ModelConfig uncoupled() {
  ModelConfig c;
  c.m = 0;
  c.n = 3;
  return c;
}

ModelConfig cosine_alpha() {
  ModelConfig c = uncoupled();
  c.alpha = FourierSeries(1.0, {0.3}, {});
  c.coupling_fx = FourierSeries::constant(1e-3);
  c.coupling_hx = FourierSeries::constant(1e-3);
  c.coupling_fy = {FourierSeries::constant(1e-3)};
  c.coupling_hy = {FourierSeries::constant(1e-3)};
  c.g0 = {FourierSeries::constant(1e-3)};
  return c;
}

}  // namespace

TEST(FixedPoint, UncoupledClosedForm) {
  const auto model = validate_config(uncoupled());
  for (double L : {10.0, 12.0}) {
    const auto r = find_fixed_point(model, std::exp(-L), seed_point(model, 0.0));
    EXPECT_NEAR(r.point.theta, std::fmod(L, kTwoPi), 1e-12);
    EXPECT_EQ(r.point.X, 1.0);
    EXPECT_EQ(r.point.Y[0], 0.0);
    EXPECT_EQ(r.residual, 0.0);
    for (const auto& z : r.multipliers) EXPECT_EQ(std::abs(z), 0.0);
    EXPECT_TRUE(r.stable());
  }
}

TEST(FixedPoint, AgreesWithForwardIteration) {
  const auto model = validate_config(cosine_alpha());
  const double mu = 1e-5;
  const auto r = find_fixed_point(model, mu, seed_point(model, 1.0));
  EXPECT_LT(r.residual, 1e-12);
  for (const auto& z : r.multipliers) EXPECT_LT(std::abs(z), 1.0);

  bluesky::testing::ConfigSampler s(5);
  for (int i = 0; i < 100; ++i) {
    const auto end = bluesky::testing::iterate(model, mu, s.point(model), 10'000);
    EXPECT_LT(torus_distance(end, r.point), 1e-9) << "seed " << i;
  }
}

TEST(FixedPoint, ResidualIsCircular) {
  const auto model = validate_config(cosine_alpha());
  const auto r = find_fixed_point(model, 1e-7, seed_point(model, 4.0));
  const auto img = return_map(r.point, 1e-7, model).point;
  EXPECT_LT(torus_distance(img, r.point), 1e-12);
  EXPECT_GT(r.flight_time, 0.0);
  EXPECT_NEAR(r.flight_time, -std::log(1e-7 * r.splitting), 1e-9);
}

TEST(FixedPoint, MultipliersMatchLyapunovExponents) {
  const auto model = validate_config(cosine_alpha());
  const double mu = 1e-5;
  const auto r = find_fixed_point(model, mu, seed_point(model, 1.0));
  LyapunovOptions opts;
  opts.start = r.point;
  opts.transient = 500;
  const auto spec = lyapunov_spectrum(model, mu, 2000, opts);
  ASSERT_EQ(spec.exponents.size(), r.multipliers.size());
  for (std::size_t i = 0; i < r.multipliers.size(); ++i) {
    const double rho = std::abs(r.multipliers[i]);
    if (rho < 1e-8) continue;  // eigenvalues this small are not resolved to 1e-6 in the log
    EXPECT_NEAR(spec.exponents[i], std::log(rho), 1e-6) << i;
  }
}

TEST(FixedPoint, EigenvaluesSortedByModulus) {
  Eigen::MatrixXd m(3, 3);
  m << 0.1, 0, 0, 0, -0.7, 0, 0, 0, 0.3;
  const auto ev = eigenvalues(m);
  EXPECT_NEAR(std::abs(ev[0]), 0.7, 1e-15);
  EXPECT_NEAR(std::abs(ev[2]), 0.1, 1e-15);
}
