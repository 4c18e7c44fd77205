#include <cmath>

#include <gtest/gtest.h>

#include "bluesky/circle_bounds.hpp"
#include "bluesky/model.hpp"
#include "bluesky/trapping.hpp"
#include "oracles.hpp"
#include "random_configs.hpp"

using namespace bluesky;
using bluesky::testing::ConfigSampler;

namespace {

ModelConfig base_config() {
  ModelConfig c;
  c.m = 0;
  c.n = 3;
  return c;
}

bool has_rule(const std::vector<ValidationRule>& rules, ValidationRule r) {
  return std::find(rules.begin(), rules.end(), r) != rules.end();
}

}  // namespace

TEST(Validation, DefaultConfigIsValid) {
  EXPECT_TRUE(violated_rules(base_config()).empty());
  const auto model = validate_config(base_config());
  EXPECT_DOUBLE_EQ(model.nu(), 2.0);
  EXPECT_EQ(model.y_dim(), 1);
}

TEST(Validation, EachRuleFires) {
  auto c = base_config();
  c.gamma = 0;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::GammaNotPositive));
  c = base_config();
  c.lambda = 0.5;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::NuNotGreaterThanOne));
  c = base_config();
  c.beta = 1.5;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::BetaNotGreaterThanLambda));
  c = base_config();
  c.d = -1;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::DNotPositive));
  c = base_config();
  c.n = 1;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::DimensionTooSmall));
  c = base_config();
  c.g0 = {FourierSeries(), FourierSeries()};
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::ComponentCountMismatch));
  c = base_config();
  c.alpha = FourierSeries(0.5, {0.6}, {});
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::AlphaNotPositive));
  c = base_config();
  c.m = 0.5;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::HalfIntegerM));
}

TEST(Validation, DimensionRestrictsDegree) {
  auto c = base_config();
  c.n = 2;
  c.m = 0;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::DimensionForbidsM));
  c.m = 1;
  EXPECT_TRUE(violated_rules(c).empty());
  c.n = 3;
  c.m = 2;
  EXPECT_TRUE(has_rule(violated_rules(c), ValidationRule::DimensionForbidsM));
  c.m = -1;
  EXPECT_TRUE(violated_rules(c).empty());
  c.n = 4;
  c.m = 5;
  EXPECT_TRUE(violated_rules(c).empty());
}

TEST(Validation, ThrowsWithEveryRule) {
  auto c = base_config();
  c.gamma = -1;
  c.d = 0;
  try {
    validate_config(c);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.rules().size(), 2u);  // gamma and d; nu is not checked without a valid gamma
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(Model, SaddleMultipliers) {
  const auto model = validate_config(base_config());
  EXPECT_NEAR(model.rho_leading(), std::exp(-2 * std::numbers::pi * 2.0), 1e-18);
  EXPECT_NEAR(model.rho_unstable(), std::exp(2 * std::numbers::pi), 1e-9);
}

TEST(GlobalMap, HomoclinicOrbitReturnsToSaddle) {
  ConfigSampler s(7);
  for (int cfg = 0; cfg < 5; ++cfg) {
    const auto model = validate_config(s.config());
    for (int i = 0; i < 1000; ++i) {
      RawSectionPoint p;
      p.section = Section::S1;
      p.theta = s.uniform(0, kTwoPi);
      p.coord_b = Eigen::VectorXd::Zero(model.y_dim());
      EXPECT_EQ(global_map_T1(p, 0.0, model).point.coord_a, 0.0);
    }
  }
}

TEST(LocalMap, LinearFlowClosedForm) {
  auto c = base_config();
  c.gamma = 0.8;
  c.lambda = 1.3;
  c.beta = 2.1;
  c.d = 1.5;
  const auto model = validate_config(c);
  RawSectionPoint p;
  p.section = Section::S0;
  p.theta = 0.4;
  p.coord_a = 1e-4;
  p.coord_b = Eigen::VectorXd::Constant(1, 0.2);
  const auto out = local_map_T0(p, model);
  const double t = std::log(1.5 / 1e-4) / 0.8;
  EXPECT_NEAR(out.flight_time, t, 1e-13);
  // x(t) = d exp(-lambda t), y(t) = y0 exp(-beta t), z(t) = z0 exp(gamma t) = d.
  EXPECT_NEAR(out.point.coord_a, 1.5 * std::exp(-1.3 * t), 1e-16);
  EXPECT_NEAR(out.point.coord_b[0], 0.2 * std::exp(-2.1 * t), 1e-16);
  EXPECT_NEAR(out.theta_lift, 0.4 + t, 1e-13);
  p.coord_a = 0.0;
  EXPECT_THROW(local_map_T0(p, model), Error);
}

TEST(ReturnMap, UncoupledClosedForm) {
  const auto model = validate_config(base_config());
  const double mu = std::exp(-10.0);
  const auto r = return_map(seed_point(model, 1.0), mu, model);
  EXPECT_DOUBLE_EQ(r.point.X, 1.0);
  EXPECT_EQ(r.point.Y[0], 0.0);
  EXPECT_NEAR(r.theta_lift, 10.0, 1e-13);
  EXPECT_NEAR(r.point.theta, 10.0 - kTwoPi, 1e-13);
  EXPECT_EQ(r.winding, 1);
  EXPECT_NEAR(omega(model, mu), 10.0, 1e-13);
}

TEST(ReturnMap, AgreesWithComposedSectionMaps) {
  ConfigSampler s(11);
  for (int cfg = 0; cfg < 10; ++cfg) {
    const auto model = validate_config(s.config());
    for (int i = 0; i < 20; ++i) {
      const double mu = std::pow(10.0, s.uniform(-7, -3));
      const auto p = s.point(model);
      const auto fast = return_map(p, mu, model).point;
      const auto slow = bluesky::testing::composed_return_map(model, mu, p);
      EXPECT_NEAR(fast.X, slow.X, 1e-10 * std::max(1.0, std::abs(slow.X)));
      EXPECT_LT((fast.Y - slow.Y).lpNorm<Eigen::Infinity>(), 1e-10 * std::max(1.0, slow.Y.lpNorm<Eigen::Infinity>()));
      EXPECT_LT(std::abs(angle_difference(fast.theta, slow.theta)), 1e-9);
    }
  }
}

TEST(ReturnMap, JacobianEntriesMatchFiniteDifferences) {
  // Moderate mu and strong couplings keep every entry well above FD noise.
  ConfigSampler s(23);
  for (int cfg = 0; cfg < 10; ++cfg) {
    const auto model = validate_config(s.config(5e-2));
    for (int i = 0; i < 10; ++i) {
      const double mu = std::pow(10.0, s.uniform(-3, -1.5));
      const auto p = s.point(model, 0.05);
      const auto J = return_map_jacobian(p, mu, model);
      const auto F = bluesky::testing::fd_jacobian(model, mu, p, 1e-5);
      for (Eigen::Index r = 0; r < J.rows(); ++r)
        for (Eigen::Index c = 0; c < J.cols(); ++c)
          EXPECT_NEAR(J(r, c), F(r, c), 1e-6 * std::max(1.0, std::abs(F(r, c))) + 1e-9)
              << "entry " << r << "," << c;
    }
  }
}

TEST(ReturnMap, RejectsBadInputs) {
  const auto model = validate_config(base_config());
  EXPECT_THROW(return_map(seed_point(model, 0.0), 0.0, model), Error);
  auto c = base_config();
  c.coupling_fx = FourierSeries::constant(-1000.0);
  const auto bad = validate_config(c);
  try {
    return_map(seed_point(bad, 0.0), 1e-2, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EscapedTube);
  }
}

TEST(LimitMap, LeadingOrderOfReturnMap) {
  auto c = base_config();
  c.alpha = FourierSeries(1.0, {0.3}, {});
  c.h = FourierSeries(0.0, {}, {0.2});
  const auto model = validate_config(c);
  const double mu = 1e-6;
  for (int i = 0; i < 16; ++i) {
    const double th = 0.4 * i;
    const auto lim = limit_map(model, mu, th);
    const auto ev = evaluate_return_map(model, mu, std::pow(c.alpha(th), 2.0), Eigen::VectorXd::Zero(1), th, false);
    EXPECT_NEAR(lim.X, ev.X, 1e-14);
    EXPECT_NEAR(lim.theta_lift, ev.theta_lift, 1e-12);
  }
  EXPECT_TRUE(std::isinf(limit_map(model, 0.0, 1.0).theta_lift));
}

TEST(Trapping, RegionContainsImagesOfSamples) {
  ConfigSampler s(31);
  for (int cfg = 0; cfg < 10; ++cfg) {
    const auto model = validate_config(s.config(1e-3));
    const double mu = 1e-5;
    const auto region = compute_trapping_region(model, mu);
    ASSERT_TRUE(region.valid);
    for (int i = 0; i < 200; ++i) {
      auto p = seed_point(model, s.uniform(0, kTwoPi));
      p.X = s.uniform(region.x_low - region.radius, region.x_high + region.radius);
      for (Eigen::Index j = 0; j < p.Y.size(); ++j) p.Y[j] = s.uniform(-region.radius, region.radius);
      EXPECT_TRUE(region.contains(return_map(p, mu, model).point));
    }
  }
}
