#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "bluesky/experiments.hpp"
#include "demo_configs.hpp"

using namespace bluesky;
using bluesky::testing::demo_config;
using bluesky::testing::demo_model;

TEST(MuGrid, GeometricWithEndpoints) {
  const auto g = geometric_mu_grid(1e-8, 1e-3, 10);
  ASSERT_EQ(g.size(), 51u);
  EXPECT_EQ(g.front(), 1e-3);
  EXPECT_EQ(g.back(), 1e-8);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i - 1] / g[i], std::pow(10.0, 0.1), 1e-12);
  EXPECT_THROW(geometric_mu_grid(1e-3, 1e-8), Error);
}

TEST(Sweep, ClosedFormPeriodProxy) {
  const auto records = mu_sweep(demo_model("uncoupled_m0"), geometric_mu_grid(1e-8, 1e-3, 2));
  for (const auto& r : records) {
    EXPECT_EQ(r.classification, AttractorKind::StablePeriodicOrbit);
    EXPECT_NEAR(r.period_proxy, std::log(1.0 / r.mu) + 1.0, 1e-12);
    ASSERT_TRUE(r.theta_fixed.has_value());
    EXPECT_FALSE(r.escaped);
  }
}

TEST(Sweep, PeriodGrowsAsMuShrinks) {
  const auto records = mu_sweep(demo_model("m0"), geometric_mu_grid(1e-8, 1e-3, 5));
  for (std::size_t i = 1; i < records.size(); ++i) EXPECT_GT(records[i].period_proxy, records[i - 1].period_proxy);
  for (const auto& r : records) {
    EXPECT_EQ(r.classification, AttractorKind::StablePeriodicOrbit);
    ASSERT_TRUE(r.top_lyapunov.has_value());
    EXPECT_LT(*r.top_lyapunov, 0.0);
  }
}

TEST(Sweep, SolenoidAcrossRange) {
  const auto records = mu_sweep(demo_model("m2"), geometric_mu_grid(1e-8, 1e-3, 2));
  for (const auto& r : records) {
    EXPECT_EQ(r.classification, AttractorKind::Solenoid) << r.mu;
    EXPECT_FALSE(r.theta_fixed.has_value());
    EXPECT_GT(r.period_proxy, 0.0);
  }
}

TEST(Sweep, RejectsUnsortedInput) {
  EXPECT_THROW(mu_sweep(demo_model("m0"), {1e-5, 1e-4}), Error);
}

TEST(Fit, ExactForClosedFormRecords) {
  for (double gamma : {1.0, 2.0}) {
    std::vector<SweepRecord> recs;
    for (double mu : geometric_mu_grid(1e-8, 1e-3, 4)) {
      SweepRecord r;
      r.mu = mu;
      r.period_proxy = std::log(1.0 / mu) / gamma + 1.0;
      recs.push_back(r);
    }
    const auto fit = fit_period_scaling(recs);
    EXPECT_NEAR(fit.slope, 1.0 / gamma, 1e-13);
    EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-14);
    EXPECT_EQ(fit.points, 21);
  }
}

TEST(Fit, InsufficientData) {
  std::vector<SweepRecord> recs(3);
  for (int i = 0; i < 3; ++i) recs[static_cast<std::size_t>(i)] = {std::pow(10.0, -3.0 * i), {}, 1.0 + i, {}, {}, false};
  EXPECT_THROW(fit_period_scaling(recs), Error);
  std::vector<SweepRecord> narrow;
  for (int i = 0; i < 6; ++i) narrow.push_back({std::pow(10.0, -3 - 0.4 * i), {}, 1.0 + i, {}, {}, false});
  try {
    fit_period_scaling(narrow);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientData);
  }
}

TEST(Fit, SlopeRecoversInverseGamma) {
  for (double gamma : {0.7, 1.0, 1.3}) {
    const auto model = demo_model("m0", {{"gamma", std::to_string(gamma)}});
    const auto fit = fit_period_scaling(mu_sweep(model, geometric_mu_grid(1e-8, 1e-3, 10)));
    EXPECT_NEAR(fit.slope * gamma, 1.0, 0.02) << gamma;
  }
}

TEST(Csv, HeaderAndFormatting) {
  SweepRecord a{1e-3, AttractorKind::StablePeriodicOrbit, 7.9, 1.25, -2.0, false};
  SweepRecord b{1e-4, AttractorKind::Indeterminate, 0.0, {}, {}, true};
  std::ostringstream os;
  write_sweep_csv(os, {a, b});
  EXPECT_EQ(os.str(),
            "mu,classification,period_proxy,theta_fixed,top_lyapunov,escaped\n"
            "0.001,StablePeriodicOrbit,7.9000000000000004,1.25,-2,false\n"
            "0.0001,Indeterminate,0,,,true\n");
}

TEST(Threshold, BlueSkyFlipAtOne) {
  auto family = [](double a) {
    auto c = demo_config("uncoupled_m0");
    c.h = FourierSeries(0, {}, {a});
    return c;
  };
  ThresholdOptions opts;
  opts.classify_mu = 1e-5;
  const auto study = threshold_study(family, CaseTag::BlueSky, {0.5, 0.9, 1.1, 1.5}, opts);
  ASSERT_TRUE(study.flip_found);
  EXPECT_NEAR(study.flip_a, 1.0, 1e-6);
  EXPECT_LE(study.bracket_high - study.bracket_low, 1e-6);
  EXPECT_NEAR(study.rows[0].report->margin, 0.5, 1e-6);
  EXPECT_EQ(*study.rows[0].classification, AttractorKind::StablePeriodicOrbit);
  EXPECT_EQ(*study.rows[3].classification, AttractorKind::Indeterminate);
}

TEST(Threshold, SolenoidFlipAtOne) {
  auto family = [](double a) {
    auto c = demo_config("skew_m2");
    c.h = FourierSeries(0, {}, {a});
    return c;
  };
  const auto study = threshold_study(family, CaseTag::Solenoid, {0.2, 0.8, 1.2}, {});
  ASSERT_TRUE(study.flip_found);
  EXPECT_NEAR(study.flip_a, 1.0, 1e-6);
  EXPECT_NEAR(study.rows[0].report->criterion_min, 1.8, 1e-12);
}
