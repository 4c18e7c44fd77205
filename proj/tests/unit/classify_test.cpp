#include <gtest/gtest.h>

#include "bluesky/classify.hpp"
#include "bluesky/report_io.hpp"
#include "demo_configs.hpp"

using namespace bluesky;
using bluesky::testing::demo_model;

TEST(Classify, DemoConfigsFollowTheTrichotomy) {
  const std::pair<const char*, AttractorKind> cases[] = {
      {"m0", AttractorKind::StablePeriodicOrbit}, {"uncoupled_m0", AttractorKind::StablePeriodicOrbit},
      {"m1", AttractorKind::InvariantTorus},      {"m_minus1", AttractorKind::KleinBottle},
      {"m2", AttractorKind::Solenoid},            {"skew_m2", AttractorKind::Solenoid}};
  for (const auto& [name, kind] : cases) {
    const auto c = classify_attractor(demo_model(name), 1e-5);
    EXPECT_EQ(c.kind, kind) << name << ": " << c.note;
    EXPECT_FALSE(c.escaped);
    ASSERT_TRUE(c.condition.has_value());
    EXPECT_TRUE(c.condition->verdict);
  }
}

TEST(Classify, AttachesCaseReports) {
  const auto m0 = classify_attractor(demo_model("m0"), 1e-6);
  EXPECT_TRUE(m0.fixed_point.has_value());
  EXPECT_FALSE(m0.cone.has_value());
  const auto m1 = classify_attractor(demo_model("m1"), 1e-5);
  ASSERT_TRUE(m1.curve.has_value());
  EXPECT_EQ(m1.curve->orientation, Orientation::Preserving);
  EXPECT_TRUE(m1.annulus.has_value());
  const auto m2 = classify_attractor(demo_model("m2"), 1e-5);
  ASSERT_TRUE(m2.cone.has_value());
  EXPECT_TRUE(m2.cone->verdict);
}

TEST(Classify, ViolatedConditionIsIndeterminate) {
  auto cfg = bluesky::testing::demo_config("m0");
  cfg.h = FourierSeries(0, {}, {1.5});
  const auto c = classify_attractor(validate_config(cfg), 1e-5);
  EXPECT_EQ(c.kind, AttractorKind::Indeterminate);
  EXPECT_FALSE(c.note.empty());
}

TEST(Classify, LargeMuEscapes) {
  auto cfg = bluesky::testing::demo_config("m0");
  cfg.coupling_fx = FourierSeries::constant(-5.0);
  const auto c = classify_attractor(validate_config(cfg), 0.5);
  EXPECT_EQ(c.kind, AttractorKind::Indeterminate);
  EXPECT_TRUE(c.escaped);
}

TEST(ReportIo, CertificateSerializesInfinity) {
  const auto c = classify_attractor(demo_model("skew_m2"), 1e-5);
  const auto j = to_json(*c.cone);
  EXPECT_EQ(j["L_interval"][0], 0.0);
  EXPECT_EQ(j["L_interval"][1], "inf");
  EXPECT_EQ(j["verdict"], true);
  const auto all = to_json(c);
  EXPECT_EQ(all["classification"], "Solenoid");
  EXPECT_TRUE(all.contains("cone"));
}
