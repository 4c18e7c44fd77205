#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bluesky/cone.hpp"
#include "bluesky/lyapunov.hpp"
#include "demo_configs.hpp"

using namespace bluesky;
using bluesky::testing::demo_model;

TEST(Lyapunov, DoublingSkewProduct) {
  const auto model = demo_model("skew_m2");
  const auto s = lyapunov_spectrum(model, 1e-5, 10'000);
  ASSERT_EQ(s.exponents.size(), 4u);
  EXPECT_NEAR(s.exponents[0], std::numbers::ln2, 1e-12);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(s.exponents[i], kLyapunovFloor);
  EXPECT_EQ(s.orbit_length, 10'000);
  EXPECT_EQ(s.transient_discarded, 1000);
}

TEST(Lyapunov, CountMatchesPhaseDimension) {
  for (const char* name : {"m0", "m1", "m2"}) {
    const auto model = demo_model(name);
    EXPECT_EQ(static_cast<int>(lyapunov_spectrum(model, 1e-5, 200).exponents.size()), model.n()) << name;
  }
}

TEST(Lyapunov, SortedDescending) {
  const auto s = lyapunov_spectrum(demo_model("m2"), 1e-5, 2000);
  for (std::size_t i = 1; i < s.exponents.size(); ++i) EXPECT_GE(s.exponents[i - 1], s.exponents[i]);
  EXPECT_GT(s.confidence_halfwidth, 0.0);
}

TEST(Lyapunov, BlueSkyExponentsNegative) {
  const auto s = lyapunov_spectrum(demo_model("m0"), 1e-6, 5000);
  for (double e : s.exponents) EXPECT_LT(e, 0.0);
}

TEST(Lyapunov, TorusTopExponentNearZeroOrBelow) {
  // A rigid rotation on the curve has top exponent 0; a phase-locked torus
  // carries a stable periodic orbit and the top exponent is slightly negative.
  ModelConfig c;
  c.m = 1;
  c.n = 3;
  c.lambda = 1.6;
  c.beta = 2.2;
  const auto rigid = lyapunov_spectrum(validate_config(c), 1e-4, 100'000);
  EXPECT_NEAR(rigid.exponents[0], 0.0, 1e-12);
  const auto full = lyapunov_spectrum(demo_model("m1"), 1e-4, 100'000);
  EXPECT_LT(full.exponents[0], 1e-3);
}

TEST(Lyapunov, CertificateBoundsExponents) {
  const auto model = demo_model("m2");
  const double mu = 1e-5;
  const auto cert = cone_certify(model, mu, 256);
  ASSERT_TRUE(cert.verdict);
  const auto s = lyapunov_spectrum(model, mu, 100'000);
  EXPECT_GE(s.exponents[0], std::log(cert.expansion_lower_bound) - 1e-3);
  EXPECT_LE(s.exponents[1], std::log(cert.contraction_upper_bound) + 1e-3);
}
