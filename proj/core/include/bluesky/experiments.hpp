#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "bluesky/classify.hpp"

namespace bluesky {

/// Time spent outside the local neighbourhood, added to the local flight time.
inline constexpr double kGlobalFlightTime = 1.0;

struct SweepRecord {
  double mu = 0.0;
  AttractorKind classification = AttractorKind::Indeterminate;
  double period_proxy = 0.0;
  std::optional<double> theta_fixed;
  std::optional<double> top_lyapunov;
  bool escaped = false;
};

struct SweepOptions {
  ClassifyOptions classify;
  long lyapunov_iterations = 2000;
  long lyapunov_transient = 200;
  long proxy_orbit = 500;  // orbit length averaged for the period proxy when m != 0
  std::uint64_t seed = 0;
};

/// Geometric grid from mu_max down to mu_min, `per_decade` points per decade,
/// both endpoints included.
std::vector<double> geometric_mu_grid(double mu_min, double mu_max, int per_decade = 10);

/// One record per mu. Failures are recorded in the escaped flag and never
/// abort the sweep. The period proxy is the local flight time at the fixed
/// point (m = 0) or its orbit average (m != 0), plus kGlobalFlightTime.
std::vector<SweepRecord> mu_sweep(const Model& model, const std::vector<double>& mu_values,
                                  const SweepOptions& options = {});

/// Writes `mu,classification,period_proxy,theta_fixed,top_lyapunov,escaped`.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  int points = 0;
};

/// Least-squares line of period_proxy against ln(1/mu) over the non-escaped
/// records. Throws InsufficientData for fewer than 4 points or a mu-span
/// under 3 decades.
ScalingFit fit_period_scaling(const std::vector<SweepRecord>& records);

using ModelFamily = std::function<ModelConfig(double a)>;

struct ThresholdRow {
  double a = 0.0;
  std::optional<ConditionReport> report;  // empty if invalid or inconclusive
  bool verdict = false;
  std::optional<AttractorKind> classification;
  std::string note;
};

struct ThresholdStudy {
  std::vector<ThresholdRow> rows;
  bool flip_found = false;
  double flip_a = 0.0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
};

struct ThresholdOptions {
  double tolerance = 1e-6;  // final bracket width
  std::optional<double> classify_mu;  // classify each row at this mu when set
  int condition_grid = kDefaultConditionGrid;
};

/// Condition report for each a, then bisection of the first verdict change
/// between consecutive a-values. Invalid or inconclusive members count as
/// verdict false.
ThresholdStudy threshold_study(const ModelFamily& family, CaseTag tag, const std::vector<double>& a_values,
                               const ThresholdOptions& options = {});

}  // namespace bluesky
