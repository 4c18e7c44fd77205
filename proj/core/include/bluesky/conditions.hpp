#pragma once

#include <string_view>

#include "bluesky/model.hpp"

namespace bluesky {

enum class CaseTag { BlueSky, TorusOrKlein, Solenoid };

std::string_view to_string(CaseTag tag);

/// Case selected by the degree: 0, |m| = 1, |m| >= 2.
CaseTag case_for_degree(int m) noexcept;

/// Outcome of checking one of the three existence conditions on the circle.
///
/// The criterion is
///   BlueSky:      |s(theta)|      < 1
///   TorusOrKlein: 1 + m s(theta)  > 0
///   Solenoid:     |m + s(theta)|  > 1
/// with s = h' - alpha' / (gamma alpha). criterion_min/max are grid values of
/// the criterion. margin is the certified distance from the threshold (grid
/// extremum minus the refinement bound) when verdict holds, and the grid
/// violation otherwise.
struct ConditionReport {
  CaseTag case_tag = CaseTag::BlueSky;
  double criterion_min = 0.0;
  double criterion_max = 0.0;
  double margin = 0.0;
  bool verdict = false;
  int grid_size = 0;
  double lipschitz_bound = 0.0;
};

/// s(theta) = h'(theta) - alpha'(theta) / (gamma alpha(theta)).
double criterion_function(double theta, const Model& model);

/// Certified bounds on |s'| and |s''| from coefficient sums and the certified
/// lower bound of alpha.
struct CriterionBounds {
  double first = 0.0;
  double second = 0.0;
};
CriterionBounds criterion_derivative_bounds(const Model& model);

inline constexpr int kDefaultConditionGrid = 4096;
inline constexpr int kConditionGridCap = 1 << 20;

/// Throws CaseMismatch when the tag does not match the model's degree and
/// Inconclusive when the grid cap is reached with the threshold still inside
/// the refinement bound.
ConditionReport check_case(CaseTag tag, const Model& model,
                           int grid_size = kDefaultConditionGrid);

}  // namespace bluesky
