#include "bluesky/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "bluesky/circle_bounds.hpp"

namespace bluesky {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::BlueSky: return "BlueSky";
    case CaseTag::TorusOrKlein: return "TorusOrKlein";
    case CaseTag::Solenoid: return "Solenoid";
  }
  return "Unknown";
}

CaseTag case_for_degree(int m) noexcept {
  if (m == 0) return CaseTag::BlueSky;
  if (std::abs(m) == 1) return CaseTag::TorusOrKlein;
  return CaseTag::Solenoid;
}

double criterion_function(double theta, const Model& model) {
  const auto& c = model.config();
  double al = 0.0, al_d = 0.0;
  c.alpha.evaluate(theta, al, al_d);
  return model.h_prime()(theta) - al_d / (model.gamma() * al);
}

CriterionBounds criterion_derivative_bounds(const Model& model) {
  const auto& c = model.config();
  const double g = model.gamma();
  const double amin = model.alpha_lower();
  const double r1 = c.alpha.sup_bound(1) / amin;
  const double r2 = c.alpha.sup_bound(2) / amin;
  const double r3 = c.alpha.sup_bound(3) / amin;
  // s'  = h'' - (a''/a - (a'/a)^2) / g
  // s'' = h''' - (a'''/a - 3 a'' a' / a^2 + 2 (a'/a)^3) / g
  CriterionBounds out;
  out.first = c.h.sup_bound(2) + (r2 + r1 * r1) / g;
  out.second = c.h.sup_bound(3) + (r3 + 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1) / g;
  return out;
}

namespace {

struct GridScan {
  double s_min = std::numeric_limits<double>::infinity();
  double s_max = -std::numeric_limits<double>::infinity();
  double c_min = std::numeric_limits<double>::infinity();
  double c_max = -std::numeric_limits<double>::infinity();
  bool mixed_sign = false;  // Solenoid only: m + s changes sign on the grid
  int sign = 0;
};

double case_criterion(CaseTag tag, int m, double s) {
  switch (tag) {
    case CaseTag::BlueSky: return std::abs(s);
    case CaseTag::TorusOrKlein: return 1.0 + m * s;
    case CaseTag::Solenoid: return std::abs(m + s);
  }
  return 0.0;
}

void scan_node(GridScan& scan, CaseTag tag, int m, double s) {
  scan.s_min = std::min(scan.s_min, s);
  scan.s_max = std::max(scan.s_max, s);
  const double c = case_criterion(tag, m, s);
  scan.c_min = std::min(scan.c_min, c);
  scan.c_max = std::max(scan.c_max, c);
  if (tag == CaseTag::Solenoid) {
    const int sg = (m + s) > 0.0 ? 1 : -1;
    if (scan.sign == 0) scan.sign = sg;
    else if (sg != scan.sign) scan.mixed_sign = true;
  }
}

}  // namespace

ConditionReport check_case(CaseTag tag, const Model& model, int grid_size) {
  const int m = model.m();
  if (case_for_degree(m) != tag)
    throw Error(ErrorCode::CaseMismatch, std::string("case ") + std::string(to_string(tag)) +
                                             " does not apply to m = " + std::to_string(m));
  if (grid_size < 4) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 4");

  const auto bounds = criterion_derivative_bounds(model);
  const DerivativeBounds db{bounds.first, bounds.second};

  GridScan scan;
  int grid = grid_size;
  for (int i = 0; i < grid; ++i) scan_node(scan, tag, m, criterion_function(kTwoPi * i / grid, model));

  for (;;) {
    const double infl = grid_inflation(db, grid);
    const double h = kTwoPi / grid;

    double certified = 0.0;  // certified distance from the threshold
    double observed = 0.0;   // grid distance from the threshold
    switch (tag) {
      case CaseTag::BlueSky:
        observed = 1.0 - scan.c_max;
        certified = observed - infl;
        break;
      case CaseTag::TorusOrKlein:
        observed = scan.c_min;
        certified = observed - infl;
        break;
      case CaseTag::Solenoid:
        observed = scan.mixed_sign ? -1.0 : scan.c_min - 1.0;
        // Without a sign change between nodes the minimum of |m + s| is a
        // critical point of m + s, so the curvature bound applies.
        certified = (scan.mixed_sign || bounds.first * h >= 2.0) ? -1.0 : observed - infl;
        break;
    }

    ConditionReport report;
    report.case_tag = tag;
    report.criterion_min = scan.c_min;
    report.criterion_max = scan.c_max;
    report.grid_size = grid;
    report.lipschitz_bound = bounds.first;

    if (certified > 0.0) {
      report.verdict = true;
      report.margin = certified;
      return report;
    }
    if (observed <= 0.0) {
      report.verdict = false;
      report.margin = observed;
      return report;
    }
    if (grid > kConditionGridCap / 2)
      throw Error(ErrorCode::Inconclusive,
                  "condition margin " + std::to_string(observed) +
                      " is within the refinement bound at grid " + std::to_string(grid));

    // Double the grid; only the new midpoints need evaluating.
    for (int i = 0; i < grid; ++i)
      scan_node(scan, tag, m, criterion_function(kTwoPi * (2 * i + 1) / (2.0 * grid), model));
    grid *= 2;
  }
}

}  // namespace bluesky
