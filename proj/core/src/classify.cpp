#include "bluesky/classify.hpp"

#include <cmath>
#include <cstdlib>

#include "bluesky/trapping.hpp"

namespace bluesky {

std::string_view to_string(AttractorKind kind) {
  switch (kind) {
    case AttractorKind::StablePeriodicOrbit: return "StablePeriodicOrbit";
    case AttractorKind::InvariantTorus: return "InvariantTorus";
    case AttractorKind::KleinBottle: return "KleinBottle";
    case AttractorKind::Solenoid: return "Solenoid";
    case AttractorKind::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

namespace {

void fixed_point_case(const Model& model, double mu, const ClassifyOptions& options, Classification& out) {
  auto p = seed_point(model, 0.0);
  for (int i = 0; i < options.warmup_iterations; ++i) p = return_map(p, mu, model).point;
  out.fixed_point = find_fixed_point(model, mu, p);
  if (out.fixed_point->stable()) out.kind = AttractorKind::StablePeriodicOrbit;
  else out.note = "fixed point is not stable";
}

void curve_case(const Model& model, double mu, const ClassifyOptions& options, Classification& out) {
  out.curve = graph_transform_curve(model, mu, options.curve_grid);
  const auto region = compute_trapping_region(model, mu);
  if (region.valid) {
    const ReturnMapTorus map(model, mu);
    out.annulus = annulus_principle_check(map, trapping_box(model, region), options.curve_grid);
  }
  out.kind = out.curve->orientation == Orientation::Preserving ? AttractorKind::InvariantTorus
                                                               : AttractorKind::KleinBottle;
}

void cone_case(const Model& model, double mu, const ClassifyOptions& options, Classification& out) {
  out.cone = cone_certify(model, mu, options.cone_grid);
  if (out.cone->verdict) out.kind = AttractorKind::Solenoid;
  else out.note = "cone inequalities fail";
}

}  // namespace

Classification classify_attractor(const Model& model, double mu, const ClassifyOptions& options) {
  Classification out;
  out.mu = mu;
  out.case_tag = case_for_degree(model.m());
  if (!(mu > 0)) {
    out.note = "mu must be positive";
    return out;
  }
  try {
    out.condition = check_case(out.case_tag, model, options.condition_grid);
  } catch (const Error& e) {
    out.note = e.what();
    return out;
  }
  if (!out.condition->verdict) {
    out.note = "existence condition violated";
    return out;
  }

  try {
    switch (out.case_tag) {
      case CaseTag::BlueSky: fixed_point_case(model, mu, options, out); break;
      case CaseTag::TorusOrKlein: curve_case(model, mu, options, out); break;
      case CaseTag::Solenoid: cone_case(model, mu, options, out); break;
    }
  } catch (const Error& e) {
    out.kind = AttractorKind::Indeterminate;
    out.escaped = e.code() == ErrorCode::EscapedTube || e.code() == ErrorCode::NotInPositiveHalf;
    out.note = e.what();
  }
  return out;
}

}  // namespace bluesky
