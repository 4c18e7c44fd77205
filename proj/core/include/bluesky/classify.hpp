#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bluesky/conditions.hpp"
#include "bluesky/cone.hpp"
#include "bluesky/fixed_point.hpp"
#include "bluesky/invariant_curve.hpp"

namespace bluesky {

enum class AttractorKind { StablePeriodicOrbit, InvariantTorus, KleinBottle, Solenoid, Indeterminate };

std::string_view to_string(AttractorKind kind);

struct Classification {
  AttractorKind kind = AttractorKind::Indeterminate;
  CaseTag case_tag = CaseTag::BlueSky;
  double mu = 0.0;
  std::optional<ConditionReport> condition;  // empty when the check was inconclusive
  std::optional<FixedPointResult> fixed_point;
  std::optional<InvariantCurve> curve;
  std::optional<AnnulusDiagnostic> annulus;
  std::optional<ConeCertificate> cone;
  bool escaped = false;
  std::string note;  // reason for Indeterminate, empty otherwise
};

struct ClassifyOptions {
  int condition_grid = kDefaultConditionGrid;
  int curve_grid = kDefaultCurveGrid;
  int cone_grid = 256;
  int warmup_iterations = 50;  // forward iterates before Newton
};

/// Condition check followed by the case-specific computation. Never throws
/// for domain failures: those yield Indeterminate with a note.
Classification classify_attractor(const Model& model, double mu, const ClassifyOptions& options = {});

}  // namespace bluesky
