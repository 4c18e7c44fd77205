#pragma once

#include "bluesky/model.hpp"

namespace bluesky {

/// Solid torus { x_low - K < X < x_high + K, |Y| < K } x S^1 that the
/// rescaled return map sends strictly into itself. [x_low, x_high] encloses
/// the range of alpha^nu, and K is an a-priori bound on the o(1) terms built
/// from sup-bounds of the coupling series.
struct TrappingRegion {
  double x_low = 0.0;
  double x_high = 0.0;
  double radius = 0.0;  // K
  double deviation = 0.0;  // bound on the distance of any image from the band
  bool valid = false;

  bool contains(const TorusPoint& p) const;
};

/// Radius used when every coupling vanishes and the deviation is zero.
inline constexpr double kMinTrappingRadius = 1e-9;

TrappingRegion compute_trapping_region(const Model& model, double mu);

}  // namespace bluesky
