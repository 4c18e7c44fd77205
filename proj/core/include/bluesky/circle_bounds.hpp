#pragma once

#include <functional>
#include <numbers>

namespace bluesky {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi).
double wrap_angle(double theta) noexcept;

/// Shortest signed difference a - b on the circle, in (-pi, pi].
double angle_difference(double a, double b) noexcept;

/// Certified enclosure of the range of a smooth 2pi-periodic function,
/// obtained from a uniform grid and a derivative bound.
///
/// Any theta lies within spacing/2 of a node, so the extrema are off by at
/// most L1*spacing/2. Extrema of a periodic function are critical points,
/// which tightens this to M2*spacing^2/8 when a second-derivative bound M2 is
/// known; the smaller of the two is used.
struct CircleRange {
  double grid_min = 0.0;
  double grid_max = 0.0;
  double inflation = 0.0;
  int grid_size = 0;

  double lower() const noexcept { return grid_min - inflation; }
  double upper() const noexcept { return grid_max + inflation; }
};

struct DerivativeBounds {
  double first = 0.0;   // sup |f'|
  double second = 0.0;  // sup |f''|
};

double grid_inflation(const DerivativeBounds& bounds, int grid_size) noexcept;

/// Evaluates f on `grid_size` uniform nodes.
CircleRange bound_on_circle(const std::function<double(double)>& f, int grid_size,
                            const DerivativeBounds& bounds);

}  // namespace bluesky
