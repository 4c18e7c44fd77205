#include "bluesky/circle_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bluesky {

double wrap_angle(double theta) noexcept {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angle_difference(double a, double b) noexcept {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

double grid_inflation(const DerivativeBounds& bounds, int grid_size) noexcept {
  const double h = kTwoPi / grid_size;
  return std::min(bounds.first * h / 2.0, bounds.second * h * h / 8.0);
}

CircleRange bound_on_circle(const std::function<double(double)>& f, int grid_size,
                            const DerivativeBounds& bounds) {
  CircleRange out;
  out.grid_size = grid_size;
  out.grid_min = std::numeric_limits<double>::infinity();
  out.grid_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    const double v = f(kTwoPi * i / grid_size);
    out.grid_min = std::min(out.grid_min, v);
    out.grid_max = std::max(out.grid_max, v);
  }
  out.inflation = grid_inflation(bounds, grid_size);
  return out;
}

}  // namespace bluesky
