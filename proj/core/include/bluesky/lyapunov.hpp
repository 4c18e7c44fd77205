#pragma once

#include <optional>
#include <vector>

#include "bluesky/model.hpp"

namespace bluesky {

/// Exponents at or below this value are reported as the floor itself; it
/// stands in for -infinity when a direction is annihilated.
inline constexpr double kLyapunovFloor = -50.0;

struct LyapunovSpectrum {
  std::vector<double> exponents;  // descending, one per phase dimension
  long orbit_length = 0;
  long transient_discarded = 0;
  double confidence_halfwidth = 0.0;  // 2 sigma of block means, worst exponent
};

struct LyapunovOptions {
  long transient = 1000;
  int blocks = 20;
  std::optional<TorusPoint> start;  // defaults to the seed curve at theta = 0.5
};

/// QR (Benettin) averaging of the Jacobian cocycle along one orbit. The
/// tangent frame is evolved through the transient as well, so the averages
/// start from an aligned frame.
LyapunovSpectrum lyapunov_spectrum(const Model& model, double mu, long iterations,
                                   const LyapunovOptions& options = {});

}  // namespace bluesky
