#pragma once

#include <complex>
#include <vector>

#include "bluesky/model.hpp"

namespace bluesky {

struct FixedPointResult {
  TorusPoint point;
  std::vector<std::complex<double>> multipliers;  // sorted by decreasing modulus
  double residual = 0.0;  // |T(p) - p| with the circular distance in theta
  int newton_iterations = 0;
  double flight_time = 0.0;  // local passage time at the fixed point
  double splitting = 0.0;    // z0 / mu at the fixed point

  bool stable() const;
};

struct FixedPointOptions {
  int max_iterations = 100;
  double tolerance = 1e-12;
};

/// Damped Newton iteration on (X, Y, theta-lift) using the analytic Jacobian.
/// Throws NoConvergence, or EscapedTube if an iterate leaves the tube.
FixedPointResult find_fixed_point(const Model& model, double mu, const TorusPoint& seed,
                                  const FixedPointOptions& options = {});

/// Eigenvalues of a square matrix, sorted by decreasing modulus.
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m);

/// Euclidean distance on R^(n-1) x S^1.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

}  // namespace bluesky
