#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bluesky/model.hpp"

namespace bluesky {

enum class Orientation { Preserving, Reversing };

std::string_view to_string(Orientation o);

/// Closed curve r = r*(theta) in the rescaled solid torus, stored on a uniform
/// periodic grid as values and slopes and interpolated by cubic Hermite
/// segments. Rows of `values` are X, Y_1, ..., Y_{n-2}.
struct InvariantCurve {
  std::vector<double> theta_grid;
  Eigen::MatrixXd values;
  Eigen::MatrixXd slopes;
  double residual_sup = 0.0;
  Orientation orientation = Orientation::Preserving;
  int iterations = 0;

  int size() const noexcept { return static_cast<int>(theta_grid.size()); }
  Eigen::VectorXd evaluate(double theta) const;
  Eigen::VectorXd derivative(double theta) const;
  /// Distance from p to the curve point at the same angle.
  double distance(const TorusPoint& p) const;
};

struct GraphTransformOptions {
  int max_iterations = 10000;
  double tolerance = 1e-8;
};

inline constexpr int kDefaultCurveGrid = 1024;

/// Graph transform for |m| = 1: the image of the current curve is
/// reparametrized by inverting the (monotone) theta-lift of the map on the
/// curve. Stops once the invariance residual or the sup change of the node
/// values drops below the tolerance.
/// Throws CaseMismatch for |m| != 1, NotACircleMap if the lift is not
/// strictly monotone, NoConvergence after max_iterations.
InvariantCurve graph_transform_curve(const Model& model, double mu,
                                     int grid_size = kDefaultCurveGrid,
                                     const GraphTransformOptions& options = {});

/// Winding number of theta -> theta_bar along the seed curve.
int circle_degree(const Model& model, double mu, int samples = 4096);

}  // namespace bluesky
