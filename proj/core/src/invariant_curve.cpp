#include "bluesky/invariant_curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "bluesky/circle_bounds.hpp"

namespace bluesky {

std::string_view to_string(Orientation o) {
  return o == Orientation::Preserving ? "Preserving" : "Reversing";
}

namespace {

struct Segment {
  Eigen::Index left;
  Eigen::Index right;
  double t;  // position in [0, 1)
  double h;
};

Segment locate(const InvariantCurve& c, double theta) {
  const auto n = static_cast<Eigen::Index>(c.size());
  const double h = kTwoPi / static_cast<double>(n);
  const double th = wrap_angle(theta);
  auto i = static_cast<Eigen::Index>(std::floor(th / h));
  i = std::clamp<Eigen::Index>(i, 0, n - 1);
  return {i, (i + 1) % n, th / h - static_cast<double>(i), h};
}

}  // namespace

Eigen::VectorXd InvariantCurve::evaluate(double theta) const {
  const auto s = locate(*this, theta);
  const double t = s.t, t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values.col(s.left) + h10 * s.h * slopes.col(s.left) + h01 * values.col(s.right) +
         h11 * s.h * slopes.col(s.right);
}

Eigen::VectorXd InvariantCurve::derivative(double theta) const {
  const auto s = locate(*this, theta);
  const double t = s.t, t2 = t * t;
  const double d00 = (6 * t2 - 6 * t) / s.h;
  const double d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (-6 * t2 + 6 * t) / s.h;
  const double d11 = 3 * t2 - 2 * t;
  return d00 * values.col(s.left) + d10 * slopes.col(s.left) + d01 * values.col(s.right) +
         d11 * slopes.col(s.right);
}

double InvariantCurve::distance(const TorusPoint& p) const {
  const Eigen::VectorXd c = evaluate(p.theta);
  const double dx = p.X - c[0];
  return std::sqrt(dx * dx + (p.Y - c.tail(c.size() - 1)).squaredNorm());
}

namespace {

struct CurveImage {
  Eigen::VectorXd radial;  // (X, Y) of the image
  double lift = 0.0;       // theta-lift of the image
  double lift_slope = 0.0; // d lift / d theta along the curve
  Eigen::VectorXd radial_slope;  // d radial / d theta along the curve
};

CurveImage image_on_curve(const Model& model, double mu, const InvariantCurve& curve,
                          double theta) {
  const Eigen::VectorXd r = curve.evaluate(theta);
  const Eigen::VectorXd dr = curve.derivative(theta);
  const auto k = r.size() - 1;
  auto ev = evaluate_return_map(model, mu, r[0], r.tail(k), theta, true);
  const auto& J = ev.jacobian;
  const auto n = J.rows();

  CurveImage out;
  out.radial.resize(k + 1);
  out.radial[0] = ev.X;
  out.radial.tail(k) = ev.Y;
  out.lift = ev.theta_lift;
  out.lift_slope = J.row(n - 1).head(k + 1).dot(dr) + J(n - 1, n - 1);
  out.radial_slope = J.topLeftCorner(k + 1, k + 1) * dr + J.topRightCorner(k + 1, 1);
  return out;
}

// Solves sigma * lift(theta) = target on [lo, hi], where sigma * lift is
// increasing and brackets the target.
double invert_lift(const Model& model, double mu, const InvariantCurve& curve, int sigma,
                   double target, double lo, double hi, double f_lo, double f_hi) {
  double theta = lo + (hi - lo) * std::clamp((target - f_lo) / (f_hi - f_lo), 0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const auto img = image_on_curve(model, mu, curve, theta);
    const double f = sigma * img.lift - target;
    if (f == 0.0) return theta;
    if (f < 0.0) lo = theta;
    else hi = theta;
    const double slope = sigma * img.lift_slope;
    double next = theta - f / slope;
    if (!(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - theta) <= 1e-15 * std::max(1.0, std::abs(theta)) || hi - lo <= 1e-15)
      return next;
    theta = next;
  }
  return theta;
}

}  // namespace

InvariantCurve graph_transform_curve(const Model& model, double mu, int grid_size,
                                     const GraphTransformOptions& options) {
  const int m = model.m();
  if (std::abs(m) != 1)
    throw Error(ErrorCode::CaseMismatch, "graph transform applies only to |m| = 1");
  if (grid_size < 8) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 8");

  const int sigma = m;
  const int N = grid_size;
  const int rdim = model.n() - 1;
  const double h = kTwoPi / N;
  const double nu = model.nu();
  const auto& alpha = model.config().alpha;

  InvariantCurve curve;
  curve.theta_grid.resize(static_cast<std::size_t>(N));
  curve.values = Eigen::MatrixXd::Zero(rdim, N);
  curve.slopes = Eigen::MatrixXd::Zero(rdim, N);
  for (int i = 0; i < N; ++i) {
    const double th = h * i;
    curve.theta_grid[static_cast<std::size_t>(i)] = th;
    double a = 0.0, ad = 0.0;
    alpha.evaluate(th, a, ad);
    curve.values(0, i) = std::pow(a, nu);
    curve.slopes(0, i) = nu * std::pow(a, nu - 1.0) * ad;
  }
  curve.orientation = sigma > 0 ? Orientation::Preserving : Orientation::Reversing;

  std::vector<double> u(static_cast<std::size_t>(N) + 1);  // sigma * lift at nodes
  double change = std::numeric_limits<double>::infinity();  // sup change of node values in the last update
  for (int iter = 0;; ++iter) {
    double residual = 0.0;
    for (int i = 0; i < N; ++i) {
      const auto img = image_on_curve(model, mu, curve, curve.theta_grid[static_cast<std::size_t>(i)]);
      residual = std::max(residual, (img.radial - curve.evaluate(img.lift)).norm());
      if (!(sigma * img.lift_slope > 0.0))
        throw Error(ErrorCode::NotACircleMap, "theta-lift is not monotone on the curve");
      u[static_cast<std::size_t>(i)] = sigma * img.lift;
    }
    u[static_cast<std::size_t>(N)] = u[0] + kTwoPi;
    for (int i = 0; i < N; ++i) {
      if (!(u[static_cast<std::size_t>(i) + 1] > u[static_cast<std::size_t>(i)]))
        throw Error(ErrorCode::NotACircleMap, "theta-lift is not monotone on the curve");
    }
    curve.residual_sup = residual;
    curve.iterations = iter;
    // The residual cannot drop below the interpolation error of the grid, so a
    // stationary node update also counts as converged.
    if (residual < options.tolerance || change < options.tolerance) return curve;
    if (iter >= options.max_iterations)
      throw Error(ErrorCode::NoConvergence, "graph transform did not converge");

    Eigen::MatrixXd values(rdim, N), slopes(rdim, N);
    for (int j = 0; j < N; ++j) {
      const double psi = curve.theta_grid[static_cast<std::size_t>(j)];
      const double base = sigma * psi;
      const double target = base + kTwoPi * std::ceil((u[0] - base) / kTwoPi);
      const auto it = std::upper_bound(u.begin(), u.end(), target);
      const auto i = std::clamp<std::ptrdiff_t>(std::distance(u.begin(), it) - 1, 0, N - 1);
      const auto iu = static_cast<std::size_t>(i);
      const double th = invert_lift(model, mu, curve, sigma, target, h * i, h * (i + 1), u[iu],
                                    u[iu + 1]);
      const auto img = image_on_curve(model, mu, curve, th);
      values.col(j) = img.radial;
      slopes.col(j) = img.radial_slope / img.lift_slope;
    }
    change = (values - curve.values).cwiseAbs().maxCoeff();
    curve.values = std::move(values);
    curve.slopes = std::move(slopes);
  }
}

int circle_degree(const Model& model, double mu, int samples) {
  if (samples < 4) throw Error(ErrorCode::InvalidArgument, "samples must be at least 4");
  double total = 0.0;
  double prev = return_map(seed_point(model, 0.0), mu, model).point.theta;
  for (int i = 1; i <= samples; ++i) {
    const double th = kTwoPi * i / samples;
    const double cur = return_map(seed_point(model, th), mu, model).point.theta;
    total += angle_difference(cur, prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace bluesky
