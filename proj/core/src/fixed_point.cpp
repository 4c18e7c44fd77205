#include "bluesky/fixed_point.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "bluesky/circle_bounds.hpp"

namespace bluesky {

bool FixedPointResult::stable() const {
  return std::all_of(multipliers.begin(), multipliers.end(),
                     [](const std::complex<double>& z) { return std::abs(z) < 1.0; });
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i]);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });
  return out;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  const double dth = angle_difference(a.theta, b.theta);
  const double dx = a.X - b.X;
  return std::sqrt(dx * dx + (a.Y - b.Y).squaredNorm() + dth * dth);
}

namespace {

// F(u) = T(u) - u with the theta component shifted by the nearest multiple of
// 2pi. u = (X, Y..., theta) with theta on the lift.
Eigen::VectorXd residual_vector(const MapEvaluation& ev, const Eigen::VectorXd& u) {
  const auto n = u.size();
  const auto k = n - 2;
  Eigen::VectorXd f(n);
  f[0] = ev.X - u[0];
  f.segment(1, k) = ev.Y - u.segment(1, k);
  const double dth = ev.theta_lift - u[n - 1];
  f[n - 1] = dth - kTwoPi * std::round(dth / kTwoPi);
  return f;
}

MapEvaluation evaluate(const Model& model, double mu, const Eigen::VectorXd& u, bool jac) {
  const auto n = u.size();
  return evaluate_return_map(model, mu, u[0], u.segment(1, n - 2), u[n - 1], jac);
}

}  // namespace

FixedPointResult find_fixed_point(const Model& model, double mu, const TorusPoint& seed,
                                  const FixedPointOptions& options) {
  const int n = model.n();
  const int k = n - 2;
  if (seed.Y.size() != k) throw Error(ErrorCode::InvalidArgument, "seed has the wrong dimension");

  Eigen::VectorXd u(n);
  u[0] = seed.X;
  u.segment(1, k) = seed.Y;
  u[n - 1] = seed.theta;

  auto ev = evaluate(model, mu, u, true);
  Eigen::VectorXd f = residual_vector(ev, u);
  int iter = 0;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

  // Iterate well below the tolerance so the reduced-angle residual reported
  // at the end stays under it; stop early only when roundoff stalls Newton.
  const double tight = 1e-3 * options.tolerance;
  while (f.norm() > tight) {
    if (iter >= options.max_iterations) {
      if (f.norm() <= options.tolerance) break;
      throw Error(ErrorCode::NoConvergence, "Newton iteration did not converge");
    }
    ++iter;
    const Eigen::VectorXd step = (ev.jacobian - I).partialPivLu().solve(-f);

    // Backtracking on |F|; a full step is always tried first.
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      Eigen::VectorXd trial = u + t * step;
      try {
        auto trial_ev = evaluate(model, mu, trial, true);
        Eigen::VectorXd trial_f = residual_vector(trial_ev, trial);
        if (trial_f.norm() < f.norm() || trial_f.norm() <= options.tolerance) {
          u = std::move(trial);
          ev = std::move(trial_ev);
          f = std::move(trial_f);
          accepted = true;
          break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EscapedTube) throw;
      }
    }
    if (!accepted && f.norm() <= options.tolerance) break;
    if (!accepted) {
      // Newton stalled; fall back to one forward iterate of the map.
      u[0] = ev.X;
      u.segment(1, k) = ev.Y;
      u[n - 1] = ev.theta_lift;
      ev = evaluate(model, mu, u, true);
      f = residual_vector(ev, u);
    }
  }

  FixedPointResult out;
  out.point = TorusPoint::make(u[n - 1], u[0], u.segment(1, k));
  const auto image = return_map(out.point, mu, model);
  out.residual = torus_distance(image.point, out.point);
  out.multipliers = eigenvalues(return_map_jacobian(out.point, mu, model));
  out.newton_iterations = iter;
  out.flight_time = image.flight_time;
  out.splitting = image.splitting;
  return out;
}

}  // namespace bluesky
