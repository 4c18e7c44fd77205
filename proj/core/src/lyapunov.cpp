#include "bluesky/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace bluesky {

namespace {

struct Cocycle {
  const Model& model;
  double mu;
  TorusPoint point;
  Eigen::MatrixXd frame;

  // Advances one step; writes log |R_ii| into `logs` when non-null.
  void step(Eigen::VectorXd* logs) {
    auto ev = evaluate_return_map(model, mu, point.X, point.Y, point.theta, true);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ev.jacobian * frame);
    const auto n = frame.rows();
    frame = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    if (logs) {
      const auto& r = qr.matrixQR();
      for (Eigen::Index i = 0; i < n; ++i)
        (*logs)[i] = std::log(std::max(std::abs(r(i, i)), std::numeric_limits<double>::min()));
    }
    point = TorusPoint::make(ev.theta_lift, ev.X, std::move(ev.Y));
  }
};

}  // namespace

LyapunovSpectrum lyapunov_spectrum(const Model& model, double mu, long iterations,
                                   const LyapunovOptions& options) {
  if (iterations <= 0) throw Error(ErrorCode::InvalidArgument, "iterations must be positive");
  const int n = model.n();
  Cocycle cocycle{model, mu, options.start.value_or(seed_point(model, 0.5)),
                  Eigen::MatrixXd::Identity(n, n)};

  for (long i = 0; i < options.transient; ++i) cocycle.step(nullptr);

  const int blocks = static_cast<int>(std::clamp<long>(options.blocks, 1, iterations));
  const long per_block = iterations / blocks;
  Eigen::MatrixXd block_sums = Eigen::MatrixXd::Zero(n, blocks);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd logs(n);
  for (long i = 0; i < iterations; ++i) {
    cocycle.step(&logs);
    total += logs;
    const long b = std::min<long>(i / std::max<long>(per_block, 1), blocks - 1);
    block_sums.col(b) += logs;
  }

  LyapunovSpectrum out;
  out.orbit_length = iterations;
  out.transient_discarded = options.transient;

  Eigen::VectorXd mean = total / static_cast<double>(iterations);
  double halfwidth = 0.0;
  if (blocks > 1) {
    for (int j = 0; j < n; ++j) {
      if (mean[j] <= kLyapunovFloor) continue;
      double s = 0.0, s2 = 0.0;
      for (int b = 0; b < blocks; ++b) {
        const long len = b == blocks - 1 ? iterations - per_block * (blocks - 1) : per_block;
        const double v = block_sums(j, b) / static_cast<double>(len);
        s += v;
        s2 += v * v;
      }
      const double bm = s / blocks;
      const double var = std::max(0.0, s2 / blocks - bm * bm) * blocks / (blocks - 1.0);
      halfwidth = std::max(halfwidth, 2.0 * std::sqrt(var / blocks));
    }
  }
  out.confidence_halfwidth = halfwidth;

  out.exponents.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.exponents[static_cast<std::size_t>(j)] = std::max(mean[j], kLyapunovFloor);
  std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
  return out;
}

}  // namespace bluesky
