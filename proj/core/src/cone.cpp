#include "bluesky/cone.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

#include "bluesky/circle_bounds.hpp"

namespace bluesky {

TorusPartials ReturnMapTorus::partials(const Eigen::VectorXd& r, double theta) const {
  const auto k = r.size();
  const auto ev = evaluate_return_map(model_, mu_, r[0], r.tail(k - 1), theta, true);
  const auto& J = ev.jacobian;
  TorusPartials out;
  out.p_r = J.topLeftCorner(k, k);
  out.p_theta = J.topRightCorner(k, 1);
  out.q_r = J.bottomLeftCorner(1, k);
  out.q_theta = J(k, k);
  return out;
}

TorusPartials RadiallyScaledMap::partials(const Eigen::VectorXd& r, double theta) const {
  const Eigen::VectorXd rp = center_ + delta_ * (r - center_);
  const Eigen::VectorXd rq = center_ + epsilon_ * (r - center_);
  auto at_p = base_.partials(rp, theta);
  auto at_q = base_.partials(rq, theta);
  TorusPartials out;
  out.p_r = delta_ * at_p.p_r;
  out.p_theta = std::move(at_p.p_theta);
  out.q_r = epsilon_ * at_q.q_r;
  out.q_theta = at_q.q_theta;
  return out;
}

RadialBox trapping_box(const Model& model, const TrappingRegion& region) {
  const int k = model.n() - 1;
  RadialBox box;
  box.lower = Eigen::VectorXd::Constant(k, -region.radius);
  box.upper = Eigen::VectorXd::Constant(k, region.radius);
  box.lower[0] = region.x_low - region.radius;
  box.upper[0] = region.x_high + region.radius;
  return box;
}

namespace {

// Pointwise quantities whose suprema enter the certificate.
enum Quantity {
  kPr, kPtheta, kQthetaInv, kQr, kQthetaInvQr, kCrossPr, kCrossPthetaBar, kCrossQthetaBar,
  kCrossQr, kQuantityCount
};
using Values = std::array<double, kQuantityCount>;

Values pointwise(const TorusPartials& d) {
  Values v{};
  const double qinv = 1.0 / d.q_theta;
  // p^x(r, thbar) = p(r, q^x(r, thbar)), q^x_thbar = 1/q_th, q^x_r = -q_r/q_th.
  const Eigen::MatrixXd cross_pr = d.p_r - d.p_theta * (d.q_r * qinv);
  v[kPr] = d.p_r.size() == 1 ? std::abs(d.p_r(0, 0)) : d.p_r.operatorNorm();
  v[kPtheta] = d.p_theta.norm();
  v[kQthetaInv] = std::abs(qinv);
  v[kQr] = d.q_r.norm();
  v[kQthetaInvQr] = std::abs(qinv) * v[kQr];
  v[kCrossPr] = cross_pr.size() == 1 ? std::abs(cross_pr(0, 0)) : cross_pr.operatorNorm();
  v[kCrossPthetaBar] = v[kPtheta] * std::abs(qinv);
  v[kCrossQthetaBar] = std::abs(qinv);
  v[kCrossQr] = v[kQthetaInvQr];
  return v;
}

struct GridSups {
  Values raw{};
  Values inflation{};
  long samples = 0;
};

// Radial sample points of the box, row-major over axes.
std::vector<Eigen::VectorXd> radial_samples(const RadialBox& box, std::vector<std::vector<int>>& neighbours) {
  const auto k = box.lower.size();
  const int levels = std::max(box.levels, 1);
  long count = 1;
  for (Eigen::Index a = 0; a < k; ++a) count *= levels;
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  neighbours.assign(static_cast<std::size_t>(count), {});
  for (long idx = 0; idx < count; ++idx) {
    Eigen::VectorXd r(k);
    long rem = idx, stride = 1;
    for (Eigen::Index a = 0; a < k; ++a) {
      const int level = static_cast<int>(rem % levels);
      rem /= levels;
      const double t = levels == 1 ? 0.5 : static_cast<double>(level) / (levels - 1);
      r[a] = box.lower[a] + t * (box.upper[a] - box.lower[a]);
      if (level + 1 < levels) neighbours[static_cast<std::size_t>(idx)].push_back(static_cast<int>(idx + stride));
      stride *= levels;
    }
    out.push_back(std::move(r));
  }
  return out;
}

GridSups sample_sups(const SolidTorusMap& map, const RadialBox& box, int theta_grid, double safety) {
  std::vector<std::vector<int>> neighbours;
  const auto radial = radial_samples(box, neighbours);
  const std::size_t R = radial.size();

  GridSups out;
  Values theta_step{}, radial_step{};
  std::vector<Values> first(R), prev(R), cur(R);
  for (int i = 0; i < theta_grid; ++i) {
    const double theta = kTwoPi * i / theta_grid;
    for (std::size_t s = 0; s < R; ++s) cur[s] = pointwise(map.partials(radial[s], theta));
    for (std::size_t s = 0; s < R; ++s) {
      for (int q = 0; q < kQuantityCount; ++q) {
        out.raw[q] = std::max(out.raw[q], cur[s][q]);
        if (i > 0) theta_step[q] = std::max(theta_step[q], std::abs(cur[s][q] - prev[s][q]));
        for (int nb : neighbours[s])
          radial_step[q] = std::max(radial_step[q], std::abs(cur[s][q] - cur[static_cast<std::size_t>(nb)][q]));
      }
    }
    if (i == 0) first = cur;
    std::swap(prev, cur);
  }
  // Close the loop in theta.
  for (std::size_t s = 0; s < R; ++s)
    for (int q = 0; q < kQuantityCount; ++q)
      theta_step[q] = std::max(theta_step[q], std::abs(first[s][q] - prev[s][q]));

  // A value between two samples differs from the nearer one by at most half a step,
  // scaled by the safety factor to cover curvature between nodes.
  for (int q = 0; q < kQuantityCount; ++q)
    out.inflation[q] = 0.5 * safety * (theta_step[q] + radial_step[q]);
  out.samples = static_cast<long>(R) * theta_grid;
  return out;
}

struct Inequalities {
  double contraction, hyperbolicity, cross_contraction, cross_expansion, cross_product;
  double L_low, L_high;
  bool holds() const {
    return contraction > 0 && hyperbolicity > 0 && cross_contraction > 0 && cross_expansion > 0 &&
           cross_product > 0 && L_low < L_high;
  }
};

Inequalities evaluate(const Values& s) {
  Inequalities e{};
  e.contraction = 1.0 - s[kPr];
  e.hyperbolicity = (1.0 - s[kPr]) * (1.0 - s[kQthetaInv]) - s[kPtheta] * s[kQthetaInvQr];
  e.cross_contraction = 1.0 - s[kCrossPr];
  e.cross_expansion = 1.0 - s[kCrossQthetaBar];
  e.cross_product = (1.0 - s[kCrossPr]) * (1.0 - s[kCrossQthetaBar]) - s[kCrossPthetaBar] * s[kCrossQr];
  e.L_low = e.cross_contraction > 0 ? s[kCrossPthetaBar] / e.cross_contraction : kInfinity;
  e.L_high = s[kCrossQr] == 0.0 ? kInfinity : e.cross_expansion / s[kCrossQr];
  if (e.cross_expansion <= 0) e.L_high = -kInfinity;
  return e;
}

}  // namespace

ConeCertificate cone_certify(const SolidTorusMap& map, const RadialBox& box, int theta_grid,
                             const ConeOptions& options) {
  if (theta_grid < 4) throw Error(ErrorCode::InvalidArgument, "theta grid must have at least 4 points");
  if (box.lower.size() != map.radial_dim() || box.upper.size() != map.radial_dim())
    throw Error(ErrorCode::InvalidArgument, "radial box dimension does not match the map");

  for (int grid = theta_grid;; grid *= 2) {
    const auto sups = sample_sups(map, box, grid, options.lipschitz_safety);
    if (sups.raw[kQthetaInv] >= 1.0)
      throw Error(ErrorCode::NotExpandingInTheta, "|dq/dtheta| <= 1 somewhere on the sample grid");

    Values inflated{};
    for (int q = 0; q < kQuantityCount; ++q) inflated[q] = sups.raw[q] + sups.inflation[q];
    const auto raw = evaluate(sups.raw);
    const auto cert = evaluate(inflated);

    ConeCertificate c;
    c.sup_pr = sups.raw[kPr];
    c.sup_ptheta = sups.raw[kPtheta];
    c.sup_qtheta_inv = sups.raw[kQthetaInv];
    c.sup_qr = sups.raw[kQr];
    c.sup_qtheta_inv_qr = sups.raw[kQthetaInvQr];
    c.cross_sup_pr = sups.raw[kCrossPr];
    c.cross_sup_ptheta_bar = sups.raw[kCrossPthetaBar];
    c.cross_sup_qtheta_bar = sups.raw[kCrossQthetaBar];
    c.cross_sup_qr = sups.raw[kCrossQr];
    c.L_low = raw.L_low;
    c.L_high = raw.L_high;
    c.L_nonempty = raw.L_low < raw.L_high;
    c.margin_contraction = cert.contraction;
    c.margin_hyperbolicity = cert.hyperbolicity;
    c.margin_cross_contraction = cert.cross_contraction;
    c.margin_cross_expansion = cert.cross_expansion;
    c.margin_cross_product = cert.cross_product;
    c.expansion_lower_bound = inflated[kQthetaInv] > 0 ? 1.0 / inflated[kQthetaInv] : kInfinity;
    c.contraction_upper_bound = inflated[kPr];
    c.inflation = *std::max_element(sups.inflation.begin(), sups.inflation.end());
    c.theta_grid = grid;
    c.samples = sups.samples;
    c.verdict = cert.holds();

    if (c.verdict || !raw.holds()) return c;
    if (grid * 2 > options.theta_grid_cap)
      throw Error(ErrorCode::Inconclusive,
                  "cone inequalities hold on the samples but not after inflation at the grid cap");
  }
}

ConeCertificate cone_certify(const Model& model, double mu, int theta_grid,
                             const ConeOptions& options) {
  if (std::abs(model.m()) < 2)
    throw Error(ErrorCode::CaseMismatch, "cone certificate applies only to |m| >= 2");
  if (!(mu > 0)) throw Error(ErrorCode::InvalidArgument, "mu must be positive");
  const auto region = compute_trapping_region(model, mu);
  if (!region.valid)
    throw Error(ErrorCode::EscapedTube, "no trapping region at this mu");
  const ReturnMapTorus map(model, mu);
  return cone_certify(map, trapping_box(model, region), theta_grid, options);
}

AnnulusDiagnostic annulus_principle_check(const SolidTorusMap& map, const RadialBox& box,
                                          int theta_grid) {
  if (theta_grid < 4) throw Error(ErrorCode::InvalidArgument, "theta grid must have at least 4 points");
  const auto sups = sample_sups(map, box, theta_grid, 0.0);
  AnnulusDiagnostic d;
  d.sup_pr = sups.raw[kPr];
  d.sup_qtheta_inv = sups.raw[kQthetaInv];
  d.sup_qr = sups.raw[kQr];
  d.sup_ptheta_qtheta_inv = sups.raw[kCrossPthetaBar];
  d.lhs = 1.0 - d.sup_qtheta_inv * d.sup_pr;
  d.rhs = 2.0 * std::sqrt(d.sup_qtheta_inv * d.sup_qr * d.sup_ptheta_qtheta_inv);
  d.holds = d.sup_pr < 1.0 && d.lhs > d.rhs;
  return d;
}

}  // namespace bluesky
