#include "bluesky/trapping.hpp"

#include <algorithm>
#include <cmath>

namespace bluesky {

bool TrappingRegion::contains(const TorusPoint& p) const {
  return p.X > x_low - radius && p.X < x_high + radius && p.Y.norm() < radius;
}

TrappingRegion compute_trapping_region(const Model& model, double mu) {
  if (!(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "trapping region requires mu > 0");
  const auto& c = model.config();
  const double nu = model.nu();
  const double d = model.d();
  const double q = model.beta() / model.gamma();

  TrappingRegion out;
  out.x_low = std::pow(model.alpha_lower(), nu);
  out.x_high = std::pow(model.alpha_upper(), nu);

  // Probe box: X in [x_low - 1, x_high + 1], |Y| <= 1.
  const double x_max = out.x_high + 1.0;
  const double mu_nu = std::pow(mu, nu);
  const double b = std::pow(mu, nu - 1.0);
  const double a = std::pow(d, 1.0 - nu) * b;
  const double cx = std::pow(d, 1.0 - nu) * mu_nu;

  double fy_sum = 0.0;
  for (const auto& s : c.coupling_fy) fy_sum += s.sup_bound();
  const double err_w = a * x_max * c.coupling_fx.sup_bound() + b * fy_sum;

  const double w_low = model.alpha_lower() - err_w;
  const double w_high = model.alpha_upper() + err_w;
  if (!(w_low > 0.0)) return out;

  const double dev_x = std::max(std::pow(w_high, nu) - out.x_high, out.x_low - std::pow(w_low, nu));

  const double y_scale = std::exp(q * (std::log(mu) + std::log(w_high) - std::log(d)) -
                                  nu * std::log(mu));
  double dev_y2 = 0.0;
  for (std::size_t j = 0; j < c.g0.size(); ++j) {
    const double hy = j < c.coupling_hy.size() ? c.coupling_hy[j].sup_bound() : 0.0;
    const double fy = j < c.coupling_fy.size() ? c.coupling_fy[j].sup_bound() : 0.0;
    const double bound = y_scale * (c.g0[j].sup_bound() + cx * x_max * fy + hy * mu_nu);
    dev_y2 += bound * bound;
  }
  out.deviation = std::max(dev_x, std::sqrt(dev_y2));
  out.radius = std::max(2.0 * out.deviation, kMinTrappingRadius);
  // The image bound was derived on the probe box, which contains the K-box
  // only while K <= 1.
  out.valid = out.radius <= 1.0;
  return out;
}

}  // namespace bluesky
