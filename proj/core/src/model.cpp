#include "bluesky/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "bluesky/circle_bounds.hpp"

namespace bluesky {

namespace {

constexpr int kAlphaGrid = 4096;
constexpr int kAlphaGridCap = 1 << 20;

// Certified range of alpha; refines while the sign of the lower bound is
// undecided.
CircleRange alpha_range(const FourierSeries& alpha) {
  const DerivativeBounds bounds{alpha.sup_bound(1), alpha.sup_bound(2)};
  int grid = kAlphaGrid;
  for (;;) {
    auto range = bound_on_circle([&](double t) { return alpha(t); }, grid, bounds);
    const bool decided = range.grid_min <= 0.0 || range.lower() > 0.0;
    if (decided || grid >= kAlphaGridCap) return range;
    grid *= 2;
  }
}

bool is_integer(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

std::vector<FourierSeries> derivatives(const std::vector<FourierSeries>& in) {
  std::vector<FourierSeries> out;
  out.reserve(in.size());
  for (const auto& s : in) out.push_back(s.derivative());
  return out;
}

// Coupling lists may be left empty in a config; they then mean zero.
std::vector<FourierSeries> padded(std::vector<FourierSeries> v, int size) {
  if (v.empty()) v.assign(static_cast<std::size_t>(std::max(size, 0)), FourierSeries{});
  return v;
}

}  // namespace

std::string_view to_string(ValidationRule rule) {
  switch (rule) {
    case ValidationRule::GammaNotPositive: return "GammaNotPositive";
    case ValidationRule::NuNotGreaterThanOne: return "NuNotGreaterThanOne";
    case ValidationRule::BetaNotGreaterThanLambda: return "BetaNotGreaterThanLambda";
    case ValidationRule::DNotPositive: return "DNotPositive";
    case ValidationRule::DimensionTooSmall: return "DimensionTooSmall";
    case ValidationRule::ComponentCountMismatch: return "ComponentCountMismatch";
    case ValidationRule::AlphaNotPositive: return "AlphaNotPositive";
    case ValidationRule::HalfIntegerM: return "HalfIntegerM";
    case ValidationRule::DimensionForbidsM: return "DimensionForbidsM";
  }
  return "Unknown";
}

namespace {
std::string describe(const std::vector<ValidationRule>& rules) {
  std::ostringstream os;
  os << "invalid model:";
  for (auto r : rules) os << ' ' << to_string(r);
  return os.str();
}
}  // namespace

ValidationError::ValidationError(std::vector<ValidationRule> rules)
    : Error(ErrorCode::InvalidConfig, describe(rules)), rules_(std::move(rules)) {}

std::vector<ValidationRule> violated_rules(const ModelConfig& cfg) {
  std::vector<ValidationRule> out;
  const bool gamma_ok = std::isfinite(cfg.gamma) && cfg.gamma > 0.0;
  if (!gamma_ok) out.push_back(ValidationRule::GammaNotPositive);
  if (gamma_ok && !(cfg.lambda / cfg.gamma > 1.0)) out.push_back(ValidationRule::NuNotGreaterThanOne);
  if (!(cfg.beta > cfg.lambda)) out.push_back(ValidationRule::BetaNotGreaterThanLambda);
  if (!(std::isfinite(cfg.d) && cfg.d > 0.0)) out.push_back(ValidationRule::DNotPositive);
  if (cfg.n < 2) out.push_back(ValidationRule::DimensionTooSmall);

  const int ydim = cfg.n - 2;
  auto count_ok = [ydim](const std::vector<FourierSeries>& v) {
    return v.empty() || static_cast<int>(v.size()) == ydim;
  };
  if (!count_ok(cfg.coupling_fy) || !count_ok(cfg.coupling_hy) || !count_ok(cfg.g0))
    out.push_back(ValidationRule::ComponentCountMismatch);

  if (!(alpha_range(cfg.alpha).lower() > 0.0)) out.push_back(ValidationRule::AlphaNotPositive);

  if (!is_integer(cfg.m)) {
    out.push_back(ValidationRule::HalfIntegerM);
  } else {
    const double am = std::abs(cfg.m);
    if ((cfg.n == 2 && cfg.m != 1.0) || (cfg.n == 3 && am > 1.0))
      out.push_back(ValidationRule::DimensionForbidsM);
  }
  return out;
}

Model::Model(ModelConfig cfg) : cfg_(std::move(cfg)) {
  const int ydim = cfg_.n - 2;
  cfg_.coupling_fy = padded(std::move(cfg_.coupling_fy), ydim);
  cfg_.coupling_hy = padded(std::move(cfg_.coupling_hy), ydim);
  cfg_.g0 = padded(std::move(cfg_.g0), ydim);
  m_ = static_cast<int>(cfg_.m);

  const auto range = alpha_range(cfg_.alpha);
  alpha_lower_ = range.lower();
  alpha_upper_ = range.upper();

  alpha_d_ = cfg_.alpha.derivative();
  h_d_ = cfg_.h.derivative();
  fx_d_ = cfg_.coupling_fx.derivative();
  hx_d_ = cfg_.coupling_hx.derivative();
  fy_d_ = derivatives(cfg_.coupling_fy);
  hy_d_ = derivatives(cfg_.coupling_hy);
  g0_d_ = derivatives(cfg_.g0);
}

double Model::rho_leading() const noexcept { return std::exp(-kTwoPi * cfg_.lambda); }
double Model::rho_unstable() const noexcept { return std::exp(kTwoPi * cfg_.gamma); }

Model validate_config(const ModelConfig& cfg) {
  auto rules = violated_rules(cfg);
  if (!rules.empty()) throw ValidationError(std::move(rules));
  return Model(cfg);
}

TorusPoint TorusPoint::make(double theta, double X, Eigen::VectorXd Y) {
  return TorusPoint{wrap_angle(theta), X, std::move(Y)};
}

double omega(const Model& model, double mu) {
  return (std::log(model.d()) - std::log(mu)) / model.gamma();
}

LocalPassage local_map_T0(const RawSectionPoint& p, const Model& model) {
  if (p.section != Section::S0)
    throw Error(ErrorCode::InvalidArgument, "local_map_T0 expects a point on S0");
  const double z0 = p.coord_a;
  if (!(z0 > 0.0))
    throw Error(ErrorCode::NotInPositiveHalf, "z0 <= 0: orbit left the homoclinic tube");

  const double d = model.d();
  const double t = std::log(d / z0) / model.gamma();
  LocalPassage out;
  out.flight_time = t;
  out.theta_lift = p.theta + t;
  out.point.section = Section::S1;
  out.point.theta = wrap_angle(out.theta_lift);
  out.point.coord_a = std::pow(d, 1.0 - model.nu()) * std::pow(z0, model.nu());
  out.point.coord_b = std::pow(z0 / d, model.beta() / model.gamma()) * p.coord_b;
  return out;
}

/// Grants map evaluation access to the precomputed derivative series.
struct MapKernel {
  static GlobalPassage global(const RawSectionPoint& p, double mu, const Model& model) {
    if (p.section != Section::S1)
      throw Error(ErrorCode::InvalidArgument, "global_map_T1 expects a point on S1");
    const auto& c = model.cfg_;
    const double th = p.theta;
    const double x = p.coord_a;
    const Eigen::VectorXd& y = p.coord_b;
    const int k = model.y_dim();
    if (y.size() != k) throw Error(ErrorCode::InvalidArgument, "y has the wrong dimension");

    double z0 = mu * c.alpha(th) + x * c.coupling_fx(th);
    double th0 = c.m * th + c.h(th) + x * c.coupling_hx(th);
    Eigen::VectorXd y0(k);
    for (int j = 0; j < k; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double fy = c.coupling_fy[ju](th);
      const double hy = c.coupling_hy[ju](th);
      z0 += fy * y[j];
      th0 += hy * y[j];
      y0[j] = c.g0[ju](th) + x * fy + hy * y[j];
    }
    GlobalPassage out;
    out.theta_lift = th0;
    out.point.section = Section::S0;
    out.point.theta = wrap_angle(th0);
    out.point.coord_a = z0;
    out.point.coord_b = std::move(y0);
    return out;
  }

  static MapEvaluation evaluate(const Model& model, double mu, double X,
                                const Eigen::VectorXd& Y, double th, bool with_jac) {
    if (!(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "return map requires mu > 0");
    const auto& c = model.cfg_;
    const int k = model.y_dim();
    if (Y.size() != k) throw Error(ErrorCode::InvalidArgument, "Y has the wrong dimension");

    const double nu = model.nu();
    const double gamma = model.gamma();
    const double d = model.d();
    const double log_mu = std::log(mu);
    const double mu_nu = std::exp(nu * log_mu);
    const double d_pow = std::pow(d, 1.0 - nu);
    const double cx = d_pow * mu_nu;                  // x = cx X
    const double cy = mu_nu;                          // y = cy Y
    const double b = std::exp((nu - 1.0) * log_mu);   // mu^(nu-1)
    const double a = d_pow * b;                       // x / mu = a X

    double al, al_d, fx, fx_d, hh, hh_d, hx, hx_d;
    c.alpha.evaluate(th, al, al_d);
    c.coupling_fx.evaluate(th, fx, fx_d);
    c.h.evaluate(th, hh, hh_d);
    c.coupling_hx.evaluate(th, hx, hx_d);

    // w = z0 / mu, evaluated without forming z0 so that w == alpha exactly
    // when the couplings vanish.
    double w = al + a * X * fx;
    double w_th = al_d + a * X * fx_d;
    double th_bar = c.m * th + hh + cx * X * hx;
    double th_bar_th = c.m + hh_d + cx * X * hx_d;

    Eigen::VectorXd fy(k), fy_d(k), hy(k), hy_d(k), g(k), g_d(k);
    for (int j = 0; j < k; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      c.coupling_fy[ju].evaluate(th, fy[j], fy_d[j]);
      c.coupling_hy[ju].evaluate(th, hy[j], hy_d[j]);
      c.g0[ju].evaluate(th, g[j], g_d[j]);
      w += b * fy[j] * Y[j];
      w_th += b * fy_d[j] * Y[j];
      th_bar += cy * hy[j] * Y[j];
      th_bar_th += cy * hy_d[j] * Y[j];
    }
    if (!(w > 0.0))
      throw Error(ErrorCode::EscapedTube, "intermediate point has z0 <= 0 (escaped the tube)");

    const double om = (std::log(d) - log_mu) / gamma;
    const double log_w = std::log(w);
    const double flight = om - log_w / gamma;

    MapEvaluation out;
    out.splitting = w;
    out.flight_time = flight;
    out.X = std::exp(nu * log_w);
    out.theta_lift = th_bar + flight;

    // Ybar = (mu w / d)^(beta/gamma) y0 / mu^nu
    const double q = model.beta() / gamma;
    const double y_scale = std::exp(q * (log_mu + log_w - std::log(d)) - nu * log_mu);
    Eigen::VectorXd y0(k);
    for (int j = 0; j < k; ++j) y0[j] = g[j] + cx * X * fy[j] + hy[j] * cy * Y[j];
    out.Y = y_scale * y0;

    if (!with_jac) return out;

    const int n = k + 2;
    const int ith = k + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);

    // dw by variable
    Eigen::VectorXd dw(n);
    dw[0] = a * fx;
    for (int j = 0; j < k; ++j) dw[1 + j] = b * fy[j];
    dw[ith] = w_th;

    // Xbar = w^nu
    const double dX_dw = nu * out.X / w;
    J.row(0) = dX_dw * dw.transpose();

    // Ybar_j = y_scale(w) * y0_j
    const double dscale_dw = y_scale * q / w;
    for (int j = 0; j < k; ++j) {
      Eigen::RowVectorXd dy0 = Eigen::RowVectorXd::Zero(n);
      dy0[0] = cx * fy[j];
      dy0[1 + j] = hy[j] * cy;
      dy0[ith] = g_d[j] + cx * X * fy_d[j] + hy_d[j] * cy * Y[j];
      J.row(1 + j) = dscale_dw * y0[j] * dw.transpose() + y_scale * dy0;
    }

    // theta_bar = (m th + h + cx X Hx + cy <Hy, Y>) + omega - ln(w)/gamma
    Eigen::RowVectorXd dth = -dw.transpose() / (gamma * w);
    dth[0] += cx * hx;
    for (int j = 0; j < k; ++j) dth[1 + j] += cy * hy[j];
    dth[ith] += th_bar_th;
    J.row(ith) = dth;

    out.jacobian = std::move(J);
    return out;
  }
};

GlobalPassage global_map_T1(const RawSectionPoint& p, double mu, const Model& model) {
  return MapKernel::global(p, mu, model);
}

MapEvaluation evaluate_return_map(const Model& model, double mu, double X,
                                  const Eigen::VectorXd& Y, double theta,
                                  bool with_jacobian) {
  return MapKernel::evaluate(model, mu, X, Y, theta, with_jacobian);
}

ReturnMapResult return_map(const TorusPoint& p, double mu, const Model& model) {
  auto ev = MapKernel::evaluate(model, mu, p.X, p.Y, p.theta, false);
  ReturnMapResult out;
  out.theta_lift = ev.theta_lift;
  out.winding = static_cast<long>(std::floor(ev.theta_lift / kTwoPi));
  out.flight_time = ev.flight_time;
  out.splitting = ev.splitting;
  out.point = TorusPoint::make(ev.theta_lift, ev.X, std::move(ev.Y));
  return out;
}

Eigen::MatrixXd return_map_jacobian(const TorusPoint& p, double mu, const Model& model) {
  return MapKernel::evaluate(model, mu, p.X, p.Y, p.theta, true).jacobian;
}

LimitImage limit_map(const Model& model, double mu, double theta) {
  const auto& c = model.config();
  const double al = c.alpha(theta);
  const double om = mu > 0.0 ? omega(model, mu) : std::numeric_limits<double>::infinity();
  LimitImage out;
  out.X = std::pow(al, model.nu());
  out.theta_lift = om + c.m * theta + c.h(theta) - std::log(al) / model.gamma();
  return out;
}

TorusPoint seed_point(const Model& model, double theta) {
  const double al = model.config().alpha(theta);
  return TorusPoint::make(theta, std::pow(al, model.nu()), Eigen::VectorXd::Zero(model.y_dim()));
}

}  // namespace bluesky
