#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bluesky/error.hpp"
#include "bluesky/fourier_series.hpp"

namespace bluesky {

/// Raw parameters of the return-map model. Nothing here is checked; turn it
/// into a Model with validate_config() before evaluating any map.
///
/// The local flow near the saddle orbit is linear,
///   x' = -lambda x,  y' = -beta y,  z' = gamma z,  theta' = 1,
/// and the global map from S1 = {z = d} back to S0 = {x = d} is
///   z0     = mu alpha(th) + x Fx(th) + <Fy(th), y>
///   y0_j   = g0_j(th) + x Fy_j(th) + Hy_j(th) y_j
///   theta0 = m th + h(th) + x Hx(th) + <Hy(th), y>.
struct ModelConfig {
  double m = 0.0;  // degree of the global map; must be an integer
  double gamma = 1.0;
  double lambda = 2.0;
  double beta = 3.0;
  double d = 1.0;
  int n = 3;  // y has n - 2 components
  FourierSeries alpha = FourierSeries::constant(1.0);
  FourierSeries h;
  FourierSeries coupling_fx;
  FourierSeries coupling_hx;
  std::vector<FourierSeries> coupling_fy;
  std::vector<FourierSeries> coupling_hy;
  std::vector<FourierSeries> g0;
};

enum class ValidationRule {
  GammaNotPositive,
  NuNotGreaterThanOne,
  BetaNotGreaterThanLambda,
  DNotPositive,
  DimensionTooSmall,
  ComponentCountMismatch,
  AlphaNotPositive,
  HalfIntegerM,
  DimensionForbidsM,
};

std::string_view to_string(ValidationRule rule);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationRule> rules);
  const std::vector<ValidationRule>& rules() const noexcept { return rules_; }

 private:
  std::vector<ValidationRule> rules_;
};

/// Every rule the config violates, in declaration order. Empty means valid.
std::vector<ValidationRule> violated_rules(const ModelConfig& cfg);

/// A validated, immutable model. Only validate_config() constructs one.
class Model {
 public:
  int m() const noexcept { return m_; }
  int n() const noexcept { return cfg_.n; }
  int y_dim() const noexcept { return cfg_.n - 2; }
  double gamma() const noexcept { return cfg_.gamma; }
  double lambda() const noexcept { return cfg_.lambda; }
  double beta() const noexcept { return cfg_.beta; }
  double d() const noexcept { return cfg_.d; }
  double nu() const noexcept { return cfg_.lambda / cfg_.gamma; }

  /// Leading stable and unstable multipliers of the saddle orbit (period 2pi).
  double rho_leading() const noexcept;
  double rho_unstable() const noexcept;

  /// Certified bounds of alpha over the circle.
  double alpha_lower() const noexcept { return alpha_lower_; }
  double alpha_upper() const noexcept { return alpha_upper_; }

  const ModelConfig& config() const noexcept { return cfg_; }
  const FourierSeries& alpha_prime() const noexcept { return alpha_d_; }
  const FourierSeries& h_prime() const noexcept { return h_d_; }

 private:
  friend Model validate_config(const ModelConfig& cfg);
  friend struct MapKernel;
  explicit Model(ModelConfig cfg);

  ModelConfig cfg_;
  int m_ = 0;
  double alpha_lower_ = 0.0;
  double alpha_upper_ = 0.0;
  FourierSeries alpha_d_, h_d_, fx_d_, hx_d_;
  std::vector<FourierSeries> fy_d_, hy_d_, g0_d_;
};

/// Throws ValidationError listing every violated rule.
Model validate_config(const ModelConfig& cfg);

/// Point of the rescaled cross-section S1: x = d^(1-nu) mu^nu X, y = mu^nu Y.
struct TorusPoint {
  double theta = 0.0;  // always in [0, 2pi)
  double X = 0.0;
  Eigen::VectorXd Y;

  static TorusPoint make(double theta, double X, Eigen::VectorXd Y);
};

enum class Section { S0, S1 };

/// Un-rescaled point on S0 (coord_a = z0) or S1 (coord_a = x1); coord_b is y.
struct RawSectionPoint {
  Section section = Section::S0;
  double theta = 0.0;
  double coord_a = 0.0;
  Eigen::VectorXd coord_b;
};

struct LocalPassage {
  RawSectionPoint point;  // on S1
  double theta_lift = 0.0;
  double flight_time = 0.0;
};

/// Passage through the linearized neighbourhood, S0+ -> S1.
/// Throws NotInPositiveHalf when z0 <= 0.
LocalPassage local_map_T0(const RawSectionPoint& p, const Model& model);

struct GlobalPassage {
  RawSectionPoint point;  // on S0
  double theta_lift = 0.0;
};

/// Global map S1 -> S0. At x = 0, y = 0, mu = 0 it returns z0 == 0 exactly.
GlobalPassage global_map_T1(const RawSectionPoint& p, double mu, const Model& model);

struct ReturnMapResult {
  TorusPoint point;
  long winding = 0;         // floor(theta_lift / 2pi)
  double theta_lift = 0.0;  // image angle before reduction
  double flight_time = 0.0; // time spent in the local neighbourhood
  double splitting = 0.0;   // z0 / mu at the intermediate S0 point
};

/// T = T0 T1 in rescaled coordinates. Requires mu > 0; throws EscapedTube if
/// the intermediate point falls on z0 <= 0.
ReturnMapResult return_map(const TorusPoint& p, double mu, const Model& model);

/// Analytic n x n Jacobian of return_map, variables ordered (X, Y..., theta).
Eigen::MatrixXd return_map_jacobian(const TorusPoint& p, double mu, const Model& model);

/// Lift-level evaluation shared by the solvers. theta is used as given (not
/// reduced), so theta_lift is a continuous function of it.
struct MapEvaluation {
  double X = 0.0;
  Eigen::VectorXd Y;
  double theta_lift = 0.0;
  double flight_time = 0.0;
  double splitting = 0.0;
  Eigen::MatrixXd jacobian;  // empty unless requested
};

MapEvaluation evaluate_return_map(const Model& model, double mu, double X,
                                  const Eigen::VectorXd& Y, double theta,
                                  bool with_jacobian);

/// omega(mu) = (1/gamma) ln(d / mu), the phase advance accumulated in the
/// local neighbourhood by the unperturbed homoclinic orbit.
double omega(const Model& model, double mu);

/// Leading-order map as mu -> 0: X = alpha^nu, Y = 0,
/// theta_lift = omega(mu) + m theta + h(theta) - ln(alpha(theta))/gamma.
/// mu = 0 is accepted and yields an infinite phase.
struct LimitImage {
  double X = 0.0;
  double theta_lift = 0.0;
};
LimitImage limit_map(const Model& model, double mu, double theta);

/// Seed curve (X, Y) = (alpha(theta)^nu, 0).
TorusPoint seed_point(const Model& model, double theta);

}  // namespace bluesky
