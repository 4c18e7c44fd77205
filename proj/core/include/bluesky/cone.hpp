#pragma once

#include <limits>
#include <memory>

#include <Eigen/Core>

#include "bluesky/model.hpp"
#include "bluesky/trapping.hpp"

namespace bluesky {

/// Partial derivatives of a solid-torus map (r, theta) -> (p(r, theta), q(r, theta)).
struct TorusPartials {
  Eigen::MatrixXd p_r;
  Eigen::VectorXd p_theta;
  Eigen::RowVectorXd q_r;
  double q_theta = 0.0;
};

/// Diffeomorphism of a solid torus, r in R^k, theta an angle.
class SolidTorusMap {
 public:
  virtual ~SolidTorusMap() = default;
  virtual int radial_dim() const = 0;
  virtual TorusPartials partials(const Eigen::VectorXd& r, double theta) const = 0;
};

/// The rescaled return map with r = (X, Y).
class ReturnMapTorus final : public SolidTorusMap {
 public:
  ReturnMapTorus(const Model& model, double mu) : model_(model), mu_(mu) {}
  int radial_dim() const override { return model_.n() - 1; }
  TorusPartials partials(const Eigen::VectorXd& r, double theta) const override;

 private:
  const Model& model_;
  double mu_;
};

/// r -> center + delta (r - center) inside p and center + epsilon (r - center)
/// inside q. epsilon = 0 decouples theta from r and leaves a skew product.
class RadiallyScaledMap final : public SolidTorusMap {
 public:
  RadiallyScaledMap(const SolidTorusMap& base, Eigen::VectorXd center, double delta, double epsilon)
      : base_(base), center_(std::move(center)), delta_(delta), epsilon_(epsilon) {}
  int radial_dim() const override { return base_.radial_dim(); }
  TorusPartials partials(const Eigen::VectorXd& r, double theta) const override;

 private:
  const SolidTorusMap& base_;
  Eigen::VectorXd center_;
  double delta_;
  double epsilon_;
};

/// Axis-aligned box of radial values sampled at `levels` points per axis.
struct RadialBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  int levels = 3;
};

/// Box enclosing the trapping region of the model.
RadialBox trapping_box(const Model& model, const TrappingRegion& region);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Sup-norms of the partials, of the cross-form partials obtained by solving
/// theta from (r, theta_bar), and the admissible cone aperture L.
///
/// The sup_* and cross_* fields are raw maxima over the sample grid; *_inflation
/// holds the sampling error bound added to each before the inequalities are
/// tested. L_low/L_high come from the raw sups; the verdict uses the inflated
/// ones.
struct ConeCertificate {
  double sup_pr = 0.0;
  double sup_ptheta = 0.0;
  double sup_qtheta_inv = 0.0;
  double sup_qr = 0.0;
  double sup_qtheta_inv_qr = 0.0;  // |(dq/dtheta)^-1 dq/dr|, right factor of the second condition

  double cross_sup_pr = 0.0;
  double cross_sup_ptheta_bar = 0.0;
  double cross_sup_qtheta_bar = 0.0;
  double cross_sup_qr = 0.0;

  double L_low = 0.0;
  double L_high = 0.0;
  bool L_nonempty = false;

  // Margins of the inequalities with inflated sups; all must be positive.
  double margin_contraction = 0.0;        // 1 - |dp/dr|
  double margin_hyperbolicity = 0.0;      // (1-|p_r|)(1-|q_th^-1|) - |p_th| |q_th^-1 q_r|
  double margin_cross_contraction = 0.0;  // 1 - |p^x_r|
  double margin_cross_expansion = 0.0;    // 1 - |q^x_thbar|
  double margin_cross_product = 0.0;      // (1-|p^x_r|)(1-|q^x_thbar|) - |p^x_thbar| |q^x_r|

  double expansion_lower_bound = 0.0;     // 1 / inflated sup |q_theta^-1|
  double contraction_upper_bound = 0.0;   // inflated sup |p_r|
  double inflation = 0.0;                 // largest sampling bound used
  int theta_grid = 0;
  long samples = 0;
  bool verdict = false;
};

struct ConeOptions {
  int theta_grid_cap = 1 << 16;
  double lipschitz_safety = 2.0;
};

/// Throws NotExpandingInTheta when inf |dq/dtheta| <= 1 on the samples, and
/// Inconclusive when the inequalities hold on the samples but not after
/// inflation at the grid cap.
ConeCertificate cone_certify(const SolidTorusMap& map, const RadialBox& box, int theta_grid,
                             const ConeOptions& options = {});

/// Model overload: samples the trapping region. Throws CaseMismatch for |m| < 2.
ConeCertificate cone_certify(const Model& model, double mu, int theta_grid,
                             const ConeOptions& options = {});

/// Annulus-principle check used alongside the torus condition:
///   1 - |q_th^-1| |p_r| > 2 sqrt(|q_th^-1| |q_r| |p_th q_th^-1|),  |p_r| < 1.
struct AnnulusDiagnostic {
  double sup_pr = 0.0;
  double sup_qtheta_inv = 0.0;
  double sup_qr = 0.0;
  double sup_ptheta_qtheta_inv = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

AnnulusDiagnostic annulus_principle_check(const SolidTorusMap& map, const RadialBox& box,
                                          int theta_grid);

}  // namespace bluesky
