#pragma once

#include <vector>

namespace bluesky {

/// Real trigonometric polynomial on the circle,
///
///   f(theta) = c + sum_k a_k cos(k theta) + b_k sin(k theta),  k = 1..degree.
///
/// Cosine and sine lists may have different lengths; the shorter one is
/// treated as zero-padded. Derivatives are exact (coefficientwise).
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(double constant, std::vector<double> cos_coeffs,
                std::vector<double> sin_coeffs);

  static FourierSeries constant(double c) { return FourierSeries(c, {}, {}); }

  double constant_term() const noexcept { return constant_; }
  const std::vector<double>& cosine_coeffs() const noexcept { return cos_; }
  const std::vector<double>& sine_coeffs() const noexcept { return sin_; }
  int degree() const noexcept;
  bool is_zero() const noexcept;

  double operator()(double theta) const noexcept;
  /// Value and first derivative in one pass.
  void evaluate(double theta, double& value, double& slope) const noexcept;

  FourierSeries derivative() const;
  FourierSeries scaled(double factor) const;

  /// Upper bound of sup |f^(order)| from the coefficients:
  /// sum_k k^order (|a_k| + |b_k|), plus |c| when order == 0.
  double sup_bound(int order = 0) const noexcept;

 private:
  double constant_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace bluesky
