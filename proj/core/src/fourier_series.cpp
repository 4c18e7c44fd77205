#include "bluesky/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace bluesky {

FourierSeries::FourierSeries(double constant, std::vector<double> cos_coeffs,
                             std::vector<double> sin_coeffs)
    : constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {}

int FourierSeries::degree() const noexcept {
  return static_cast<int>(std::max(cos_.size(), sin_.size()));
}

bool FourierSeries::is_zero() const noexcept {
  auto zero = [](double v) { return v == 0.0; };
  return constant_ == 0.0 && std::all_of(cos_.begin(), cos_.end(), zero) &&
         std::all_of(sin_.begin(), sin_.end(), zero);
}

double FourierSeries::operator()(double theta) const noexcept {
  double value = 0.0;
  double slope = 0.0;
  evaluate(theta, value, slope);
  return value;
}

void FourierSeries::evaluate(double theta, double& value, double& slope) const noexcept {
  value = constant_;
  slope = 0.0;
  const int deg = degree();
  if (deg == 0) return;

  // cos(k t), sin(k t) by the angle-addition recurrence.
  const double c1 = std::cos(theta);
  const double s1 = std::sin(theta);
  double ck = c1;
  double sk = s1;
  const auto ncos = cos_.size();
  const auto nsin = sin_.size();
  for (int k = 1; k <= deg; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    const double a = idx < ncos ? cos_[idx] : 0.0;
    const double b = idx < nsin ? sin_[idx] : 0.0;
    value += a * ck + b * sk;
    slope += k * (b * ck - a * sk);
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
  }
}

FourierSeries FourierSeries::derivative() const {
  const auto deg = static_cast<std::size_t>(degree());
  std::vector<double> dc(deg, 0.0);
  std::vector<double> ds(deg, 0.0);
  for (std::size_t i = 0; i < deg; ++i) {
    const double k = static_cast<double>(i + 1);
    const double a = i < cos_.size() ? cos_[i] : 0.0;
    const double b = i < sin_.size() ? sin_[i] : 0.0;
    dc[i] = k * b;
    ds[i] = -k * a;
  }
  return FourierSeries(0.0, std::move(dc), std::move(ds));
}

FourierSeries FourierSeries::scaled(double factor) const {
  auto scale = [factor](std::vector<double> v) {
    for (double& x : v) x *= factor;
    return v;
  };
  return FourierSeries(constant_ * factor, scale(cos_), scale(sin_));
}

double FourierSeries::sup_bound(int order) const noexcept {
  double total = order == 0 ? std::abs(constant_) : 0.0;
  const auto deg = static_cast<std::size_t>(degree());
  for (std::size_t i = 0; i < deg; ++i) {
    const double k = std::pow(static_cast<double>(i + 1), order);
    const double a = i < cos_.size() ? std::abs(cos_[i]) : 0.0;
    const double b = i < sin_.size() ? std::abs(sin_[i]) : 0.0;
    total += k * (a + b);
  }
  return total;
}

}  // namespace bluesky
