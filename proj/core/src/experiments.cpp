#include "bluesky/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bluesky/circle_bounds.hpp"
#include "bluesky/lyapunov.hpp"
#include "bluesky/rng.hpp"

namespace bluesky {

std::vector<double> geometric_mu_grid(double mu_min, double mu_max, int per_decade) {
  if (!(mu_min > 0) || !(mu_max > mu_min))
    throw Error(ErrorCode::InvalidArgument, "need 0 < mu_min < mu_max");
  if (per_decade < 1) throw Error(ErrorCode::InvalidArgument, "per_decade must be positive");
  const double decades = std::log10(mu_max / mu_min);
  const int steps = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i)
    out[static_cast<std::size_t>(i)] = mu_max * std::pow(mu_min / mu_max, static_cast<double>(i) / steps);
  out.front() = mu_max;
  out.back() = mu_min;
  return out;
}

namespace {

SweepRecord sweep_one(const Model& model, double mu, std::uint64_t index, const SweepOptions& options) {
  SweepRecord rec;
  rec.mu = mu;
  const auto cls = classify_attractor(model, mu, options.classify);
  rec.classification = cls.kind;
  rec.escaped = cls.escaped;
  if (rec.escaped) return rec;

  try {
    const CounterRng rng(options.seed);
    const TorusPoint start = seed_point(model, kTwoPi * rng.uniform(1, index));
    if (cls.fixed_point) {
      rec.theta_fixed = cls.fixed_point->point.theta;
      rec.period_proxy = cls.fixed_point->flight_time + kGlobalFlightTime;
    } else {
      auto p = start;
      double total = 0.0;
      for (long i = 0; i < options.proxy_orbit; ++i) {
        const auto r = return_map(p, mu, model);
        total += r.flight_time;
        p = r.point;
      }
      rec.period_proxy = total / static_cast<double>(options.proxy_orbit) + kGlobalFlightTime;
    }
    LyapunovOptions lo;
    lo.transient = options.lyapunov_transient;
    lo.start = cls.fixed_point ? cls.fixed_point->point : start;
    rec.top_lyapunov = lyapunov_spectrum(model, mu, options.lyapunov_iterations, lo).exponents.front();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EscapedTube && e.code() != ErrorCode::NotInPositiveHalf) throw;
    rec.escaped = true;
    rec.classification = AttractorKind::Indeterminate;
    rec.period_proxy = 0.0;
    rec.theta_fixed.reset();
    rec.top_lyapunov.reset();
  }
  return rec;
}

void put_number(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

std::vector<SweepRecord> mu_sweep(const Model& model, const std::vector<double>& mu_values,
                                  const SweepOptions& options) {
  for (std::size_t i = 0; i < mu_values.size(); ++i) {
    if (!(mu_values[i] > 0)) throw Error(ErrorCode::InvalidArgument, "mu values must be positive");
    if (i > 0 && !(mu_values[i] < mu_values[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "mu values must be sorted descending");
  }
  std::vector<SweepRecord> out;
  out.reserve(mu_values.size());
  for (std::size_t i = 0; i < mu_values.size(); ++i) out.push_back(sweep_one(model, mu_values[i], i, options));
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "mu,classification,period_proxy,theta_fixed,top_lyapunov,escaped\n";
  for (const auto& r : records) {
    put_number(os, r.mu);
    os << ',' << to_string(r.classification) << ',';
    put_number(os, r.period_proxy);
    os << ',';
    if (r.theta_fixed) put_number(os, *r.theta_fixed);
    os << ',';
    if (r.top_lyapunov) put_number(os, *r.top_lyapunov);
    os << ',' << (r.escaped ? "true" : "false") << '\n';
  }
}

ScalingFit fit_period_scaling(const std::vector<SweepRecord>& records) {
  std::vector<double> xs, ys;
  ScalingFit fit;
  fit.mu_min = kInfinity;
  for (const auto& r : records) {
    if (r.escaped || !(r.period_proxy > 0)) continue;
    xs.push_back(-std::log(r.mu));
    ys.push_back(r.period_proxy);
    fit.mu_min = std::min(fit.mu_min, r.mu);
    fit.mu_max = std::max(fit.mu_max, r.mu);
  }
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 4) throw Error(ErrorCode::InsufficientData, "need at least 4 non-escaped records");
  if (std::log10(fit.mu_max / fit.mu_min) < 3.0 - 1e-9)
    throw Error(ErrorCode::InsufficientData, "records must span at least 3 decades of mu");

  const double n = fit.points;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx; sxy += dx * dy; syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

namespace {

ThresholdRow evaluate_member(const ModelFamily& family, CaseTag tag, double a, const ThresholdOptions& options,
                             bool classify) {
  ThresholdRow row;
  row.a = a;
  try {
    const Model model = validate_config(family(a));
    row.report = check_case(tag, model, options.condition_grid);
    row.verdict = row.report->verdict;
    if (classify && options.classify_mu) row.classification = classify_attractor(model, *options.classify_mu).kind;
  } catch (const Error& e) {
    row.note = e.what();
  }
  return row;
}

}  // namespace

ThresholdStudy threshold_study(const ModelFamily& family, CaseTag tag, const std::vector<double>& a_values,
                               const ThresholdOptions& options) {
  ThresholdStudy study;
  for (double a : a_values) study.rows.push_back(evaluate_member(family, tag, a, options, true));

  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    if (study.rows[i].verdict == study.rows[i - 1].verdict) continue;
    double lo = study.rows[i - 1].a, hi = study.rows[i].a;
    const bool lo_verdict = study.rows[i - 1].verdict;
    while (std::abs(hi - lo) > options.tolerance) {
      const double mid = 0.5 * (lo + hi);
      (evaluate_member(family, tag, mid, options, false).verdict == lo_verdict ? lo : hi) = mid;
    }
    study.flip_found = true;
    study.bracket_low = std::min(lo, hi);
    study.bracket_high = std::max(lo, hi);
    study.flip_a = 0.5 * (lo + hi);
    break;
  }
  return study;
}

}  // namespace bluesky
