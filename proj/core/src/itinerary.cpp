#include "bluesky/itinerary.hpp"

#include <cmath>
#include <cstdlib>

#include "bluesky/circle_bounds.hpp"
#include "bluesky/rng.hpp"

namespace bluesky {

namespace {

int symbol_of(double sigma_lift_turns, int symbols) {
  const auto k = static_cast<long long>(std::floor(sigma_lift_turns));
  return static_cast<int>(((k % symbols) + symbols) % symbols);
}

double sigma_lift(const Model& model, double mu, double X, const Eigen::VectorXd& Y, double theta) {
  const auto ev = evaluate_return_map(model, mu, X, Y, theta, false);
  return (model.m() > 0 ? 1.0 : -1.0) * ev.theta_lift;
}

// Symbols of p, T p, ..., T^(len-1) p. Returns false if any is ambiguous.
bool code_of(const Model& model, double mu, TorusPoint p, int len, double tol, std::vector<int>& out) {
  out.resize(static_cast<std::size_t>(len));
  bool clean = true;
  for (int j = 0; j < len; ++j) {
    bool ambiguous = false;
    out[static_cast<std::size_t>(j)] = branch_index(model, mu, p, tol, &ambiguous);
    clean = clean && !ambiguous;
    if (j + 1 < len) p = return_map(p, mu, model).point;
  }
  return clean;
}

bool agrees(const Model& model, double mu, const TorusPoint& p, double theta, const std::vector<int>& code,
            int depth, std::vector<int>& scratch) {
  code_of(model, mu, TorusPoint::make(theta, p.X, p.Y), depth, 0.0, scratch);
  for (int j = 0; j < depth; ++j)
    if (scratch[static_cast<std::size_t>(j)] != code[static_cast<std::size_t>(j)]) return false;
  return true;
}

constexpr int kBisectionSteps = 50;

// Distance from p along +direction (dir = +1) or -direction (dir = -1) to the
// boundary of each depth-k cylinder, k = 1..depth.
std::vector<double> cylinder_extents(const Model& model, double mu, const TorusPoint& p,
                                     const std::vector<int>& code, int depth, int dir) {
  std::vector<double> ext(static_cast<std::size_t>(depth));
  std::vector<int> scratch;

  // Depth 1: the lift crosses the next multiple of 2pi.
  const double u0 = sigma_lift(model, mu, p.X, p.Y, p.theta) / kTwoPi;
  const double target = dir > 0 ? std::floor(u0) + 1.0 : std::floor(u0);
  double lo = 0.0, hi = kTwoPi;
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double u = sigma_lift(model, mu, p.X, p.Y, p.theta + dir * mid) / kTwoPi;
    const bool inside = dir > 0 ? u < target : u >= target;
    (inside ? lo : hi) = mid;
  }
  ext[0] = lo;

  for (int k = 2; k <= depth; ++k) {
    lo = 0.0;
    hi = ext[static_cast<std::size_t>(k - 2)];
    for (int it = 0; it < kBisectionSteps; ++it) {
      const double mid = 0.5 * (lo + hi);
      (agrees(model, mu, p, wrap_angle(p.theta + dir * mid), code, k, scratch) ? lo : hi) = mid;
    }
    ext[static_cast<std::size_t>(k - 1)] = lo;
  }
  return ext;
}

}  // namespace

int branch_index(const Model& model, double mu, const TorusPoint& p, double tolerance, bool* ambiguous) {
  const int symbols = std::abs(model.m());
  if (symbols < 2) throw Error(ErrorCode::CaseMismatch, "itineraries need |m| >= 2");
  const double turns = sigma_lift(model, mu, p.X, p.Y, p.theta) / kTwoPi;
  if (ambiguous) {
    const double frac = turns - std::floor(turns);
    *ambiguous = std::min(frac, 1.0 - frac) * kTwoPi < tolerance;
  }
  return symbol_of(turns, symbols);
}

ItineraryReport itinerary_semiconjugacy(const Model& model, double mu, int depth, int samples,
                                        const ItineraryOptions& options) {
  if (std::abs(model.m()) < 2) throw Error(ErrorCode::CaseMismatch, "itineraries need |m| >= 2");
  if (depth < 1 || samples < 1) throw Error(ErrorCode::InvalidArgument, "depth and samples must be positive");
  if (!(mu > 0)) throw Error(ErrorCode::InvalidArgument, "mu must be positive");

  ItineraryReport rep;
  rep.symbols = std::abs(model.m());
  rep.depth = depth;
  rep.samples = samples;
  rep.codes.reserve(static_cast<std::size_t>(samples));
  rep.shift_commutes = true;
  rep.diameters.assign(static_cast<std::size_t>(depth), 0.0);

  const CounterRng rng(options.seed);
  std::uint64_t counter = 0;
  std::vector<int> code, shifted;
  for (int i = 0; i < samples; ++i) {
    for (;;) {
      auto p = seed_point(model, kTwoPi * rng.uniform(0, counter++));
      for (long t = 0; t < options.transient; ++t) p = return_map(p, mu, model).point;

      const bool clean = code_of(model, mu, p, depth + 1, options.ambiguity_tolerance, code);
      if (!clean) {
        if (++rep.resampled > options.max_resamples)
          throw Error(ErrorCode::BranchAmbiguity, "too many samples near branch boundaries");
        continue;
      }
      const auto image = return_map(p, mu, model).point;
      code_of(model, mu, image, depth, options.ambiguity_tolerance, shifted);
      for (int j = 0; j < depth; ++j) {
        ++rep.shift_checks;
        if (shifted[static_cast<std::size_t>(j)] != code[static_cast<std::size_t>(j) + 1]) rep.shift_commutes = false;
      }
      code.pop_back();

      if (i < options.width_samples) {
        const auto right = cylinder_extents(model, mu, p, code, depth, +1);
        const auto left = cylinder_extents(model, mu, p, code, depth, -1);
        for (int k = 0; k < depth; ++k) {
          const auto ks = static_cast<std::size_t>(k);
          rep.diameters[ks] = std::max(rep.diameters[ks], right[ks] + left[ks]);
        }
      }
      rep.codes.push_back(code);
      break;
    }
  }

  // Least squares of ln(diameter) against depth.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int count = 0;
  for (int k = 1; k <= depth; ++k) {
    const double dk = rep.diameters[static_cast<std::size_t>(k - 1)];
    if (!(dk > 0)) continue;
    const double y = std::log(dk);
    sx += k; sy += y; sxx += double(k) * k; sxy += k * y; syy += y * y;
    ++count;
  }
  if (count >= 2) {
    const double nn = count;
    const double vx = sxx - sx * sx / nn, vy = syy - sy * sy / nn, cxy = sxy - sx * sy / nn;
    const double slope = cxy / vx;
    rep.fit_rho = std::exp(slope);
    rep.fit_C = std::exp((sy - slope * sx) / nn);
    rep.fit_r_squared = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
  }
  return rep;
}

}  // namespace bluesky
