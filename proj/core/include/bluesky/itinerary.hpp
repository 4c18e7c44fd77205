#pragma once

#include <cstdint>
#include <vector>

#include "bluesky/model.hpp"

namespace bluesky {

/// Finite-depth symbolic coding of the |m| >= 2 attractor.
///
/// The symbol of a point is the monotone branch of the degree-m covering
/// that contains it: floor(sign(m) * theta_lift / 2pi) mod |m|. Branch
/// boundaries are the pre-images of theta_bar = 0.
struct ItineraryReport {
  int symbols = 0;  // |m|
  int depth = 0;
  int samples = 0;
  std::vector<std::vector<int>> codes;  // one depth-long code per sample
  long shift_checks = 0;
  bool shift_commutes = false;
  int resampled = 0;

  // Largest theta-width of the depth-k cylinder through the sampled points,
  // k = 1..depth, and the fit diameter ~ C rho^k.
  std::vector<double> diameters;
  double fit_C = 0.0;
  double fit_rho = 0.0;
  double fit_r_squared = 0.0;
};

struct ItineraryOptions {
  long transient = 100;
  double ambiguity_tolerance = 1e-9;
  int width_samples = 16;  // sample points used for cylinder widths
  int max_resamples = 1000;
  std::uint64_t seed = 0;
};

/// Branch index of a point; sets `ambiguous` when the lift is within
/// `tolerance` of a branch boundary.
int branch_index(const Model& model, double mu, const TorusPoint& p, double tolerance,
                 bool* ambiguous = nullptr);

/// Codes `samples` attractor points to `depth` symbols, checks that the coding
/// of T(p) is the shifted coding of p, and measures cylinder widths.
/// Throws CaseMismatch for |m| < 2 and BranchAmbiguity when resampling is
/// exhausted.
ItineraryReport itinerary_semiconjugacy(const Model& model, double mu, int depth, int samples,
                                        const ItineraryOptions& options = {});

}  // namespace bluesky
