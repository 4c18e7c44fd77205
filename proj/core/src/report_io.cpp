#include "bluesky/report_io.hpp"

#include <cmath>

namespace bluesky {

using nlohmann::json;

json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json to_json(const ConditionReport& r) {
  return {{"case_tag", to_string(r.case_tag)},
          {"criterion_min", real_to_json(r.criterion_min)},
          {"criterion_max", real_to_json(r.criterion_max)},
          {"margin", real_to_json(r.margin)},
          {"verdict", r.verdict},
          {"grid_size", r.grid_size},
          {"lipschitz_bound", real_to_json(r.lipschitz_bound)}};
}

json to_json(const FixedPointResult& r) {
  json mult = json::array();
  for (const auto& z : r.multipliers) mult.push_back({real_to_json(z.real()), real_to_json(z.imag())});
  json y = json::array();
  for (Eigen::Index i = 0; i < r.point.Y.size(); ++i) y.push_back(real_to_json(r.point.Y[i]));
  return {{"point", {{"theta", r.point.theta}, {"X", real_to_json(r.point.X)}, {"Y", y}}},
          {"multipliers", mult},
          {"residual", real_to_json(r.residual)},
          {"newton_iterations", r.newton_iterations},
          {"flight_time", real_to_json(r.flight_time)},
          {"stable", r.stable()}};
}

json to_json(const InvariantCurve& c) {
  return {{"grid_size", c.size()},
          {"residual_sup", real_to_json(c.residual_sup)},
          {"orientation", to_string(c.orientation)},
          {"iterations", c.iterations}};
}

json to_json(const ConeCertificate& c) {
  return {{"sup_pr", real_to_json(c.sup_pr)},
          {"sup_ptheta", real_to_json(c.sup_ptheta)},
          {"sup_qtheta_inv", real_to_json(c.sup_qtheta_inv)},
          {"sup_qr", real_to_json(c.sup_qr)},
          {"sup_qtheta_inv_qr", real_to_json(c.sup_qtheta_inv_qr)},
          {"cross_sup_pr", real_to_json(c.cross_sup_pr)},
          {"cross_sup_ptheta_bar", real_to_json(c.cross_sup_ptheta_bar)},
          {"cross_sup_qtheta_bar", real_to_json(c.cross_sup_qtheta_bar)},
          {"cross_sup_qr", real_to_json(c.cross_sup_qr)},
          {"L_interval", c.L_nonempty ? json::array({real_to_json(c.L_low), real_to_json(c.L_high)}) : json()},
          {"margins",
           {{"contraction", real_to_json(c.margin_contraction)},
            {"hyperbolicity", real_to_json(c.margin_hyperbolicity)},
            {"cross_contraction", real_to_json(c.margin_cross_contraction)},
            {"cross_expansion", real_to_json(c.margin_cross_expansion)},
            {"cross_product", real_to_json(c.margin_cross_product)}}},
          {"expansion_lower_bound", real_to_json(c.expansion_lower_bound)},
          {"contraction_upper_bound", real_to_json(c.contraction_upper_bound)},
          {"inflation", real_to_json(c.inflation)},
          {"theta_grid", c.theta_grid},
          {"samples", c.samples},
          {"verdict", c.verdict}};
}

json to_json(const AnnulusDiagnostic& d) {
  return {{"sup_pr", real_to_json(d.sup_pr)},
          {"sup_qtheta_inv", real_to_json(d.sup_qtheta_inv)},
          {"sup_qr", real_to_json(d.sup_qr)},
          {"sup_ptheta_qtheta_inv", real_to_json(d.sup_ptheta_qtheta_inv)},
          {"lhs", real_to_json(d.lhs)},
          {"rhs", real_to_json(d.rhs)},
          {"holds", d.holds}};
}

json to_json(const LyapunovSpectrum& s) {
  json ex = json::array();
  for (double e : s.exponents) ex.push_back(real_to_json(e));
  return {{"exponents", ex},
          {"orbit_length", s.orbit_length},
          {"transient_discarded", s.transient_discarded},
          {"confidence_halfwidth", real_to_json(s.confidence_halfwidth)}};
}

json to_json(const ItineraryReport& r) {
  json diam = json::array();
  for (double d : r.diameters) diam.push_back(real_to_json(d));
  return {{"symbols", r.symbols},
          {"depth", r.depth},
          {"samples", r.samples},
          {"shift_checks", r.shift_checks},
          {"shift_commutes", r.shift_commutes},
          {"resampled", r.resampled},
          {"diameters", diam},
          {"fit", {{"C", real_to_json(r.fit_C)}, {"rho", real_to_json(r.fit_rho)},
                   {"r_squared", real_to_json(r.fit_r_squared)}}}};
}

json to_json(const Classification& c) {
  json out = {{"classification", to_string(c.kind)},
              {"case_tag", to_string(c.case_tag)},
              {"mu", real_to_json(c.mu)},
              {"escaped", c.escaped}};
  if (!c.note.empty()) out["note"] = c.note;
  out["condition"] = c.condition ? to_json(*c.condition) : json();
  if (c.fixed_point) out["fixed_point"] = to_json(*c.fixed_point);
  if (c.curve) out["invariant_curve"] = to_json(*c.curve);
  if (c.annulus) out["annulus"] = to_json(*c.annulus);
  if (c.cone) out["cone"] = to_json(*c.cone);
  return out;
}

json to_json(const ScalingFit& f) {
  return {{"slope", real_to_json(f.slope)},
          {"intercept", real_to_json(f.intercept)},
          {"r_squared", real_to_json(f.r_squared)},
          {"mu_min", real_to_json(f.mu_min)},
          {"mu_max", real_to_json(f.mu_max)},
          {"points", f.points}};
}

}  // namespace bluesky
