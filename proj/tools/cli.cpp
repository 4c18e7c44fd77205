#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "bluesky/classify.hpp"
#include "bluesky/experiments.hpp"
#include "bluesky/report_io.hpp"

namespace bluesky::cli {

namespace fs = std::filesystem;
using nlohmann::json;

nlohmann::json manifest_to_json(const RunManifest& m) {
  json overrides = json::array();
  for (const auto& [k, v] : m.overrides) overrides.push_back({k, v});
  return {{"config_path", m.config_path},
          {"command", m.command},
          {"output_dir", m.output_dir},
          {"seed", m.seed},
          {"overrides", overrides}};
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt("%.6g", v);
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ConfigParse:
    case ErrorCode::InvalidArgument: return kUsage;
    case ErrorCode::Inconclusive: return kInconclusive;
    default: return kDomainFailure;
  }
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  os << doc.dump(2) << '\n';
}

fs::path prepare_out(const std::string& dir) {
  fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error(ErrorCode::InvalidArgument, "cannot create output directory " + p.string());
  return p;
}

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  std::uint64_t seed = 0;

  std::vector<ConfigOverride> overrides() const {
    std::vector<ConfigOverride> o;
    for (const auto& s : sets) o.push_back(parse_override(s));
    return o;
  }
  RunManifest manifest(const std::string& command) const {
    return {config, command, out, seed, overrides()};
  }
};

void add_common(CLI::App* app, Common& c, bool with_out) {
  app->add_option("config", c.config, "model config (JSON)")->required();
  app->add_option("--set", c.sets, "override a config key, key=value (repeatable)");
  app->add_option("--seed", c.seed, "seed for orbit sampling");
  if (with_out) app->add_option("--out", c.out, "output directory");
}

// Loads and validates; prints violated rules and returns nullopt on failure.
std::optional<Model> load_model(const Common& c, std::ostream& err, int& code) {
  const auto cfg = load_config(c.config, c.overrides());
  const auto rules = violated_rules(cfg);
  if (!rules.empty()) {
    for (auto r : rules) err << "violated: " << to_string(r) << '\n';
    code = kDomainFailure;
    return std::nullopt;
  }
  return validate_config(cfg);
}

int cmd_validate(const Common& c, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(c.config, c.overrides());
  const auto rules = violated_rules(cfg);
  if (!rules.empty()) {
    out << "invalid\n";
    for (auto r : rules) out << "violated: " << to_string(r) << '\n';
    return kDomainFailure;
  }
  (void)err;
  out << "valid, nu=" << fmt("%.3f", cfg.lambda / cfg.gamma) << '\n';
  return kSuccess;
}

void print_condition(const ConditionReport& r, std::ostream& out) {
  out << "condition " << to_string(r.case_tag) << ": verdict=" << (r.verdict ? "true" : "false")
      << " min=" << real(r.criterion_min) << " max=" << real(r.criterion_max) << " margin=" << real(r.margin)
      << " grid=" << r.grid_size << '\n';
}

void print_cone(const ConeCertificate& c, std::ostream& out) {
  out << "cone: verdict=" << (c.verdict ? "true" : "false") << " sup|p_r|=" << real(c.sup_pr)
      << " sup|p_theta|=" << real(c.sup_ptheta) << " sup|q_theta^-1|=" << real(c.sup_qtheta_inv)
      << " sup|q_r|=" << real(c.sup_qr) << '\n';
  if (c.L_nonempty) out << "L_interval: (" << real(c.L_low) << ", " << real(c.L_high) << ")\n";
  else out << "L_interval: empty\n";
  out << "margins: contraction=" << real(c.margin_contraction) << " hyperbolicity=" << real(c.margin_hyperbolicity)
      << " cross_product=" << real(c.margin_cross_product) << '\n';
}

int cmd_classify(const Common& c, double mu, int grid, std::ostream& out, std::ostream& err) {
  int code = kSuccess;
  const auto model = load_model(c, err, code);
  if (!model) return code;
  ClassifyOptions opts;
  if (grid > 0) opts.cone_grid = opts.curve_grid = grid;
  const auto cls = classify_attractor(*model, mu, opts);

  out << to_string(cls.kind) << '\n';
  if (cls.condition) print_condition(*cls.condition, out);
  if (cls.fixed_point) {
    out << "fixed point: theta=" << fmt("%.12f", cls.fixed_point->point.theta)
        << " X=" << fmt("%.12f", cls.fixed_point->point.X) << " residual=" << real(cls.fixed_point->residual) << '\n';
  }
  if (cls.curve) {
    out << "invariant curve: orientation=" << to_string(cls.curve->orientation)
        << " residual=" << real(cls.curve->residual_sup) << '\n';
  }
  if (cls.cone) print_cone(*cls.cone, out);
  if (!cls.note.empty()) out << "note: " << cls.note << '\n';

  if (!c.out.empty()) {
    const auto dir = prepare_out(c.out);
    write_json(dir / "classification.json", to_json(cls));
    write_json(dir / "manifest.json", manifest_to_json(c.manifest("classify")));
  }
  return cls.kind == AttractorKind::Indeterminate ? kInconclusive : kSuccess;
}

int cmd_sweep(const Common& c, double mu_min, double mu_max, int per_decade, std::ostream& out,
              std::ostream& err) {
  int code = kSuccess;
  const auto model = load_model(c, err, code);
  if (!model) return code;
  const auto mus = geometric_mu_grid(mu_min, mu_max, per_decade);
  SweepOptions opts;
  opts.seed = c.seed;
  const auto records = mu_sweep(*model, mus, opts);

  const auto dir = prepare_out(c.out);
  {
    std::ofstream csv(dir / "sweep.csv", std::ios::binary);
    if (!csv) throw Error(ErrorCode::InvalidArgument, "cannot write sweep.csv");
    write_sweep_csv(csv, records);
  }
  write_json(dir / "manifest.json", manifest_to_json(c.manifest("sweep")));

  bool all_escaped = true;
  for (const auto& r : records) all_escaped = all_escaped && r.escaped;
  out << "records: " << records.size() << '\n';
  if (all_escaped) {
    err << "every record escaped\n";
    return kDomainFailure;
  }
  try {
    const auto fit = fit_period_scaling(records);
    write_json(dir / "fit.json", to_json(fit));
    out << "slope " << fmt("%.3f", fit.slope) << "  1/gamma " << fmt("%.3f", 1.0 / model->gamma())
        << "  r^2 " << fmt("%.6f", fit.r_squared) << '\n';
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientData) throw;
    write_json(dir / "fit.json", json());
    out << "fit: " << e.what() << '\n';
  }
  return kSuccess;
}

int cmd_certify(const Common& c, double mu, int grid, std::ostream& out, std::ostream& err) {
  int code = kSuccess;
  const auto model = load_model(c, err, code);
  if (!model) return code;
  if (std::abs(model->m()) < 2) {
    err << "certify needs |m| >= 2 (case mismatch, m=" << model->m() << ")\n";
    return kUsage;
  }
  const auto cert = cone_certify(*model, mu, grid);
  print_cone(cert, out);
  const auto dir = prepare_out(c.out);
  write_json(dir / "certificate.json", to_json(cert));
  write_json(dir / "manifest.json", manifest_to_json(c.manifest("certify")));
  return cert.verdict ? kSuccess : kDomainFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attractor classification near a saddle-orbit homoclinic bifurcation"};
  app.require_subcommand(1);

  Common validate_opts, classify_opts, sweep_opts, certify_opts;
  double classify_mu = 1e-6, certify_mu = 1e-5;
  double mu_min = 1e-8, mu_max = 1e-3;
  int per_decade = 10, certify_grid = 256, classify_grid = 0;

  auto* validate = app.add_subcommand("validate", "check a config against the model assumptions");
  add_common(validate, validate_opts, false);

  auto* classify = app.add_subcommand("classify", "classify the attractor at one mu");
  add_common(classify, classify_opts, true);
  classify->add_option("--mu", classify_mu, "splitting parameter")->check(CLI::PositiveNumber);
  classify->add_option("--grid", classify_grid, "theta grid for the curve or cone computation");

  auto* sweep = app.add_subcommand("sweep", "classify over a geometric mu grid and fit the period law");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--mu-min", mu_min)->check(CLI::PositiveNumber);
  sweep->add_option("--mu-max", mu_max)->check(CLI::PositiveNumber);
  sweep->add_option("--per-decade", per_decade)->check(CLI::PositiveNumber);

  auto* certify = app.add_subcommand("certify", "cone-condition certificate for |m| >= 2");
  add_common(certify, certify_opts, true);
  certify->add_option("--mu", certify_mu, "splitting parameter")->check(CLI::PositiveNumber);
  certify->add_option("--grid", certify_grid, "theta grid")->check(CLI::Range(4, 1 << 16));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kSuccess : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_opts, out, err);
    if (classify->parsed()) return cmd_classify(classify_opts, classify_mu, classify_grid, out, err);
    if (sweep->parsed()) {
      if (!(mu_min < mu_max)) {
        err << "need --mu-min < --mu-max\n";
        return kUsage;
      }
      return cmd_sweep(sweep_opts, mu_min, mu_max, per_decade, out, err);
    }
    if (certify->parsed()) return cmd_certify(certify_opts, certify_mu, certify_grid, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace bluesky::cli
