// Command-line front end: property suite, metric evaluation, stable-surface
// export, wave residual reports, size quantification, and the two-source
// cancellation scan.
//
// Exit codes: 0 all requested checks passed, 1 check failure or computation
// error, 2 usage error (bad flags, malformed expressions).

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rotframe/expr_text.hpp"
#include "rotframe/io.hpp"
#include "rotframe/metric.hpp"
#include "rotframe/quantify.hpp"
#include "rotframe/rotation.hpp"
#include "rotframe/stable.hpp"
#include "rotframe/wave.hpp"

namespace {

using namespace rotframe;

std::vector<double> parse_csv_doubles(const std::string& s, std::size_t expected) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw CLI::ValidationError("expected comma-separated reals, got '" + s + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (expected != 0 && out.size() != expected) {
    throw CLI::ValidationError("expected " + std::to_string(expected) +
                               " comma-separated values, got " + std::to_string(out.size()));
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output path: " + path);
  f << content;
  if (!f) throw Error("failed to write output path: " + path);
}

SpatialProfile profile_from_flags(const std::string& name, double sigma, double k_scalar,
                                  const std::string& kvec) {
  if (name == "one") return SpatialProfile::one();
  if (name == "gaussian") return SpatialProfile::gaussian(sigma);
  if (name == "sinc") return SpatialProfile::sinc_radial(k_scalar);
  if (name == "planewave") {
    const auto k = parse_csv_doubles(kvec, 3);
    return SpatialProfile::plane_wave({k[0], k[1], k[2]});
  }
  throw CLI::ValidationError("unknown profile '" + name +
                             "' (one, gaussian, planewave, sinc)");
}

// Config file: JSON object whose keys are long flag names; explicit flags
// override.  Values are injected as defaults before the user arguments with
// take-last option policy.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open config file: " + path);
  nlohmann::json j;
  f >> j;
  if (!j.is_object()) throw Error("config file must hold a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_string()) {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back("--" + key);
      args.push_back(format_real(value.get<double>()));
    } else {
      throw Error("config key '" + key + "' must be a scalar");
    }
  }
  return args;
}

struct Common {
  double c = 1.0;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string config;
};

void add_common(CLI::App* cmd, Common& common, const std::string& default_format = "json") {
  common.format = default_format;
  cmd->add_option("--c", common.c, "speed of light (natural units default)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", common.tol, "tolerance for checks")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", common.seed, "RNG seed");
  cmd->add_option("--out", common.out, "output path (stdout when empty)");
  cmd->add_option("--format", common.format, "output format");
  cmd->add_option("--config", common.config, "JSON config file; flags override");
}

int run(int argc, char** argv) {
  CLI::App app{"rotating-frame metric and wave toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // props
  auto* props = app.add_subcommand("props", "rotation property suite");
  props->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common props_common;
  int props_trials = 100;
  std::string props_expr;
  add_common(props, props_common);
  props->add_option("--trials", props_trials, "number of random trials");
  props->add_option("--expr", props_expr, "check one expression instead of the full suite");

  // metric
  auto* metric = app.add_subcommand("metric", "interval coefficients at a point");
  metric->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common metric_common;
  std::string metric_expr;
  std::string metric_point = "0,0,0";
  double metric_time = 0.0;
  bool metric_average = false;
  add_common(metric, metric_common);
  metric->add_option("--expr", metric_expr, "rotation expression")->required();
  metric->add_option("--point", metric_point, "x,y,z");
  metric->add_option("--time", metric_time, "evaluation time (instantaneous form)");
  metric->add_flag("--average", metric_average, "time-averaged coefficients");

  // surface
  auto* surface = app.add_subcommand("surface", "stable-surface mesh/CSV export");
  surface->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common surface_common;
  double surface_omega = 0.0;
  std::string surface_omegas;
  std::string surface_expr;
  int res_a = 33, res_b = 32;
  double z_mult = 3.0;
  double r_max = 0.0;
  add_common(surface, surface_common, "obj");
  surface->add_option("--omega", surface_omega, "cylinder surface frequency");
  surface->add_option("--omegas", surface_omegas, "w1,w2,w3 ellipsoid frequencies");
  surface->add_option("--expr", surface_expr, "numeric surface from an expression");
  surface->add_option("--res-a", res_a, "first angular resolution (theta / phi)");
  surface->add_option("--res-b", res_b, "second angular resolution (phi / z)");
  surface->add_option("--z-mult", z_mult, "cylinder truncation, |z| <= z-mult * radius");
  surface->add_option("--r-max", r_max, "numeric root search limit (default 10 c / w_min)");

  // residual
  auto* residual = app.add_subcommand("residual", "wave identity residual report");
  residual->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common residual_common;
  std::string equation;
  std::string profile_name = "gaussian";
  double sigma = 1.0, k_scalar = 1.0;
  std::string kvec = "1,0,0";
  double res_omega = 5.0, beta = 0.0, extent = 0.4, h = 0.02, tau = 0.0;
  int stencil = 3, sign = +1;
  bool study = false;
  std::string dump_field;
  add_common(residual, residual_common);
  residual->add_option("equation", equation, "schrodinger | kleingordon")->required();
  residual->add_option("--profile", profile_name, "one | gaussian | planewave | sinc");
  residual->add_option("--sigma", sigma, "gaussian width");
  residual->add_option("--k", k_scalar, "sinc wavenumber");
  residual->add_option("--kvec", kvec, "plane-wave vector kx,ky,kz");
  residual->add_option("--omega", res_omega, "frequency parameter Omega");
  residual->add_option("--beta", beta, "boost velocity / c");
  residual->add_option("--extent", extent, "grid half extent");
  residual->add_option("--step", h, "grid spacing");
  residual->add_option("--tau", tau, "evaluation time tau = c t");
  residual->add_option("--stencil", stencil, "3 or 5 point second-derivative stencil");
  residual->add_option("--sign", sign, "phase sign, +1 or -1");
  residual->add_flag("--study", study, "also run h/2 and report the observed order");
  residual->add_option("--dump-field", dump_field, "CSV dump of psi over the grid");

  // quantify
  auto* quantify = app.add_subcommand("quantify", "allowed sizes from Bessel zeros");
  quantify->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common quantify_common;
  int q_l = 0, q_count = 5;
  std::string parity = "even";
  double q_k = 1.0;
  add_common(quantify, quantify_common);
  quantify->add_option("--l", q_l, "spherical degree l >= 0");
  quantify->add_option("--parity", parity, "even | odd");
  quantify->add_option("--k", q_k, "wavenumber k = omega / c");
  quantify->add_option("--count", q_count, "number of sizes");

  // twosource
  auto* twosource = app.add_subcommand("twosource", "1D external cancellation scan");
  twosource->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common two_common;
  std::string signs = "same";
  int points = 400;
  double amax = 4.0 * M_PI;
  add_common(twosource, two_common);
  twosource->add_option("--signs", signs, "same | opposite");
  twosource->add_option("--points", points, "a-grid size over (0, amax]");
  twosource->add_option("--amax", amax, "largest half separation (rad)");

  // Config-file defaults are injected right after the subcommand token, so
  // explicit flags (parsed later, take-last policy) override them.
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (!config_path.empty() && !args.empty() && args[0][0] != '-') {
    const std::vector<std::string> extra = config_args(config_path);
    std::vector<std::string> merged;
    merged.push_back(args[0]);
    merged.insert(merged.end(), extra.begin(), extra.end());
    merged.insert(merged.end(), args.begin() + 1, args.end());
    args = std::move(merged);
  }
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // ---- props ----
  if (props->parsed()) {
    PropertyReport report;
    if (!props_expr.empty()) {
      report = property_report(parse_expr(props_expr), props_trials, props_common.seed,
                               props_common.tol);
    } else {
      report = run_property_suite(props_trials, props_common.seed, props_common.tol);
    }
    const std::string body = props_common.format == "csv"
                                 ? property_report_csv(report)
                                 : property_report_json(report, props_trials);
    write_output(props_common.out, body);
    return report.all_pass() ? 0 : 1;
  }

  // ---- metric ----
  if (metric->parsed()) {
    const RotationExpr expr = parse_expr(metric_expr);
    const auto p = parse_csv_doubles(metric_point, 3);
    const Vec3 x{p[0], p[1], p[2]};
    std::string body;
    if (metric_average) {
      const AveragedMetric avg = time_average_metric(expr, x, metric_common.c);
      body = metric_common.format == "csv" ? metric_csv(avg.g) : metric_json(avg);
    } else {
      const IntervalForm form = interval_general(expr, x, metric_time, metric_common.c);
      body = metric_common.format == "csv" ? metric_csv(form.g) : metric_json(form);
    }
    write_output(metric_common.out, body);
    return 0;
  }

  // ---- surface ----
  if (surface->parsed()) {
    StableSurface surf;
    if (!surface_expr.empty()) {
      const RotationExpr expr = parse_expr(surface_expr);
      double wmin = 0.0;
      for (double w : expr.leaf_frequencies()) {
        if (w > 0.0) wmin = wmin == 0.0 ? w : std::min(wmin, w);
      }
      if (wmin == 0.0) throw NoSurfaceError("expression has no positive frequency");
      const double limit = r_max > 0.0 ? r_max : 10.0 * surface_common.c / wmin;
      const GttProfile profile(expr, surface_common.c);
      surf = make_numeric_surface(profile, res_a, res_b, limit);
    } else if (!surface_omegas.empty()) {
      const auto w = parse_csv_doubles(surface_omegas, 3);
      surf = make_ellipsoid_surface(w[0], w[1], w[2], surface_common.c);
    } else if (surface_omega > 0.0) {
      surf = make_cylinder_surface(surface_omega, surface_common.c, z_mult);
    } else {
      throw CLI::ValidationError("surface needs --omega, --omegas or --expr");
    }
    if (surface_common.format == "csv") {
      write_output(surface_common.out, surface_csv(surf, res_a, res_b));
    } else {
      write_output(surface_common.out, obj_export(mesh_surface(surf, res_a, res_b)));
    }
    return 0;
  }

  // ---- residual ----
  if (residual->parsed()) {
    const SpatialProfile q = profile_from_flags(profile_name, sigma, k_scalar, kvec);
    const BoostedWave wave = build_boosted_wave(q, res_omega, beta, sign);
    GridSpec grid{extent, h, tau, stencil};
    if (!dump_field.empty()) {
      write_output(dump_field, field_dump_csv(wave, grid));
    }
    std::string body;
    bool warn = false;
    if (equation == "schrodinger") {
      const ResidualReport rep = schrodinger_residual(wave, grid);
      double order = 0.0;
      if (study) {
        GridSpec fine = grid;
        fine.h = grid.h / 2.0;
        const ResidualReport rep2 = schrodinger_residual(wave, fine);
        if (rep.rms > 0.0 && rep2.rms > 0.0) order = std::log2(rep.rms / rep2.rms);
      }
      body = residual_report_json(rep, beta, wave.boost().gamma, q.name, order, study);
      warn = rep.resolution_warning;
    } else if (equation == "kleingordon") {
      const KleinGordonReport rep = klein_gordon_residual(wave, grid);
      double order = 0.0;
      if (study) {
        GridSpec fine = grid;
        fine.h = grid.h / 2.0;
        const KleinGordonReport rep2 = klein_gordon_residual(wave, fine);
        if (rep.residual.rms > 0.0 && rep2.residual.rms > 0.0) {
          order = std::log2(rep.residual.rms / rep2.residual.rms);
        }
      }
      body = klein_gordon_json(rep, beta, wave.boost().gamma, q.name, order, study);
      warn = rep.residual.resolution_warning;
    } else {
      throw CLI::ValidationError("equation must be schrodinger or kleingordon");
    }
    write_output(residual_common.out, body);
    return warn ? 1 : 0;
  }

  // ---- quantify ----
  if (quantify->parsed()) {
    if (parity != "even" && parity != "odd") {
      throw CLI::ValidationError("parity must be even or odd");
    }
    const ModeSpec mode{q_l, parity == "even"};
    const SizeSpectrum spec = quantified_sizes(mode, q_k, q_count);
    const std::string body = quantify_common.format == "csv" ? size_spectrum_csv(spec)
                                                             : size_spectrum_json(spec);
    write_output(quantify_common.out, body);
    return 0;
  }

  // ---- twosource ----
  if (twosource->parsed()) {
    if (signs != "same" && signs != "opposite") {
      throw CLI::ValidationError("signs must be same or opposite");
    }
    const PairSigns ps = signs == "same" ? PairSigns::Same : PairSigns::Opposite;
    auto sine = [](double s) { return std::sin(s); };
    std::vector<double> a_grid;
    a_grid.reserve(points);
    for (int i = 1; i <= points; ++i) a_grid.push_back(amax * i / points);
    const auto entries = external_cancellation_scan(sine, ps, a_grid);
    std::vector<double> zeros;
    for (const auto& e : entries) {
      if (e.max_external_amplitude <= two_common.tol) zeros.push_back(e.a);
    }
    const std::string body = two_common.format == "csv"
                                 ? scan_csv(entries)
                                 : scan_json(entries, zeros, ps, "sin");
    write_output(two_common.out, body);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const rotframe::ExprParseError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const rotframe::InvalidAxisError& e) {
    std::cerr << "axis error: " << e.what() << "\n";
    return 2;
  } catch (const rotframe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
