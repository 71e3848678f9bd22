// cavitylab command-line front end.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical
// failure, 3 verification failure.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cavitylab/atlas.hpp"
#include "cavitylab/config.hpp"
#include "cavitylab/effective.hpp"
#include "cavitylab/entanglement.hpp"
#include "cavitylab/errors.hpp"
#include "cavitylab/full_dynamics.hpp"
#include "cavitylab/gates.hpp"
#include "cavitylab/io.hpp"

namespace fs = std::filesystem;
using namespace cavitylab;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

struct UsageError : Error {
  using Error::Error;
};

double to_double(const std::string& text, const std::string& what) {
  double x = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end)
    throw UsageError(what + ": not a number: '" + text + "'");
  return x;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(what + ": expected a:b, got '" + text + "'");
  return {to_double(text.substr(0, colon), what), to_double(text.substr(colon + 1), what)};
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--grid: expected NVxNL, got '" + text + "'");
  const double nv = to_double(text.substr(0, x), "--grid");
  const double nl = to_double(text.substr(x + 1), "--grid");
  if (nv < 1 || nl < 1 || nv != static_cast<std::size_t>(nv) ||
      nl != static_cast<std::size_t>(nl))
    throw UsageError("--grid: counts must be positive integers");
  return {static_cast<std::size_t>(nv), static_cast<std::size_t>(nl)};
}

// "0,2,5" or "0-4" or a mix such as "0-2,6".
std::vector<unsigned> parse_n_list(const std::string& text) {
  std::vector<unsigned> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) throw UsageError("--n: empty entry in '" + text + "'");
    const auto dash = item.find('-');
    const auto as_uint = [&](const std::string& s) {
      const double v = to_double(s, "--n");
      if (v < 0 || v != static_cast<unsigned>(v))
        throw UsageError("--n: branch indices are non-negative integers");
      return static_cast<unsigned>(v);
    };
    if (dash == std::string::npos) {
      out.push_back(as_uint(item));
    } else {
      const unsigned lo = as_uint(item.substr(0, dash));
      const unsigned hi = as_uint(item.substr(dash + 1));
      if (hi < lo) throw UsageError("--n: descending range '" + item + "'");
      for (unsigned n = lo; n <= hi; ++n) out.push_back(n);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw UsageError("--n: empty list");
  return out;
}

struct Output {
  fs::path dir;
  RunManifest manifest;

  Output(const std::string& out_dir, const std::string& command, const std::string& config,
         const PhysicalParams& p) {
    dir = out_dir;
    fs::create_directories(dir);
    manifest.command = command;
    manifest.config_path = config;
    manifest.output_dir = dir.string();
    manifest.timestamp = utc_timestamp();
    manifest.parameters = parameter_comments(p);
  }

  std::ofstream open(const std::string& name) {
    std::ofstream f(dir / name);
    if (!f) throw UsageError("cannot write " + (dir / name).string());
    manifest.files.push_back(name);
    return f;
  }

  void finish() {
    std::ofstream f(dir / "manifest.json");
    f << manifest_json(manifest);
  }
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

int cmd_validate(const RunConfig& cfg, double margin) {
  const auto& p = cfg.physical;
  const auto s = derive_scales(p);
  const auto report = check_adiabaticity(p, margin);
  std::cout << "velocity unit K = " << fmt(s.velocity_unit) << " m/s\n"
            << "distance unit w = " << fmt(s.distance_unit) << " um\n"
            << "adiabaticity (margin " << fmt(margin) << "):\n";
  for (const auto& c : report.conditions)
    std::cout << "  " << c.name << " = " << fmt(c.ratio) << "  "
              << (c.pass ? "pass" : "FAIL") << "\n";
  std::cout << (report.all_pass() ? "all conditions pass\n" : "adiabaticity check failed\n");
  return report.all_pass() ? 0 : kExitVerification;
}

int cmd_trajectory(const RunConfig& cfg, const std::string& config_path,
                   std::optional<double> v, std::optional<double> ell,
                   const std::string& initial, const std::string& prep,
                   std::size_t samples, double rtol, const std::string& out_dir) {
  const auto& p = cfg.physical;
  Kinematics k = cfg.kinematics;
  if (v) k.v = *v;
  if (ell) k.ell = *ell;
  if (!v && !cfg.has_v) throw ConfigError("v", "velocity not given (use --v or the config)");
  validate(k);
  const Channel channel = parse_channel(initial);
  Preparation preparation;
  if (prep == "dressed")
    preparation = Preparation::dressed;
  else if (prep == "bare")
    preparation = Preparation::bare;
  else
    throw UsageError("--prep: expected dressed or bare");

  IntegrationOptions opt;
  opt.samples = samples;
  opt.solver.rtol = rtol;
  opt.solver.atol = rtol * 1e-3;
  const auto traj = integrate(initial_state(p, k, channel, preparation), p, k, opt);
  const auto angle = extract_full_angle(traj);
  const auto& end = traj.final_state();

  Output out(out_dir, "trajectory", config_path, p);
  {
    auto f = out.open("trajectory.csv");
    write_trajectory_csv(f, traj, p, k,
                         {{"preparation", prep}, {"rtol", format_double(rtol)}});
  }
  out.finish();

  std::cout << "final |C1|^2 = " << fmt(std::norm(end.c[0])) << "\n"
            << "final |C5|^2 = " << fmt(std::norm(end.c[4])) << "\n"
            << "theta_full = " << fmt(angle.theta) << " rad\n";
  if (p.laser == LaserProfile::constant)
    std::cout << "theta_closed_form = " << fmt(theta_closed_form(p, k)) << " rad\n";
  std::cout << "leakage = " << fmt(angle.leakage) << "\n"
            << "max norm drift = " << fmt(traj.stats.max_norm_drift, 3) << "\n"
            << "steps = " << traj.stats.steps << " (rejected " << traj.stats.rejected << ")\n";
  if (angle.non_adiabatic) std::cout << "warning: " << angle.warning << "\n";
  return 0;
}

int cmd_map(const RunConfig& cfg, const std::string& config_path, const std::string& kind,
            const std::string& grid, const std::string& v_range, const std::string& ell_range,
            const std::string& units, unsigned threads, const std::string& out_dir) {
  const auto& p = cfg.physical;
  const auto [nv, nl] = parse_grid(grid);
  GridSpec spec;
  spec.v_over_K.n = nv;
  spec.ell_over_w.n = nl;
  if (!v_range.empty()) std::tie(spec.v_over_K.lo, spec.v_over_K.hi) = parse_range(v_range, "--v-range");
  if (!ell_range.empty())
    std::tie(spec.ell_over_w.lo, spec.ell_over_w.hi) = parse_range(ell_range, "--ell-range");
  const Units u = parse_units(units);

  Grid g;
  std::string value_name, file;
  if (kind == "entropy") {
    g = entropy_map(spec, threads);
    value_name = "entropy_bits";
    file = "entropy.csv";
  } else if (kind.rfind("fidelity:", 0) == 0) {
    const Gate gate = parse_gate(kind.substr(9));
    g = fidelity_map(gate, spec, threads);
    value_name = "fidelity";
    file = "fidelity_" + kind.substr(9) + ".csv";
  } else {
    throw UsageError("--kind: expected entropy or fidelity:<gate>, got '" + kind + "'");
  }

  Output out(out_dir, "map", config_path, p);
  {
    auto f = out.open(file);
    write_grid_csv(f, g, p, u, value_name, {{"kind", kind}});
  }
  out.finish();
  std::cout << "wrote " << (out.dir / file).string() << " (" << g.v_over_K.size() << " x "
            << g.ell_over_w.size() << ")\n";
  return 0;
}

int cmd_lines(const RunConfig& cfg, const std::string& config_path, const std::string& kind,
              double custom_theta, const std::string& n_list, const std::string& ell_range,
              std::size_t samples, const std::string& units, const std::string& out_dir) {
  const auto& p = cfg.physical;
  ConditionQuery q;
  q.kind = parse_condition_kind(kind);
  q.custom_theta = custom_theta;
  q.samples = samples;
  if (!ell_range.empty()) std::tie(q.ell_lo, q.ell_hi) = parse_range(ell_range, "--ell-range");
  if (!(q.ell_hi > q.ell_lo)) throw UsageError("--ell-range: empty range");
  const Units u = parse_units(units);
  const auto ns = parse_n_list(n_list);

  Output out(out_dir, "lines", config_path, p);
  for (unsigned n : ns) {
    q.n = n;
    const auto curve = condition_curve(q);
    const std::string file = "curve_" + to_string(q.kind) + "_n" + std::to_string(n) + ".csv";
    auto f = out.open(file);
    write_curve_csv(f, curve, p, u);
    std::cout << file << ": theta* = " << fmt(curve.theta_star) << " rad, v/K from "
              << fmt(curve.points.front().v_over_K) << " to "
              << fmt(curve.points.back().v_over_K) << "\n";
  }
  out.finish();
  return 0;
}

int cmd_crosscheck(const RunConfig& cfg, const std::string& config_path,
                   const std::string& curve_path, std::optional<double> tol, double margin,
                   double rtol, const std::string& out_dir) {
  const auto& p = cfg.physical;
  std::ifstream in(curve_path);
  if (!in) throw UsageError("cannot read curve file '" + curve_path + "'");
  const auto curve = read_curve_csv(in, p);
  VerifyOptions opt;
  opt.tolerance = tol;
  opt.margin = margin;
  opt.integration.solver.rtol = rtol;
  opt.integration.solver.atol = rtol * 1e-3;
  const auto report = verify_curve_full_model(curve, p, opt);

  Output out(out_dir, "crosscheck", config_path, p);
  {
    auto f = out.open("crosscheck.csv");
    write_report_csv(f, report, p);
  }
  out.finish();

  std::cout << "theta* = " << fmt(report.theta_star) << " rad, tolerance "
            << fmt(report.tolerance) << " rad\n";
  for (const auto& c : report.points)
    std::cout << "  ell/w = " << fmt(c.point.ell_over_w, 4) << "  v/K = "
              << fmt(c.point.v_over_K, 6) << "  theta_full = " << fmt(c.theta_full, 6)
              << "  deviation = " << fmt(c.deviation, 3) << "  "
              << (c.pass ? "ok" : "FAIL") << "\n";
  for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
  std::size_t failed = 0;
  for (const auto& c : report.points) failed += c.pass ? 0 : 1;
  std::cout << (report.all_pass() ? "all points agree\n"
                                  : std::to_string(failed) + " point(s) outside tolerance\n");
  return report.all_pass() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom cavity exchange simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", units = "reduced";
  unsigned threads = 1;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value parameter file")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "print derived scales and adiabaticity");
  add_config(validate_cmd);
  double margin = kDefaultAdiabaticMargin;
  validate_cmd->add_option("--margin", margin, "required ratio for each condition");

  auto* traj_cmd = app.add_subcommand("trajectory", "integrate the five-level model");
  add_config(traj_cmd);
  std::optional<double> v, ell;
  std::string initial = "a_1bar", prep = "dressed";
  std::size_t samples = 4001;
  double rtol = 1e-9;
  traj_cmd->add_option("--v", v, "velocity, m/s (overrides the config)");
  traj_cmd->add_option("--ell", ell, "initial separation, um (overrides the config)");
  traj_cmd->add_option("--initial", initial, "a_1bar or one_abar");
  traj_cmd->add_option("--prep", prep, "dressed or bare");
  traj_cmd->add_option("--samples", samples, "stored samples");
  traj_cmd->add_option("--tol", rtol, "integrator relative tolerance");
  traj_cmd->add_option("--out", out_dir, "output directory");

  auto* map_cmd = app.add_subcommand("map", "entropy or fidelity over (v, ell)");
  add_config(map_cmd);
  std::string kind = "entropy", grid = "200x200", v_range, ell_range;
  map_cmd->add_option("--kind", kind,
                      "entropy, fidelity:i-swap, fidelity:cz or fidelity:cnotbar");
  map_cmd->add_option("--grid", grid, "NVxNL: v samples x ell samples");
  map_cmd->add_option("--v-range", v_range, "a:b in units of K (default 0:1.2)");
  map_cmd->add_option("--ell-range", ell_range, "a:b in units of w (default 0:3)");
  map_cmd->add_option("--units", units, "reduced or absolute");
  map_cmd->add_option("--threads", threads, "worker threads");
  map_cmd->add_option("--out", out_dir, "output directory");

  auto* lines_cmd = app.add_subcommand("lines", "condition curves theta(v, ell) = theta*");
  add_config(lines_cmd);
  std::string line_kind = "max-entanglement", n_list = "0";
  double custom_theta = 0.0;
  std::size_t curve_samples = 200;
  lines_cmd->add_option("--kind", line_kind, "max-entanglement, i-swap, cz-cnot or custom");
  lines_cmd->add_option("--theta", custom_theta, "target angle for custom, rad");
  lines_cmd->add_option("--n", n_list, "branch list, e.g. 0,1,2 or 0-4");
  lines_cmd->add_option("--ell-range", ell_range, "a:b in units of w (default 0:3)");
  lines_cmd->add_option("--samples", curve_samples, "points per curve");
  lines_cmd->add_option("--units", units, "reduced or absolute");
  lines_cmd->add_option("--out", out_dir, "output directory");

  auto* cross_cmd = app.add_subcommand("crosscheck", "compare a curve with the five-level model");
  add_config(cross_cmd);
  std::string curve_path;
  std::optional<double> tol;
  double cross_rtol = 1e-7;
  cross_cmd->add_option("--curve", curve_path, "curve CSV written by 'lines'")->required();
  cross_cmd->add_option("--tol", tol, "angle tolerance, rad (default 0.05 (n + 1))");
  cross_cmd->add_option("--margin", margin, "adiabaticity margin");
  cross_cmd->add_option("--rtol", cross_rtol, "integrator relative tolerance");
  cross_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    if (validate_cmd->parsed()) return cmd_validate(cfg, margin);
    if (traj_cmd->parsed())
      return cmd_trajectory(cfg, config_path, v, ell, initial, prep, samples, rtol, out_dir);
    if (map_cmd->parsed())
      return cmd_map(cfg, config_path, kind, grid, v_range, ell_range, units, threads, out_dir);
    if (lines_cmd->parsed())
      return cmd_lines(cfg, config_path, line_kind, custom_theta, n_list, ell_range,
                       curve_samples, units, out_dir);
    if (cross_cmd->parsed())
      return cmd_crosscheck(cfg, config_path, curve_path, tol, margin, cross_rtol, out_dir);
  } catch (const StiffnessError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
