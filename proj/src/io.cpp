#include "cavitylab/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include "cavitylab/errors.hpp"
#include "json.hpp"

namespace cavitylab {
namespace {

void write_comments(std::ostream& os, const CommentLines& lines) {
  for (const auto& [key, value] : lines) os << "# " << key << " = " << value << '\n';
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last)
    throw ConfigError(what, "not a number: '" + text + "'");
  return x;
}

}  // namespace

Units parse_units(const std::string& name) {
  if (name == "reduced") return Units::reduced;
  if (name == "absolute") return Units::absolute;
  throw ConfigError("units", "expected 'reduced' or 'absolute', got '" + name + "'");
}

std::string to_string(Units u) {
  return u == Units::reduced ? "reduced" : "absolute";
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CommentLines parameter_comments(const PhysicalParams& p) {
  CommentLines out{{"delta_rad_per_us", format_double(p.delta)},
                   {"Delta_rad_per_us", format_double(p.Delta)},
                   {"g0_rad_per_us", format_double(p.g0)},
                   {"Omega0_rad_per_us", format_double(p.Omega0)},
                   {"w_um", format_double(p.w)},
                   {"laser_profile", to_string(p.laser)}};
  if (p.w_tilde) out.emplace_back("w_tilde_um", format_double(*p.w_tilde));
  out.emplace_back("K_m_per_s", format_double(derive_scales(p).velocity_unit));
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const PhysicalParams& p, const Kinematics& k,
                          const CommentLines& extra) {
  write_comments(os, parameter_comments(p));
  write_comments(os, {{"v_m_per_s", format_double(k.v)},
                      {"ell_um", format_double(k.ell)},
                      {"window_sigma", format_double(k.window_sigma)},
                      {"initial", to_string(traj.initial_channel)}});
  write_comments(os, extra);
  os << "t_us";
  for (int i = 1; i <= 5; ++i) os << ",re_c" << i << ",im_c" << i;
  for (int i = 1; i <= 5; ++i) os << ",pop_c" << i;
  os << ",norm\n";
  for (const FullState& s : traj.samples) {
    os << format_double(s.t);
    for (const auto& c : s.c)
      os << ',' << format_double(c.real()) << ',' << format_double(c.imag());
    for (const auto& c : s.c) os << ',' << format_double(std::norm(c));
    os << ',' << format_double(s.norm_squared()) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const Grid& grid, const PhysicalParams& p,
                    Units units, const std::string& value_name,
                    const CommentLines& extra) {
  write_comments(os, parameter_comments(p));
  write_comments(os, {{"units", to_string(units)},
                      {"value", value_name},
                      {"rows_v", std::to_string(grid.v_over_K.size())},
                      {"cols_ell", std::to_string(grid.ell_over_w.size())}});
  write_comments(os, extra);
  const double K = derive_scales(p).velocity_unit;
  const bool reduced = units == Units::reduced;
  os << (reduced ? "v_over_K|ell_over_w" : "v_m_per_s|ell_um");
  for (double ell : grid.ell_over_w)
    os << ',' << format_double(reduced ? ell : ell * p.w);
  os << '\n';
  for (std::size_t i = 0; i < grid.v_over_K.size(); ++i) {
    os << format_double(reduced ? grid.v_over_K[i] : grid.v_over_K[i] * K);
    for (std::size_t j = 0; j < grid.ell_over_w.size(); ++j)
      os << ',' << format_double(grid.at(i, j));
    os << '\n';
  }
}

void write_curve_csv(std::ostream& os, const ConditionCurve& curve,
                     const PhysicalParams& p, Units units) {
  write_comments(os, parameter_comments(p));
  write_comments(os, {{"units", to_string(units)},
                      {"kind", to_string(curve.kind)}});
  const double K = derive_scales(p).velocity_unit;
  const bool reduced = units == Units::reduced;
  os << (reduced ? "ell_over_w,v_over_K" : "ell_um,v_m_per_s")
     << ",theta_star_rad,n\n";
  const std::string theta = format_double(curve.theta_star);
  const std::string n = std::to_string(curve.n);
  for (const CurvePoint& pt : curve.points) {
    os << format_double(reduced ? pt.ell_over_w : pt.ell_over_w * p.w) << ','
       << format_double(reduced ? pt.v_over_K : pt.v_over_K * K) << ','
       << theta << ',' << n << '\n';
  }
}

ConditionCurve read_curve_csv(std::istream& is, const PhysicalParams& p) {
  ConditionCurve curve;
  curve.kind = ConditionKind::custom;
  std::string line;
  bool have_header = false;
  bool reduced = true;
  bool first_row = true;
  const double K = derive_scales(p).velocity_unit;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto eq = t.find('=');
      if (eq != std::string::npos && trim(t.substr(1, eq - 1)) == "kind") {
        try {
          curve.kind = parse_condition_kind(trim(t.substr(eq + 1)));
        } catch (const DomainError&) {
          throw ConfigError("kind", "unknown curve kind in '" + t + "'");
        }
      }
      continue;
    }
    const auto cells = split_commas(t);
    if (!have_header) {
      if (cells.size() != 4 || cells[2] != "theta_star_rad" || cells[3] != "n")
        throw ConfigError("curve", "unexpected header '" + t + "'");
      if (cells[0] == "ell_over_w" && cells[1] == "v_over_K")
        reduced = true;
      else if (cells[0] == "ell_um" && cells[1] == "v_m_per_s")
        reduced = false;
      else
        throw ConfigError("curve", "unexpected header '" + t + "'");
      have_header = true;
      continue;
    }
    if (cells.size() != 4) throw ConfigError("curve", "malformed row '" + t + "'");
    const double ell = parse_number(cells[0], "curve");
    const double v = parse_number(cells[1], "curve");
    const double theta = parse_number(cells[2], "curve");
    const double n = parse_number(cells[3], "curve");
    if (first_row) {
      curve.theta_star = theta;
      curve.n = static_cast<unsigned>(n);
      first_row = false;
    } else if (theta != curve.theta_star) {
      throw ConfigError("curve", "mixed target angles in one file");
    }
    curve.points.push_back(
        {reduced ? ell : ell / p.w, reduced ? v : v / K});
  }
  if (!have_header) throw ConfigError("curve", "missing header row");
  if (curve.points.empty()) throw ConfigError("curve", "no data rows");
  return curve;
}

void write_report_csv(std::ostream& os, const VerificationReport& report,
                      const PhysicalParams& p) {
  write_comments(os, parameter_comments(p));
  write_comments(os, {{"theta_star_rad", format_double(report.theta_star)},
                      {"n", std::to_string(report.n)},
                      {"tolerance_rad", format_double(report.tolerance)},
                      {"adiabatic", report.adiabaticity.all_pass() ? "yes" : "no"}});
  os << "ell_over_w,v_over_K,ell_um,v_m_per_s,theta_full_rad,deviation_rad,"
        "pop_c1,pop_c5,population_error,leakage,max_norm_drift,steps,pass\n";
  for (const PointCheck& c : report.points) {
    os << format_double(c.point.ell_over_w) << ','
       << format_double(c.point.v_over_K) << ',' << format_double(c.ell) << ','
       << format_double(c.v) << ',' << format_double(c.theta_full) << ','
       << format_double(c.deviation) << ',' << format_double(c.population_start)
       << ',' << format_double(c.population_far) << ','
       << format_double(c.population_error) << ',' << format_double(c.leakage)
       << ',' << format_double(c.max_norm_drift) << ',' << c.steps << ','
       << (c.pass ? 1 : 0) << '\n';
  }
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["config"] = m.config_path;
  j["output_dir"] = m.output_dir;
  j["timestamp"] = m.timestamp;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : m.parameters) params[key] = value;
  j["parameters"] = params;
  j["files"] = m.files;
  return j.dump(2) + "\n";
}

}  // namespace cavitylab
