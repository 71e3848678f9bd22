#include "cavitylab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cavitylab/errors.hpp"

namespace cavitylab {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out))
    throw ConfigError(key, "expected a finite number, got '" +
                               std::string(value) + "'");
  return out;
}

const std::set<std::string, std::less<>> kRequired = {"delta", "Delta", "g0",
                                                       "Omega0", "w"};

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(line), "expected 'key = value'");
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", "empty key");
    if (value.empty()) throw ConfigError(key, "missing value");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    cfg.entries.emplace_back(key, std::string(value));

    auto& p = cfg.physical;
    auto& k = cfg.kinematics;
    if (key == "delta") {
      p.delta = parse_number(key, value);
    } else if (key == "Delta") {
      p.Delta = parse_number(key, value);
    } else if (key == "g0") {
      p.g0 = parse_number(key, value);
    } else if (key == "Omega0") {
      p.Omega0 = parse_number(key, value);
    } else if (key == "w") {
      p.w = parse_number(key, value);
    } else if (key == "w_tilde") {
      p.w_tilde = parse_number(key, value);
    } else if (key == "laser_profile") {
      if (value == "constant")
        p.laser = LaserProfile::constant;
      else if (value == "gaussian")
        p.laser = LaserProfile::gaussian;
      else
        throw ConfigError(key, "expected 'constant' or 'gaussian'");
    } else if (key == "v") {
      k.v = parse_number(key, value);
      cfg.has_v = true;
    } else if (key == "ell") {
      k.ell = parse_number(key, value);
      cfg.has_ell = true;
    } else if (key == "z_mid") {
      k.z_mid = parse_number(key, value);
    } else if (key == "window_sigma") {
      k.window_sigma = parse_number(key, value);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  for (const auto& key : kRequired)
    if (!seen.count(key)) throw ConfigError(key, "missing required key");

  if (auto v = find_violation(cfg.physical)) throw ConfigError(v->key, v->message);
  // v and ell are validated when a command needs them; the remaining
  // kinematic fields are checked here.
  Kinematics probe = cfg.kinematics;
  if (!cfg.has_v) probe.v = 1.0;
  if (auto v = find_violation(probe)) throw ConfigError(v->key, v->message);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace cavitylab
