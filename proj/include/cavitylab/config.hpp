#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cavitylab/params.hpp"

namespace cavitylab {

// Contents of a `key = value` configuration file.
//
// Recognized keys:
//   delta, Delta, g0, Omega0, w      required, rad/us and um
//   w_tilde                          laser waist in um (5 w is a sensible
//                                    choice; required when laser_profile is
//                                    gaussian)
//   laser_profile                    constant (default) | gaussian
//   v, ell, z_mid, window_sigma      optional Kinematics fields (m/s, um)
//
// '#' starts a comment. Keys are case-sensitive: delta and Delta differ.
struct RunConfig {
  PhysicalParams physical;
  Kinematics kinematics;
  bool has_v = false;
  bool has_ell = false;
  // Key/value pairs in file order, for echoing into output headers.
  std::vector<std::pair<std::string, std::string>> entries;
};

// Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace cavitylab
