#pragma once

#include <array>
#include <optional>
#include <string>

namespace cavitylab {

// Unit system: angular frequencies in rad/us, lengths in um, times in us,
// velocities in m/s. 1 m/s is exactly 1 um/us.
inline constexpr double kUmPerUsPerMeterPerSecond = 1.0;

inline double to_um_per_us(double v_m_per_s) {
  return v_m_per_s * kUmPerUsPerMeterPerSecond;
}
inline double to_m_per_s(double v_um_per_us) {
  return v_um_per_us / kUmPerUsPerMeterPerSecond;
}

enum class LaserProfile { constant, gaussian };

std::string to_string(LaserProfile profile);

// Fixed cavity/laser knobs. Field names double as configuration keys.
struct PhysicalParams {
  double delta = 360.0;   // cavity detuning, rad/us
  double Delta = 380.0;   // laser detuning, rad/us
  double g0 = 27.0;       // vacuum Rabi frequency, rad/us
  double Omega0 = 50.0;   // peak atom-laser coupling, rad/us
  double w = 13.0;        // cavity mode waist, um
  std::optional<double> w_tilde;  // laser waist, um; required for gaussian
  LaserProfile laser = LaserProfile::constant;
};

// Per-run atomic motion.
struct Kinematics {
  double v = 0.0;    // common speed along z, m/s
  double ell = 0.0;  // initial separation z1 - z2, um
  // Initial midpoint of the pair, um. Unset places the leading atom at
  // -window_sigma * w.
  std::optional<double> z_mid;
  double window_sigma = 8.0;  // coupling support half-width, units of w
};

struct DerivedScales {
  double velocity_unit = 0.0;  // K = Omega0^2 g0^2 w / (delta Delta^2), m/s
  double distance_unit = 0.0;  // w, um
};

struct ParamViolation {
  std::string key;
  std::string message;
};

// First violated invariant, keyed by field name.
std::optional<ParamViolation> find_violation(const PhysicalParams& p);
std::optional<ParamViolation> find_violation(const Kinematics& k);

// Throws DomainError when an invariant of the type is violated.
void validate(const PhysicalParams& p);
void validate(const Kinematics& k);

DerivedScales derive_scales(const PhysicalParams& p);

inline constexpr double kDefaultAdiabaticMargin = 5.0;

struct AdiabaticityCondition {
  std::string name;
  double ratio = 0.0;
  bool pass = false;
};

struct AdiabaticityReport {
  double margin = kDefaultAdiabaticMargin;
  // |delta|/g0, |Delta|/Omega0, |delta Delta|/g0^2
  std::array<AdiabaticityCondition, 3> conditions;

  bool all_pass() const {
    return conditions[0].pass && conditions[1].pass && conditions[2].pass;
  }
};

// Peak couplings bound the time-dependent ones, so the ratios are evaluated
// at g0 and Omega0. Throws DomainError when margin < 1.
AdiabaticityReport check_adiabaticity(const PhysicalParams& p,
                                      double margin = kDefaultAdiabaticMargin);

// Initial positions (um) of the leading atom A1 and the trailing atom A2.
struct InitialPositions {
  double z1 = 0.0;
  double z2 = 0.0;
};

InitialPositions initial_positions(const PhysicalParams& p,
                                   const Kinematics& k);

// Time (us) at which the trailing atom leaves the coupling support.
double transit_end_time(const PhysicalParams& p, const Kinematics& k);

}  // namespace cavitylab
