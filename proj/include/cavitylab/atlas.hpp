#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cavitylab/full_dynamics.hpp"
#include "cavitylab/params.hpp"

namespace cavitylab {

// Families of target coupling angles, indexed by branch n >= 0:
//   max_entanglement (2n+1) pi/4, i_swap 3pi/2 + 2 pi n, cz_cnot pi + 2 pi n.
enum class ConditionKind { max_entanglement, i_swap, cz_cnot, custom };

ConditionKind parse_condition_kind(const std::string& name);
std::string to_string(ConditionKind kind);

// For custom, the angle is custom_theta and n is ignored.
double target_angle(ConditionKind kind, unsigned n, double custom_theta = 0.0);

// v / K solving theta_reduced(v / K, ell / w) = theta_star.
double solve_velocity_reduced(double theta_star, double ell_over_w);

// Absolute form: ell in um, result in m/s. Throws DomainError for
// theta_star <= 0.
double solve_velocity(double theta_star, double ell, const PhysicalParams& p);

struct ConditionQuery {
  ConditionKind kind = ConditionKind::max_entanglement;
  unsigned n = 0;
  double ell_lo = 0.0;  // units of w
  double ell_hi = 3.0;
  std::size_t samples = 200;
  double custom_theta = 0.0;
};

struct CurvePoint {
  double ell_over_w = 0.0;
  double v_over_K = 0.0;
};

struct ConditionCurve {
  ConditionKind kind = ConditionKind::max_entanglement;
  unsigned n = 0;
  double theta_star = 0.0;
  std::vector<CurvePoint> points;  // ordered by increasing ell
};

// Throws DomainError for samples < 2, a negative or empty ell range, or a
// non-positive target.
ConditionCurve condition_curve(const ConditionQuery& q);

struct VerifyOptions {
  // Angle tolerance; unset means 0.05 (n + 1) rad.
  std::optional<double> tolerance;
  double population_tolerance = 0.05;
  double leakage_bound = 0.01;
  double margin = kDefaultAdiabaticMargin;
  IntegrationOptions integration;
  AngleOptions angle;
};

double default_tolerance(unsigned n);

struct PointCheck {
  CurvePoint point;
  double v = 0.0;    // m/s
  double ell = 0.0;  // um
  double theta_full = 0.0;
  double deviation = 0.0;  // |theta_full - theta_star|
  double population_start = 0.0;  // |C1|^2 at exit
  double population_far = 0.0;    // |C5|^2 at exit
  double population_error = 0.0;  // vs (cos^2, sin^2) of theta_star
  double leakage = 0.0;
  double max_norm_drift = 0.0;
  std::size_t steps = 0;
  bool pass = false;
  std::string warning;
};

struct VerificationReport {
  double theta_star = 0.0;
  unsigned n = 0;
  double tolerance = 0.0;
  AdiabaticityReport adiabaticity;
  std::vector<PointCheck> points;
  std::vector<std::string> warnings;

  bool all_pass() const;
};

// Runs the five-level model at every curve point and compares the extracted
// angle and exit populations with the target. Integration failures and a
// failed adiabaticity check are reported, not thrown.
VerificationReport verify_curve_full_model(const ConditionCurve& curve,
                                           const PhysicalParams& p,
                                           const VerifyOptions& opt = {});

}  // namespace cavitylab
