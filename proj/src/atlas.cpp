#include "cavitylab/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cavitylab/errors.hpp"

namespace cavitylab {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ConditionKind parse_condition_kind(const std::string& name) {
  if (name == "max-entanglement" || name == "entropy")
    return ConditionKind::max_entanglement;
  if (name == "i-swap" || name == "iswap") return ConditionKind::i_swap;
  if (name == "cz-cnot" || name == "cz" || name == "cnotbar")
    return ConditionKind::cz_cnot;
  if (name == "custom") return ConditionKind::custom;
  throw DomainError("unknown condition kind '" + name + "'");
}

std::string to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::max_entanglement:
      return "max-entanglement";
    case ConditionKind::i_swap:
      return "i-swap";
    case ConditionKind::cz_cnot:
      return "cz-cnot";
    case ConditionKind::custom:
      return "custom";
  }
  return "?";
}

double target_angle(ConditionKind kind, unsigned n, double custom_theta) {
  const double dn = static_cast<double>(n);
  switch (kind) {
    case ConditionKind::max_entanglement:
      return (2.0 * dn + 1.0) * kPi / 4.0;
    case ConditionKind::i_swap:
      return 1.5 * kPi + 2.0 * kPi * dn;
    case ConditionKind::cz_cnot:
      return kPi + 2.0 * kPi * dn;
    case ConditionKind::custom:
      return custom_theta;
  }
  throw DomainError("unknown condition kind");
}

double solve_velocity_reduced(double theta_star, double ell_over_w) {
  if (!(theta_star > 0.0)) throw DomainError("theta_star must be > 0");
  return std::sqrt(kPi / 32.0) *
         std::exp(-0.5 * ell_over_w * ell_over_w) / theta_star;
}

double solve_velocity(double theta_star, double ell, const PhysicalParams& p) {
  validate(p);
  return derive_scales(p).velocity_unit *
         solve_velocity_reduced(theta_star, ell / p.w);
}

ConditionCurve condition_curve(const ConditionQuery& q) {
  if (q.samples < 2) throw DomainError("a condition curve needs >= 2 samples");
  if (!(q.ell_lo >= 0.0) || !(q.ell_hi > q.ell_lo))
    throw DomainError("ell range must satisfy 0 <= lo < hi");
  ConditionCurve c;
  c.kind = q.kind;
  c.n = q.n;
  c.theta_star = target_angle(q.kind, q.n, q.custom_theta);
  if (!(c.theta_star > 0.0)) throw DomainError("target angle must be > 0");
  c.points.reserve(q.samples);
  const double span = q.ell_hi - q.ell_lo;
  for (std::size_t i = 0; i < q.samples; ++i) {
    const double ell = i + 1 == q.samples
                           ? q.ell_hi
                           : q.ell_lo + span * static_cast<double>(i) /
                                            static_cast<double>(q.samples - 1);
    c.points.push_back({ell, solve_velocity_reduced(c.theta_star, ell)});
  }
  return c;
}

double default_tolerance(unsigned n) { return 0.05 * (n + 1.0); }

bool VerificationReport::all_pass() const {
  if (!adiabaticity.all_pass()) return false;
  return std::all_of(points.begin(), points.end(),
                     [](const PointCheck& c) { return c.pass; });
}

VerificationReport verify_curve_full_model(const ConditionCurve& curve,
                                           const PhysicalParams& p,
                                           const VerifyOptions& opt) {
  validate(p);
  VerificationReport report;
  report.theta_star = curve.theta_star;
  report.n = curve.n;
  report.tolerance = opt.tolerance.value_or(default_tolerance(curve.n));
  report.adiabaticity = check_adiabaticity(p, opt.margin);
  if (!report.adiabaticity.all_pass()) {
    for (const auto& c : report.adiabaticity.conditions)
      if (!c.pass)
        report.warnings.push_back("adiabaticity condition " + c.name +
                                  " fails (ratio " + std::to_string(c.ratio) +
                                  ")");
  }

  const DerivedScales scales = derive_scales(p);
  const double c_star = std::cos(curve.theta_star);
  const double s_star = std::sin(curve.theta_star);
  for (const CurvePoint& pt : curve.points) {
    PointCheck check;
    check.point = pt;
    check.v = pt.v_over_K * scales.velocity_unit;
    check.ell = pt.ell_over_w * p.w;
    try {
      Kinematics k;
      k.v = check.v;
      k.ell = check.ell;
      const Trajectory traj =
          integrate(initial_state(p, k), p, k, opt.integration);
      const FullAngle angle = extract_full_angle(traj, opt.angle);
      const FullState& end = traj.final_state();
      check.theta_full = angle.theta;
      check.deviation = std::abs(angle.theta - curve.theta_star);
      check.population_start = std::norm(end.c[0]);
      check.population_far = std::norm(end.c[4]);
      check.population_error =
          std::max(std::abs(check.population_start - c_star * c_star),
                   std::abs(check.population_far - s_star * s_star));
      check.leakage = end.intermediate_population();
      check.max_norm_drift = traj.stats.max_norm_drift;
      check.steps = traj.stats.steps;
      check.warning = angle.warning;
      check.pass = check.deviation <= report.tolerance &&
                   check.population_error <= opt.population_tolerance &&
                   check.leakage < opt.leakage_bound && !angle.non_adiabatic;
    } catch (const Error& e) {
      check.pass = false;
      check.warning = e.what();
    }
    if (!check.warning.empty())
      report.warnings.push_back("ell/w=" + std::to_string(pt.ell_over_w) + ": " +
                                check.warning);
    report.points.push_back(std::move(check));
  }
  return report;
}

}  // namespace cavitylab
