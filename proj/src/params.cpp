#include "cavitylab/params.hpp"

#include <cmath>
#include <limits>

#include "cavitylab/errors.hpp"

namespace cavitylab {

std::string to_string(LaserProfile profile) {
  return profile == LaserProfile::constant ? "constant" : "gaussian";
}

std::optional<ParamViolation> find_violation(const PhysicalParams& p) {
  if (!std::isfinite(p.delta) || p.delta == 0.0)
    return ParamViolation{"delta", "must be finite and non-zero"};
  if (!std::isfinite(p.Delta) || p.Delta == 0.0)
    return ParamViolation{"Delta", "must be finite and non-zero"};
  if (!(p.g0 > 0.0) || !std::isfinite(p.g0))
    return ParamViolation{"g0", "must be positive"};
  if (!(p.Omega0 > 0.0) || !std::isfinite(p.Omega0))
    return ParamViolation{"Omega0", "must be positive"};
  if (!(p.w > 0.0) || !std::isfinite(p.w))
    return ParamViolation{"w", "must be positive"};
  if (p.w_tilde && !(*p.w_tilde >= p.w))
    return ParamViolation{"w_tilde", "must be at least w"};
  if (p.laser == LaserProfile::gaussian && !p.w_tilde)
    return ParamViolation{"w_tilde", "required for the gaussian laser profile"};
  return std::nullopt;
}

std::optional<ParamViolation> find_violation(const Kinematics& k) {
  if (!(k.v > 0.0) || !std::isfinite(k.v))
    return ParamViolation{"v", "must be positive"};
  if (!(k.ell >= 0.0) || !std::isfinite(k.ell))
    return ParamViolation{"ell", "must be non-negative"};
  if (k.z_mid && !std::isfinite(*k.z_mid))
    return ParamViolation{"z_mid", "must be finite"};
  if (!(k.window_sigma >= 6.0) || !std::isfinite(k.window_sigma))
    return ParamViolation{"window_sigma", "must be at least 6"};
  return std::nullopt;
}

void validate(const PhysicalParams& p) {
  if (auto v = find_violation(p)) throw DomainError(v->key + " " + v->message);
}

void validate(const Kinematics& k) {
  if (auto v = find_violation(k)) throw DomainError(v->key + " " + v->message);
}

DerivedScales derive_scales(const PhysicalParams& p) {
  if (p.delta == 0.0 || p.Delta == 0.0)
    throw DomainError("velocity unit undefined for zero detuning");
  DerivedScales s;
  const double k_um_per_us =
      p.Omega0 * p.Omega0 * p.g0 * p.g0 * p.w / (p.delta * p.Delta * p.Delta);
  s.velocity_unit = to_m_per_s(k_um_per_us);
  s.distance_unit = p.w;
  return s;
}

AdiabaticityReport check_adiabaticity(const PhysicalParams& p, double margin) {
  if (!(margin >= 1.0)) throw DomainError("adiabaticity margin must be >= 1");
  const auto ratio = [](double num, double den) {
    return den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
  };
  AdiabaticityReport r;
  r.margin = margin;
  r.conditions[0] = {"|delta|/g0", ratio(std::abs(p.delta), p.g0), false};
  r.conditions[1] = {"|Delta|/Omega0", ratio(std::abs(p.Delta), p.Omega0),
                     false};
  r.conditions[2] = {"|delta*Delta|/g0^2",
                     ratio(std::abs(p.delta * p.Delta), p.g0 * p.g0), false};
  for (auto& c : r.conditions) c.pass = c.ratio >= margin;
  return r;
}

InitialPositions initial_positions(const PhysicalParams& p,
                                   const Kinematics& k) {
  const double mid = k.z_mid ? *k.z_mid : -(k.window_sigma * p.w + 0.5 * k.ell);
  return {mid + 0.5 * k.ell, mid - 0.5 * k.ell};
}

double transit_end_time(const PhysicalParams& p, const Kinematics& k) {
  const auto z = initial_positions(p, k);
  return (k.window_sigma * p.w - z.z2) / to_um_per_us(k.v);
}

}  // namespace cavitylab
