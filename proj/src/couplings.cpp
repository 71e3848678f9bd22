#include "cavitylab/couplings.hpp"

#include <cmath>

#include "cavitylab/errors.hpp"

namespace cavitylab {

ProfileKind laser_kind(const PhysicalParams& p) {
  return p.laser == LaserProfile::gaussian ? ProfileKind::laser_gaussian
                                           : ProfileKind::laser_constant;
}

CouplingTrack make_track(int atom_index, ProfileKind kind,
                         const PhysicalParams& p, const Kinematics& k) {
  if (atom_index != 1 && atom_index != 2)
    throw DomainError("atom index must be 1 or 2");
  const auto z = initial_positions(p, k);
  return {atom_index, atom_index == 1 ? z.z1 : z.z2, kind};
}

double g_of_t(const CouplingTrack& track, const PhysicalParams& p,
              const Kinematics& k, double t) {
  if (track.kind != ProfileKind::cavity)
    throw DomainError("g_of_t needs a cavity track");
  const double z = track.z0 + to_um_per_us(k.v) * t;
  if (std::abs(z) > k.window_sigma * p.w) return 0.0;
  return p.g0 * std::exp(-(z * z) / (p.w * p.w));
}

double omega_of_t(const CouplingTrack& track, const PhysicalParams& p,
                  const Kinematics& k, double t) {
  switch (track.kind) {
    case ProfileKind::laser_constant:
      return p.Omega0;
    case ProfileKind::laser_gaussian: {
      if (!p.w_tilde)
        throw ConfigError("w_tilde", "gaussian laser profile needs w_tilde");
      const double z = track.z0 + to_um_per_us(k.v) * t;
      return p.Omega0 * std::exp(-(z * z) / (*p.w_tilde * *p.w_tilde));
    }
    case ProfileKind::cavity:
      break;
  }
  throw DomainError("omega_of_t needs a laser track");
}

CouplingModel::CouplingModel(const PhysicalParams& p, const Kinematics& k)
    : g0_(p.g0),
      omega0_(p.Omega0),
      inv_w2_(1.0 / (p.w * p.w)),
      inv_wt2_(0.0),
      cutoff_(k.window_sigma * p.w),
      v_(to_um_per_us(k.v)),
      gaussian_laser_(p.laser == LaserProfile::gaussian) {
  if (gaussian_laser_) {
    if (!p.w_tilde)
      throw ConfigError("w_tilde", "gaussian laser profile needs w_tilde");
    inv_wt2_ = 1.0 / (*p.w_tilde * *p.w_tilde);
  }
  const auto z = initial_positions(p, k);
  z1_ = z.z1;
  z2_ = z.z2;
}

CouplingSample CouplingModel::at(double t) const {
  const double x1 = z1_ + v_ * t;
  const double x2 = z2_ + v_ * t;
  CouplingSample s;
  s.g1 = std::abs(x1) > cutoff_ ? 0.0 : g0_ * std::exp(-x1 * x1 * inv_w2_);
  s.g2 = std::abs(x2) > cutoff_ ? 0.0 : g0_ * std::exp(-x2 * x2 * inv_w2_);
  if (gaussian_laser_) {
    s.omega1 = omega0_ * std::exp(-x1 * x1 * inv_wt2_);
    s.omega2 = omega0_ * std::exp(-x2 * x2 * inv_wt2_);
  } else {
    s.omega1 = s.omega2 = omega0_;
  }
  return s;
}

}  // namespace cavitylab
