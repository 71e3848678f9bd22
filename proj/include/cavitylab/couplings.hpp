#pragma once

#include "cavitylab/params.hpp"

namespace cavitylab {

enum class ProfileKind { cavity, laser_gaussian, laser_constant };

// Coupling profile seen by one atom along its straight trajectory
// z(t) = z0 + v t.
struct CouplingTrack {
  int atom_index = 1;  // 1 leads, 2 trails
  double z0 = 0.0;     // um
  ProfileKind kind = ProfileKind::cavity;
};

// Laser profile kind selected by the parameters.
ProfileKind laser_kind(const PhysicalParams& p);

// Track for atom 1 or 2 with z0 taken from initial_positions().
CouplingTrack make_track(int atom_index, ProfileKind kind,
                         const PhysicalParams& p, const Kinematics& k);

// Atom-cavity coupling g0 exp(-(z0 + v t)^2 / w^2), set to zero outside
// |z0 + v t| <= window_sigma * w. Throws DomainError for a laser track.
double g_of_t(const CouplingTrack& track, const PhysicalParams& p,
              const Kinematics& k, double t);

// Atom-laser coupling. Throws ConfigError when the gaussian profile is
// requested without w_tilde, DomainError for a cavity track.
double omega_of_t(const CouplingTrack& track, const PhysicalParams& p,
                  const Kinematics& k, double t);

struct CouplingSample {
  double g1 = 0.0;
  double g2 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

// Evaluates all four couplings at once with precomputed constants; this is
// what the integrators call in their inner loop.
class CouplingModel {
 public:
  CouplingModel(const PhysicalParams& p, const Kinematics& k);

  CouplingSample at(double t) const;

  double z1() const { return z1_; }
  double z2() const { return z2_; }
  double velocity() const { return v_; }  // um/us

 private:
  double g0_;
  double omega0_;
  double inv_w2_;
  double inv_wt2_;  // 0 for the constant laser
  double cutoff_;
  double z1_;
  double z2_;
  double v_;
  bool gaussian_laser_;
};

}  // namespace cavitylab
