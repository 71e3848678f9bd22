#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cavitylab/couplings.hpp"
#include "cavitylab/params.hpp"
#include "cavitylab/schrodinger.hpp"

namespace cavitylab {

// Restricted composite wave function on the five states
//   C1 |a,1b;0>, C2 |a,eb;0>, C3 |a,ab;1>, C4 |e,ab;0>, C5 |1,ab;0>
// (b marks the second atom, the last entry is the cavity photon number).
struct FullState {
  std::array<cplx, 5> c{};
  double t = 0.0;  // us

  double norm_squared() const;
  // |C2|^2 + |C3|^2 + |C4|^2
  double intermediate_population() const;
};

// Which end of the exchange chain the atoms start in.
enum class Channel { a_1bar, one_abar };

// bare: the pure basis state. dressed: the laser-dressed eigenstate that the
// bare state turns into when the laser is switched on adiabatically. With a
// constant laser the coupling is already on at the start of the window, so
// only the dressed state enters without exciting the |e> admixture.
enum class Preparation { dressed, bare };

Channel parse_channel(const std::string& name);
std::string to_string(Channel channel);

// Five-level interaction Hamiltonian for the given couplings. All couplings
// are real, so it is real symmetric.
RMatrix<5> coupling_matrix(const CouplingSample& s, const PhysicalParams& p);

// dC/dt of the five amplitudes at state.t.
std::array<cplx, 5> rhs(const FullState& state, const PhysicalParams& p,
                        const Kinematics& k);

// State at t = 0, where both atoms sit outside the cavity support.
FullState initial_state(const PhysicalParams& p, const Kinematics& k,
                        Channel channel = Channel::a_1bar,
                        Preparation prep = Preparation::dressed);

struct IntegrationOptions {
  SolverOptions solver;
  std::size_t samples = 4001;  // stored states, evenly spaced, endpoints kept
  // Step cap as a fraction of the coupling time scale w / v.
  double max_step_fraction = 0.05;
};

struct Trajectory {
  std::vector<FullState> samples;
  SolverStats stats;
  Channel initial_channel = Channel::a_1bar;
  double coupling_sign = 1.0;  // sign of the effective coupling, sign(delta)

  const FullState& final_state() const { return samples.back(); }
};

// Integrates the five amplitude equations from initial.t until the
// trailing atom leaves the support. Throws DomainError when the initial state
// is not normalized or the atoms start inside the support, and
// StiffnessError when the integrator stalls.
Trajectory integrate(const FullState& initial, const PhysicalParams& p,
                     const Kinematics& k, const IntegrationOptions& opt = {});

struct AngleOptions {
  double leakage_bound = 0.1;
  // A turn at a branch boundary of the folded angle counts once the folded
  // angle has come within turn_window of the boundary and then retreated by
  // more than hysteresis.
  double turn_window = 0.25;
  double hysteresis = 0.01;
};

struct FullAngle {
  double theta = 0.0;     // rad, unwrapped, signed like the coupling
  double leakage = 0.0;   // intermediate population at the final sample
  bool non_adiabatic = false;
  std::string warning;
};

// Accumulated exchange angle read off the populations of the two end
// states. The folded angle atan2(|C_far|, |C_start|) lives in [0, pi/2];
// it is unwrapped assuming the accumulated angle grows monotonically, as it
// does for a coupling of fixed sign.
FullAngle extract_full_angle(const Trajectory& traj,
                             const AngleOptions& opt = {});

// (C1, C5) with the constant laser Stark phase exp(i Omega0^2 t / 4 Delta)
// removed.
std::array<cplx, 2> remove_stark_phase(const FullState& s,
                                       const PhysicalParams& p);

}  // namespace cavitylab
