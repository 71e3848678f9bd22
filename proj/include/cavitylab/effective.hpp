#pragma once

#include <optional>

#include "cavitylab/params.hpp"
#include "cavitylab/schrodinger.hpp"
#include "cavitylab/two_qubit.hpp"

namespace cavitylab {

// Effective exchange coupling between |a,1b> and |1,ab> with the
// intermediate states eliminated:
//   lambda(t) = Omega1 Omega2 g1 g2 / (4 delta Delta^2)
double lambda_of_t(const PhysicalParams& p, const Kinematics& k, double t);

// xi(t_end) = integral of lambda from the start of the window (t = 0) to
// t_end, by adaptive Gauss-Kronrod quadrature. An unset t_end means the end
// of the window. Throws QuadratureError when the error estimate stays above
// 1e-10 rad and 1e-12 relative.
double xi_quadrature(const PhysicalParams& p, const Kinematics& k,
                     std::optional<double> t_end = std::nullopt);

// Asymptotic coupling angle for a constant laser:
//   theta = sqrt(pi/32) Omega0^2 g0^2 w / (delta Delta^2 v) exp(-ell^2/2w^2)
// Throws DomainError for v <= 0 or a gaussian laser.
double theta_closed_form(const PhysicalParams& p, const Kinematics& k);

// Same formula in reduced units (v / K, ell / w).
double theta_reduced(double v_over_K, double ell_over_w);

// Hyperfine-basis evolution for a given coupling angle: identity on v1, v4
// and [[cos, -i sin], [-i sin, cos]] on (v2, v3).
TwoQubitOperator evolution_matrix(double theta);

// Two-state model with the laser Stark shifts kept:
//   i dC1/dt = -Omega2^2/(4 Delta) C1 + lambda C5
//   i dC5/dt = lambda C1 - Omega1^2/(4 Delta) C5
// integrated across the window from C1 = 1.
struct ReducedSolution {
  cplx c1;
  cplx c5;
  double t_end = 0.0;
};

ReducedSolution integrate_reduced(const PhysicalParams& p, const Kinematics& k,
                                  const SolverOptions& opt = {});

}  // namespace cavitylab
