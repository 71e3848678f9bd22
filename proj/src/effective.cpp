#include "cavitylab/effective.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "cavitylab/couplings.hpp"
#include "cavitylab/errors.hpp"

namespace cavitylab {
namespace {

// sqrt(pi/32) = integral of exp(-2 x^2) dx over the real line, divided by 4.
const double kThetaPrefactor = std::sqrt(std::numbers::pi / 32.0);

double lambda_from(const CouplingSample& s, const PhysicalParams& p) {
  return s.omega1 * s.omega2 * s.g1 * s.g2 / (4.0 * p.delta * p.Delta * p.Delta);
}

}  // namespace

double lambda_of_t(const PhysicalParams& p, const Kinematics& k, double t) {
  return lambda_from(CouplingModel(p, k).at(t), p);
}

double xi_quadrature(const PhysicalParams& p, const Kinematics& k,
                     std::optional<double> t_end) {
  validate(p);
  validate(k);
  const CouplingModel model(p, k);
  const double window_end = transit_end_time(p, k);
  const double upper = t_end ? std::min(*t_end, window_end) : window_end;
  if (upper <= 0.0) return 0.0;

  const auto integrand = [&](double t) { return lambda_from(model.at(t), p); };
  // Split at the instant the pair midpoint crosses the waist, where the
  // integrand peaks.
  const double v = model.velocity();
  const double t_cross = -0.5 * (model.z1() + model.z2()) / v;

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 30;
  constexpr double kRelTol = 1e-13;
  double total = 0.0;
  double total_error = 0.0;
  const auto add = [&](double a, double b) {
    if (!(b > a)) return;
    double error = 0.0;
    total += Quadrature::integrate(integrand, a, b, kMaxDepth, kRelTol, &error);
    total_error += error;
  };
  if (t_cross > 0.0 && t_cross < upper) {
    add(0.0, t_cross);
    add(t_cross, upper);
  } else {
    add(0.0, upper);
  }
  if (total_error > 1e-10 && total_error > 1e-12 * std::abs(total))
    throw QuadratureError(total, total_error);
  return total;
}

double theta_closed_form(const PhysicalParams& p, const Kinematics& k) {
  if (!(k.v > 0.0)) throw DomainError("theta needs a positive velocity");
  if (p.laser != LaserProfile::constant)
    throw DomainError("closed-form theta assumes a constant laser coupling");
  if (p.delta == 0.0 || p.Delta == 0.0)
    throw DomainError("theta undefined for zero detuning");
  const double v = to_um_per_us(k.v);
  return kThetaPrefactor * p.Omega0 * p.Omega0 * p.g0 * p.g0 * p.w /
         (p.delta * p.Delta * p.Delta * v) *
         std::exp(-k.ell * k.ell / (2.0 * p.w * p.w));
}

double theta_reduced(double v_over_K, double ell_over_w) {
  if (!(v_over_K > 0.0)) throw DomainError("theta needs a positive velocity");
  return kThetaPrefactor / v_over_K * std::exp(-0.5 * ell_over_w * ell_over_w);
}

TwoQubitOperator evolution_matrix(double theta) {
  TwoQubitOperator op;
  const cplx c{std::cos(theta), 0.0};
  const cplx s{0.0, -std::sin(theta)};
  op.matrix(1, 1) = c;
  op.matrix(2, 2) = c;
  op.matrix(1, 2) = s;
  op.matrix(2, 1) = s;
  return op;
}

ReducedSolution integrate_reduced(const PhysicalParams& p, const Kinematics& k,
                                  const SolverOptions& opt) {
  validate(p);
  validate(k);
  const CouplingModel model(p, k);
  const double t1 = transit_end_time(p, k);
  const auto hamiltonian = [&](double t) {
    const auto s = model.at(t);
    RMatrix<2> H;
    const double lam = lambda_from(s, p);
    H(0, 0) = -s.omega2 * s.omega2 / (4.0 * p.Delta);
    H(1, 1) = -s.omega1 * s.omega1 / (4.0 * p.Delta);
    H(0, 1) = H(1, 0) = lam;
    return H;
  };
  SolverOptions solver = opt;
  if (solver.max_step <= 0.0) solver.max_step = 0.05 * p.w / model.velocity();
  CVector<2> y(1.0, 0.0);
  propagate<2>(hamiltonian, y, 0.0, t1, {}, solver,
               [](double, const CVector<2>&) {});
  return {y(0), y(1), t1};
}

}  // namespace cavitylab
