#include <cmath>
#include <numbers>

#include "cavitylab/couplings.hpp"
#include "cavitylab/errors.hpp"
#include "cavitylab/full_dynamics.hpp"
#include "doctest.h"

using namespace cavitylab;

namespace {

constexpr double kPi = std::numbers::pi;

// v for which the closed-form angle equals theta, written out from the
// Gaussian integral of the effective coupling.
double velocity_for(const PhysicalParams& p, double theta, double ell) {
  const double K = p.Omega0 * p.Omega0 * p.g0 * p.g0 * p.w /
                   (p.delta * p.Delta * p.Delta);
  return std::sqrt(kPi / 32.0) * K * std::exp(-ell * ell / (2.0 * p.w * p.w)) /
         theta;
}

Kinematics on_curve(const PhysicalParams& p, double theta, double ell) {
  Kinematics k;
  k.v = velocity_for(p, theta, ell);
  k.ell = ell;
  return k;
}

// Eqs. for i dC/dt written as a dense matrix, independently of the library.
Eigen::Matrix<cplx, 5, 5> dense_h(double g1, double g2, double o1, double o2,
                                  const PhysicalParams& p) {
  Eigen::Matrix<cplx, 5, 5> h = Eigen::Matrix<cplx, 5, 5>::Zero();
  h(0, 1) = 0.5 * o2;
  h(1, 0) = 0.5 * o2;
  h(1, 1) = p.Delta;
  h(1, 2) = g2;
  h(2, 1) = g2;
  h(2, 2) = -p.delta;
  h(2, 3) = g1;
  h(3, 2) = g1;
  h(3, 3) = p.Delta;
  h(3, 4) = 0.5 * o1;
  h(4, 3) = 0.5 * o1;
  return h;
}

}  // namespace

TEST_SUITE("full_dynamics") {
  TEST_CASE("rhs: decoupled start state") {
    PhysicalParams p;
    p.laser = LaserProfile::gaussian;
    p.w_tilde = p.w;
    Kinematics k;
    k.v = 0.1;
    k.ell = 0.0;
    FullState s;
    s.c[0] = 1.0;
    s.t = 0.0;  // both atoms at -8 w, laser amplitude e^-64 of the peak
    const auto d = rhs(s, p, k);
    for (const auto& x : d) CHECK(std::abs(x) < 1e-20);
  }

  TEST_CASE("rhs: single-term activation from |1,a;0>") {
    const PhysicalParams p;
    Kinematics k;
    k.v = 0.1;
    FullState s;
    s.c[4] = 1.0;
    s.t = 0.0;
    const auto d = rhs(s, p, k);
    for (int i : {0, 1, 2, 4}) CHECK(std::abs(d[i]) == 0.0);
    CHECK(std::abs(d[3] - cplx(0.0, -0.5 * p.Omega0)) < 1e-15);
  }

  TEST_CASE("rhs matches the dense-matrix product") {
    PhysicalParams p;
    p.laser = LaserProfile::gaussian;
    p.w_tilde = 3.0 * p.w;
    Kinematics k;
    k.v = 0.2;
    k.ell = 7.0;
    FullState s;
    s.c[0] = 1.0 / std::sqrt(2.0);
    s.c[4] = 1.0 / std::sqrt(2.0);
    for (double t : {300.0, 520.0, 610.0, 800.0}) {
      s.t = t;
      const double g1 = g_of_t(make_track(1, ProfileKind::cavity, p, k), p, k, t);
      const double g2 = g_of_t(make_track(2, ProfileKind::cavity, p, k), p, k, t);
      const double o1 = omega_of_t(make_track(1, ProfileKind::laser_gaussian, p, k), p, k, t);
      const double o2 = omega_of_t(make_track(2, ProfileKind::laser_gaussian, p, k), p, k, t);
      const auto H = dense_h(g1, g2, o1, o2, p);
      Eigen::Matrix<cplx, 5, 1> c;
      for (int i = 0; i < 5; ++i) c(i) = s.c[i];
      const Eigen::Matrix<cplx, 5, 1> expected = cplx(0.0, -1.0) * (H * c);
      const auto d = rhs(s, p, k);
      for (int i = 0; i < 5; ++i) CHECK(std::abs(d[i] - expected(i)) < 1e-12);

      const CouplingSample cs{g1, g2, o1, o2};
      const auto M = coupling_matrix(cs, p);
      CHECK((M.cast<cplx>() - H).norm() < 1e-13);
      CHECK((M - M.transpose()).norm() == 0.0);
    }
  }

  TEST_CASE("tiny laser leaves the state frozen") {
    PhysicalParams p;
    p.Omega0 = 1e-12;
    Kinematics k;
    k.v = 0.5;
    IntegrationOptions opt;
    opt.samples = 101;
    const auto traj = integrate(initial_state(p, k, Channel::a_1bar, Preparation::bare),
                                p, k, opt);
    for (const auto& s : traj.samples) {
      CHECK(std::abs(s.c[0] - cplx(1.0, 0.0)) < 1e-9);
      CHECK(s.intermediate_population() < 1e-18);
    }
    CHECK(extract_full_angle(traj).theta == doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("dressed start is normalized and stationary before the cavity") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, kPi / 4.0, 0.0);
    const FullState s0 = initial_state(p, k);
    CHECK(s0.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::norm(s0.c[1]) > 0.0);
    IntegrationOptions opt;
    opt.samples = 401;
    const auto traj = integrate(s0, p, k, opt);
    // First few samples: atoms still far from the waist.
    for (int i = 0; i < 20; ++i)
      CHECK(std::norm(traj.samples[i].c[1]) ==
            doctest::Approx(std::norm(s0.c[1])).epsilon(1e-6));
  }

  TEST_CASE("n = 0 entanglement point at ell = 0") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, kPi / 4.0, 0.0);
    const auto traj = integrate(initial_state(p, k), p, k);
    const auto& end = traj.final_state();
    CHECK(std::norm(end.c[0]) == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::norm(end.c[4]) == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(std::norm(end.c[0]) - 0.5) < 0.05);
    const auto angle = extract_full_angle(traj);
    CHECK(std::abs(angle.theta - kPi / 4.0) < 0.05);
    CHECK_FALSE(angle.non_adiabatic);
    CHECK(angle.leakage < 0.01);
    CHECK(traj.stats.max_norm_drift < 1e-8);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
      CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  }

  TEST_CASE("reverse channel mirrors the forward one") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, kPi / 4.0, 0.0);
    const auto fwd = integrate(initial_state(p, k, Channel::a_1bar), p, k);
    const auto rev = integrate(initial_state(p, k, Channel::one_abar), p, k);
    CHECK(rev.initial_channel == Channel::one_abar);
    const auto& a = fwd.final_state();
    const auto& b = rev.final_state();
    CHECK(std::norm(b.c[4]) == doctest::Approx(std::norm(a.c[0])).epsilon(1e-6));
    CHECK(std::norm(b.c[0]) == doctest::Approx(std::norm(a.c[4])).epsilon(1e-6));
    const double theta = extract_full_angle(rev).theta;
    CHECK(std::abs(std::norm(b.c[4]) - std::pow(std::cos(kPi / 4.0), 2)) < 0.05);
    CHECK(std::abs(theta - kPi / 4.0) < 0.05);
  }

  TEST_CASE("unwrapping reaches the n = 2 branch") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, 5.0 * kPi / 4.0, 0.0);
    const auto traj = integrate(initial_state(p, k), p, k);
    const double theta = extract_full_angle(traj).theta;
    CHECK(std::abs(theta - 5.0 * kPi / 4.0) < 0.15);
    CHECK(std::abs(theta - kPi / 4.0) > 3.0);
  }

  TEST_CASE("halving the tolerance changes little") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, kPi / 4.0, 0.5 * p.w);
    IntegrationOptions a;
    a.solver.rtol = 1e-7;
    a.solver.atol = 1e-10;
    IntegrationOptions b = a;
    b.solver.rtol *= 0.5;
    b.solver.atol *= 0.5;
    const auto& ya = integrate(initial_state(p, k), p, k, a).final_state();
    const auto& yb = integrate(initial_state(p, k), p, k, b).final_state();
    double diff = 0.0;
    for (int i = 0; i < 5; ++i) diff = std::max(diff, std::abs(ya.c[i] - yb.c[i]));
    CHECK(diff < a.solver.rtol);
  }

  TEST_CASE("leakage above the bound is flagged") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, kPi / 4.0, 0.0);
    const auto traj = integrate(initial_state(p, k), p, k);
    AngleOptions opt;
    opt.leakage_bound = 1e-3;
    const auto angle = extract_full_angle(traj, opt);
    CHECK(angle.non_adiabatic);
    CHECK_FALSE(angle.warning.empty());
  }

  TEST_CASE("input validation") {
    const PhysicalParams p;
    Kinematics k;
    k.v = 0.1;
    FullState s;
    s.c[0] = 0.5;
    CHECK_THROWS_AS(integrate(s, p, k), DomainError);
    s.c[0] = 1.0;
    s.t = 50.0 / k.v;  // leading atom already inside the support
    CHECK_THROWS_AS(integrate(s, p, k), DomainError);
    CHECK(parse_channel("one_abar") == Channel::one_abar);
    CHECK_THROWS_AS(parse_channel("sideways"), DomainError);
  }

  TEST_CASE("step budget surfaces as a stiffness error") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, kPi / 4.0, 0.0);
    IntegrationOptions opt;
    opt.solver.max_steps = 100;
    CHECK_THROWS_AS(integrate(initial_state(p, k), p, k, opt), StiffnessError);
  }

  TEST_CASE("Stark phase removal") {
    const PhysicalParams p;
    FullState s;
    s.t = 12.5;
    s.c[0] = std::polar(0.8, 0.3);
    s.c[4] = std::polar(0.6, -1.1);
    const auto r = remove_stark_phase(s, p);
    const double shift = p.Omega0 * p.Omega0 * s.t / (4.0 * p.Delta);
    CHECK(std::abs(r[0] - std::polar(0.8, 0.3 - shift)) < 1e-14);
    CHECK(std::abs(r[1] - std::polar(0.6, -1.1 - shift)) < 1e-14);
  }

  TEST_CASE("five-level integration agrees with DOPRI") {
    const PhysicalParams p;
    const Kinematics k = on_curve(p, kPi / 4.0, 0.0);
    IntegrationOptions dp;
    dp.solver.method = Integrator::dormand_prince45;
    dp.solver.rtol = 1e-10;
    dp.solver.atol = 1e-13;
    dp.samples = 2;
    IntegrationOptions mg;
    mg.samples = 2;
    const auto& a = integrate(initial_state(p, k), p, k, dp).final_state();
    const auto& b = integrate(initial_state(p, k), p, k, mg).final_state();
    for (int i = 0; i < 5; ++i) CHECK(std::abs(a.c[i] - b.c[i]) < 1e-5);
  }
}
