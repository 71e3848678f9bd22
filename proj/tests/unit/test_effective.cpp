#include <cmath>
#include <numbers>
#include <random>

#include "cavitylab/couplings.hpp"
#include "cavitylab/effective.hpp"
#include "cavitylab/errors.hpp"
#include "doctest.h"

using namespace cavitylab;

namespace {

constexpr double kPi = std::numbers::pi;

double K_of(const PhysicalParams& p) {
  return p.Omega0 * p.Omega0 * p.g0 * p.g0 * p.w / (p.delta * p.Delta * p.Delta);
}

// exp(-i theta X) by its Taylor series, X swapping v2 and v3.
Eigen::Matrix4cd series_exp(double theta) {
  Eigen::Matrix4cd X = Eigen::Matrix4cd::Zero();
  X(1, 2) = 1.0;
  X(2, 1) = 1.0;
  const Eigen::Matrix4cd A = cplx(0.0, -theta) * X;
  Eigen::Matrix4cd term = Eigen::Matrix4cd::Identity();
  Eigen::Matrix4cd sum = term;
  for (int n = 1; n < 80; ++n) {
    term = term * A / static_cast<double>(n);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_SUITE("effective") {
  TEST_CASE("lambda vanishes when an atom is outside the support") {
    const PhysicalParams p;
    Kinematics k;
    k.v = 0.1;
    k.ell = 2.0 * p.w;
    k.z_mid = -9.0 * p.w;  // trailing atom at -10 w
    CHECK(lambda_of_t(p, k, 0.0) == 0.0);
  }

  TEST_CASE("lambda peak value") {
    const PhysicalParams p;
    Kinematics k;
    k.v = 0.1;
    k.ell = 0.0;
    const double t_cross = 8.0 * p.w / k.v;
    CHECK(lambda_of_t(p, k, t_cross) ==
          doctest::Approx(p.Omega0 * p.Omega0 * p.g0 * p.g0 /
                          (4.0 * p.delta * p.Delta * p.Delta)));
  }

  TEST_CASE("lambda with the pair straddling the waist") {
    const PhysicalParams p;
    Kinematics k;
    k.v = 0.1;
    k.ell = p.w;
    const auto z = initial_positions(p, k);
    const double t_mid = -0.5 * (z.z1 + z.z2) / k.v;
    const double g1 = g_of_t(make_track(1, ProfileKind::cavity, p, k), p, k, t_mid);
    const double g2 = g_of_t(make_track(2, ProfileKind::cavity, p, k), p, k, t_mid);
    const double from_tracks =
        p.Omega0 * p.Omega0 * g1 * g2 / (4.0 * p.delta * p.Delta * p.Delta);
    const double written = p.Omega0 * p.Omega0 * p.g0 * p.g0 * std::exp(-0.5) /
                           (4.0 * p.delta * p.Delta * p.Delta);
    CHECK(lambda_of_t(p, k, t_mid) == doctest::Approx(from_tracks).epsilon(1e-14));
    CHECK(lambda_of_t(p, k, t_mid) == doctest::Approx(written).epsilon(1e-14));
  }

  TEST_CASE("quadrature against the closed form") {
    const PhysicalParams p;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> vd(0.05, 1.2), ld(0.0, 3.0);
    const double K = K_of(p);
    for (int i = 0; i < 40; ++i) {
      Kinematics k;
      k.v = vd(rng) * K;
      k.ell = ld(rng) * p.w;
      const double th = theta_closed_form(p, k);
      CHECK(std::abs(xi_quadrature(p, k) - th) / th < 1e-8);
    }
  }

  TEST_CASE("quadrature limits") {
    const PhysicalParams p;
    Kinematics k;
    k.v = 0.2 * K_of(p);
    k.ell = 1.3 * p.w;
    CHECK(xi_quadrature(p, k, 0.0) == 0.0);
    const auto z = initial_positions(p, k);
    const double t_mid = -0.5 * (z.z1 + z.z2) / k.v;
    CHECK(std::abs(xi_quadrature(p, k, t_mid) - 0.5 * xi_quadrature(p, k)) < 1e-10);
  }

  TEST_CASE("closed-form landmarks") {
    const PhysicalParams p;
    const double K = K_of(p);
    Kinematics k;
    k.v = K / std::sqrt(2.0 * kPi);
    CHECK(theta_closed_form(p, k) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
    k.v = 0.066491 * K;
    CHECK(theta_closed_form(p, k) == doctest::Approx(1.5 * kPi).epsilon(1e-5));
    k.v = 0.3 * K;
    k.ell = 40.0 * p.w;
    CHECK(theta_closed_form(p, k) < 1e-300);
    CHECK(theta_reduced(1.0 / std::sqrt(2.0 * kPi), 0.0) ==
          doctest::Approx(kPi / 4.0).epsilon(1e-14));
  }

  TEST_CASE("closed form scales as 1 / v") {
    const PhysicalParams p;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> vd(0.01, 1.0), cd(0.2, 5.0), ld(0.0, 40.0);
    for (int i = 0; i < 50; ++i) {
      Kinematics a;
      a.v = vd(rng);
      a.ell = ld(rng);
      Kinematics b = a;
      const double c = cd(rng);
      b.v *= c;
      CHECK(theta_closed_form(p, b) ==
            doctest::Approx(theta_closed_form(p, a) / c).epsilon(1e-14));
    }
  }

  TEST_CASE("closed form domain") {
    PhysicalParams p;
    Kinematics k;
    k.v = 0.0;
    CHECK_THROWS_AS(theta_closed_form(p, k), DomainError);
    k.v = 0.1;
    p.laser = LaserProfile::gaussian;
    p.w_tilde = 5.0 * p.w;
    CHECK_THROWS_AS(theta_closed_form(p, k), DomainError);
  }

  TEST_CASE("gaussian laser reduces the angle below the constant-laser value") {
    PhysicalParams p;
    Kinematics k;
    k.v = 0.1;
    const double constant = xi_quadrature(p, k);
    p.laser = LaserProfile::gaussian;
    p.w_tilde = 5.0 * p.w;
    const double gaussian = xi_quadrature(p, k);
    CHECK(gaussian > 0.0);
    CHECK(gaussian < constant);
  }

  TEST_CASE("evolution matrix") {
    CHECK((evolution_matrix(0.0).matrix - Eigen::Matrix4cd::Identity()).norm() == 0.0);
    const auto iswap = evolution_matrix(1.5 * kPi).matrix;
    CHECK(std::abs(iswap(1, 2) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(iswap(2, 1) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(iswap(1, 1)) < 1e-15);
    CHECK(std::abs(iswap(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(iswap(3, 3) - 1.0) == 0.0);

    const Eigen::Vector4cd out =
        evolution_matrix(kPi / 4.0).matrix * Eigen::Vector4cd(0.0, 1.0, 0.0, 0.0);
    CHECK(std::abs(out(1) - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
    CHECK(std::abs(out(2) - cplx(0.0, -1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(out(0)) == 0.0);
    CHECK(std::abs(out(3)) == 0.0);
  }

  TEST_CASE("evolution matrix properties") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> td(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
      const double th = td(rng);
      const auto U = evolution_matrix(th);
      CHECK(U.unitarity_defect() < 1e-14);
      CHECK(U.leakage_norm() == 0.0);
      CHECK((U.matrix * evolution_matrix(-th).matrix - Eigen::Matrix4cd::Identity())
                .norm() < 1e-13);
      CHECK((U.matrix - series_exp(th)).norm() < 1e-10);
    }
  }

  TEST_CASE("reduced two-state model reproduces the angle") {
    const PhysicalParams p;
    Kinematics k;
    k.v = 0.25 * K_of(p);
    k.ell = 0.8 * p.w;
    SolverOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-13;
    const auto r = integrate_reduced(p, k, opt);
    const double th = theta_closed_form(p, k);
    CHECK(std::norm(r.c1) == doctest::Approx(std::pow(std::cos(th), 2)).epsilon(1e-6));
    CHECK(std::norm(r.c5) == doctest::Approx(std::pow(std::sin(th), 2)).epsilon(1e-6));
    CHECK(r.t_end == doctest::Approx(transit_end_time(p, k)));
  }
}
