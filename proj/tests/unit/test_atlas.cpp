#include <cmath>
#include <numbers>
#include <random>

#include "cavitylab/atlas.hpp"
#include "cavitylab/effective.hpp"
#include "cavitylab/entanglement.hpp"
#include "cavitylab/errors.hpp"
#include "cavitylab/gates.hpp"
#include "doctest.h"

using namespace cavitylab;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("atlas") {
  TEST_CASE("target angles") {
    CHECK(target_angle(ConditionKind::max_entanglement, 0) == doctest::Approx(kPi / 4));
    CHECK(target_angle(ConditionKind::max_entanglement, 4) == doctest::Approx(9 * kPi / 4));
    CHECK(target_angle(ConditionKind::i_swap, 1) == doctest::Approx(3.5 * kPi));
    CHECK(target_angle(ConditionKind::cz_cnot, 2) == doctest::Approx(5 * kPi));
    CHECK(target_angle(ConditionKind::custom, 7, 0.3) == 0.3);
  }

  TEST_CASE("endpoints at ell = 0") {
    CHECK(std::abs(solve_velocity_reduced(kPi / 4, 0.0) - 0.398942) < 1e-6);
    CHECK(std::abs(solve_velocity_reduced(kPi, 0.0) - 0.099736) < 1e-6);
    CHECK(std::abs(solve_velocity_reduced(1.5 * kPi, 0.0) - 0.066491) < 1e-6);
    CHECK(solve_velocity_reduced(kPi / 4, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-15));
  }

  TEST_CASE("half-value distance") {
    const double ell = std::sqrt(2.0 * std::log(2.0));
    CHECK(solve_velocity_reduced(1.0, ell) ==
          doctest::Approx(0.5 * solve_velocity_reduced(1.0, 0.0)).epsilon(1e-14));
  }

  TEST_CASE("absolute form and domain") {
    const PhysicalParams p;
    const double K = derive_scales(p).velocity_unit;
    CHECK(solve_velocity(kPi, 0.0, p) == doctest::Approx(0.099736 * K).epsilon(1e-5));
    CHECK_THROWS_AS(solve_velocity(0.0, 0.0, p), DomainError);
    CHECK_THROWS_AS(solve_velocity_reduced(-1.0, 0.0), DomainError);
  }

  TEST_CASE("solve_velocity inverts the closed form") {
    const PhysicalParams p;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> td(0.01, 40.0), ld(0.0, 3.0 * p.w);
    for (int i = 0; i < 200; ++i) {
      const double th = td(rng);
      Kinematics k;
      k.ell = ld(rng);
      k.v = solve_velocity(th, k.ell, p);
      CHECK(std::abs(theta_closed_form(p, k) - th) <= 1e-12 * std::max(1.0, th));
    }
  }

  TEST_CASE("curves are decreasing and nested") {
    for (ConditionKind kind : {ConditionKind::max_entanglement, ConditionKind::i_swap,
                               ConditionKind::cz_cnot}) {
      std::vector<ConditionCurve> curves;
      for (unsigned n = 0; n < 5; ++n) {
        ConditionQuery q;
        q.kind = kind;
        q.n = n;
        q.samples = 50;
        curves.push_back(condition_curve(q));
      }
      for (const auto& c : curves) {
        REQUIRE(c.points.size() == 50);
        CHECK(c.points.front().ell_over_w == 0.0);
        CHECK(c.points.back().ell_over_w == 3.0);
        for (std::size_t i = 1; i < c.points.size(); ++i)
          CHECK(c.points[i].v_over_K < c.points[i - 1].v_over_K);
        for (const auto& pt : c.points)
          CHECK(std::abs(theta_reduced(pt.v_over_K, pt.ell_over_w) - c.theta_star) < 1e-10);
      }
      for (std::size_t n = 1; n < curves.size(); ++n)
        for (std::size_t i = 0; i < 50; ++i)
          CHECK(curves[n].points[i].v_over_K < curves[n - 1].points[i].v_over_K);
    }
    ConditionQuery q;
    CHECK(condition_curve(q).points.front().v_over_K == doctest::Approx(0.3989).epsilon(1e-4));
    q.kind = ConditionKind::i_swap;
    CHECK(condition_curve(q).points.front().v_over_K == doctest::Approx(0.06649).epsilon(1e-4));
  }

  TEST_CASE("maps reach their maxima on the curves") {
    for (unsigned n = 0; n < 5; ++n) {
      ConditionQuery q;
      q.n = n;
      q.samples = 25;
      for (const auto& pt : condition_curve(q).points)
        CHECK(std::abs(entropy_of_theta(theta_reduced(pt.v_over_K, pt.ell_over_w)) - 1.0) <
              1e-10);
      q.kind = ConditionKind::i_swap;
      for (const auto& pt : condition_curve(q).points)
        CHECK(std::abs(gate_fidelity(Gate::i_swap,
                                     theta_reduced(pt.v_over_K, pt.ell_over_w)) - 1.0) < 1e-10);
      q.kind = ConditionKind::cz_cnot;
      for (const auto& pt : condition_curve(q).points) {
        const double th = theta_reduced(pt.v_over_K, pt.ell_over_w);
        CHECK(std::abs(gate_fidelity(Gate::controlled_z, th) - 1.0) < 1e-10);
        CHECK(std::abs(gate_fidelity(Gate::controlled_not_bar, th) - 1.0) < 1e-10);
      }
    }
  }

  TEST_CASE("query validation") {
    ConditionQuery q;
    q.samples = 1;
    CHECK_THROWS_AS(condition_curve(q), DomainError);
    q.samples = 10;
    q.ell_lo = 2.0;
    q.ell_hi = 2.0;
    CHECK_THROWS_AS(condition_curve(q), DomainError);
    q.ell_lo = -1.0;
    q.ell_hi = 1.0;
    CHECK_THROWS_AS(condition_curve(q), DomainError);
    q = ConditionQuery{};
    q.kind = ConditionKind::custom;
    q.custom_theta = -0.2;
    CHECK_THROWS_AS(condition_curve(q), DomainError);
    CHECK(parse_condition_kind("cz-cnot") == ConditionKind::cz_cnot);
    CHECK_THROWS_AS(parse_condition_kind("bell"), DomainError);
  }

  TEST_CASE("full-model verification near the waist") {
    ConditionQuery q;
    q.ell_hi = 0.5;
    q.samples = 2;
    VerifyOptions opt;
    opt.integration.solver.rtol = 1e-7;
    opt.integration.solver.atol = 1e-10;
    const auto report = verify_curve_full_model(condition_curve(q), PhysicalParams{}, opt);
    CHECK(report.tolerance == doctest::Approx(0.05));
    REQUIRE(report.points.size() == 2);
    for (const auto& c : report.points) {
      CHECK(c.pass);
      CHECK(c.deviation < 0.05);
      CHECK(c.leakage < 0.01);
      CHECK(c.max_norm_drift < 1e-8);
    }
    CHECK(report.all_pass());
  }

  TEST_CASE("non-adiabatic parameters are reported, not thrown") {
    PhysicalParams p;
    p.g0 = p.delta;
    ConditionQuery q;
    q.samples = 2;
    q.ell_hi = 1.0;
    VerifyOptions opt;
    opt.integration.solver.rtol = 1e-7;
    opt.integration.solver.atol = 1e-10;
    VerificationReport report;
    CHECK_NOTHROW(report = verify_curve_full_model(condition_curve(q), p, opt));
    CHECK_FALSE(report.adiabaticity.all_pass());
    CHECK_FALSE(report.all_pass());
    CHECK_FALSE(report.warnings.empty());
  }

  TEST_CASE("tight tolerance exposes the approximation gap") {
    ConditionQuery q;
    q.samples = 2;
    q.ell_hi = 0.2;
    VerifyOptions opt;
    opt.tolerance = 1e-6;
    opt.integration.solver.rtol = 1e-7;
    opt.integration.solver.atol = 1e-10;
    const auto report = verify_curve_full_model(condition_curve(q), PhysicalParams{}, opt);
    CHECK_FALSE(report.all_pass());
  }
}
