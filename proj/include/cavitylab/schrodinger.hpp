#pragma once

// Adaptive integrators for i dy/dt = H(t) y with a Hermitian H(t) of fixed
// small dimension.
//
// magnus4: two-point Gauss fourth-order Magnus step with an exact Hermitian
// exponential. Every step is unitary, so the norm is conserved to round-off
// whatever the step size. The local error is estimated by step doubling.
//
// cf_magnus4: the commutator-free variant of the same order, two exponentials
// per step and real arithmetic when H(t) is real. The default.
//
// dormand_prince45: the classical embedded 5(4) pair with FSAL. Not unitary;
// the norm drifts at the level of the tolerance per step.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>

#include "cavitylab/errors.hpp"

namespace cavitylab {

using cplx = std::complex<double>;

template <int N>
using CVector = Eigen::Matrix<cplx, N, 1>;
template <int N>
using CMatrix = Eigen::Matrix<cplx, N, N>;
template <int N>
using RMatrix = Eigen::Matrix<double, N, N>;

enum class Integrator { cf_magnus4, magnus4, dormand_prince45 };

struct SolverOptions {
  Integrator method = Integrator::cf_magnus4;
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 1e-3;  // us
  double min_step = 1e-12;     // us
  double max_step = 0.0;       // us, 0 = unbounded
  std::size_t max_steps = 200'000'000;
};

struct SolverStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t hamiltonian_evals = 0;
  double max_norm_drift = 0.0;  // max |<y|y> - <y0|y0>| over accepted steps
};

namespace detail {

template <int N>
double error_norm(const CVector<N>& err, const CVector<N>& y0,
                  const CVector<N>& y1, double rtol, double atol) {
  double acc = 0.0;
  for (int i = 0; i < N; ++i) {
    const double scale =
        atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    acc += std::norm(err(i)) / (scale * scale);
  }
  return std::sqrt(acc / N);
}

// exp(-i G) y for Hermitian (or real symmetric) G.
template <int N, class Matrix>
CVector<N> apply_unitary_exp(const Matrix& G, const CVector<N>& y) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  const auto& V = es.eigenvectors();
  CVector<N> coeff = V.adjoint() * y;
  for (int i = 0; i < N; ++i)
    coeff(i) *= std::polar(1.0, -es.eigenvalues()(i));
  return V * coeff;
}

inline constexpr double kGaussOffset = 0.28867513459481288;  // sqrt(3)/6

template <int N, class Hamiltonian>
CVector<N> magnus4_step(Hamiltonian& H, const CVector<N>& y, double t,
                        double h) {
  static const double comm = std::sqrt(3.0) / 12.0;
  const CMatrix<N> H1 = H(t + (0.5 - kGaussOffset) * h).template cast<cplx>();
  const CMatrix<N> H2 = H(t + (0.5 + kGaussOffset) * h).template cast<cplx>();
  // U = exp(-i G), G = h/2 (H1 + H2) + i sqrt(3)/12 h^2 [H1, H2]
  CMatrix<N> G = (0.5 * h) * (H1 + H2);
  G += cplx(0.0, comm * h * h) * (H1 * H2 - H2 * H1);
  return apply_unitary_exp<N>(G, y);
}

// Commutator-free fourth-order step
//   U = exp(-i h (a H1 + b H2)) exp(-i h (b H1 + a H2)),
//   a = 1/4 - sqrt(3)/6, b = 1/4 + sqrt(3)/6,
// which matches magnus4 through h^4 without forming [H1, H2]. For a real
// H(t) both exponents stay real symmetric.
template <int N, class Hamiltonian>
CVector<N> cf_magnus4_step(Hamiltonian& H, const CVector<N>& y, double t,
                           double h) {
  constexpr double a = 0.25 - kGaussOffset;
  constexpr double b = 0.25 + kGaussOffset;
  const auto H1 = H(t + (0.5 - kGaussOffset) * h);
  const auto H2 = H(t + (0.5 + kGaussOffset) * h);
  using Matrix = std::decay_t<decltype(H1)>;
  const Matrix first = h * (b * H1 + a * H2);
  const Matrix second = h * (a * H1 + b * H2);
  return apply_unitary_exp<N>(second, apply_unitary_exp<N>(first, y));
}

}  // namespace detail

// Propagates y from t0 to t1 (t1 > t0). The observer is called as
// observer(t, y) at t0 and at every entry of sample_times (which must be
// increasing and inside [t0, t1]), and finally at t1 if t1 is not a sample.
// Steps are shortened to land exactly on sample times.
template <int N, class Hamiltonian, class Observer>
SolverStats propagate(Hamiltonian&& H, CVector<N>& y, double t0, double t1,
                      std::span<const double> sample_times,
                      const SolverOptions& opt, Observer&& observer) {
  SolverStats stats;
  const double norm0 = y.squaredNorm();
  double t = t0;
  double h = std::max(opt.initial_step, opt.min_step);
  if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
  std::size_t next_sample = 0;
  while (next_sample < sample_times.size() && sample_times[next_sample] <= t0)
    ++next_sample;
  observer(t, static_cast<const CVector<N>&>(y));

  using HMatrix = std::decay_t<decltype(H(t0))>;
  const auto rhs = [&](double time, const CVector<N>& state) -> CVector<N> {
    ++stats.hamiltonian_evals;
    return cplx(0.0, -1.0) * (H(time).template cast<cplx>() * state);
  };
  const auto counted_H = [&](double time) -> HMatrix {
    ++stats.hamiltonian_evals;
    return H(time);
  };

  // FSAL slot for Dormand-Prince.
  CVector<N> k1;
  if (opt.method == Integrator::dormand_prince45) k1 = rhs(t, y);

  while (t < t1) {
    const double target =
        next_sample < sample_times.size() ? sample_times[next_sample] : t1;
    double step = h;
    bool clipped = false;
    if (t + step >= target) {
      step = target - t;
      clipped = true;
    }
    if (step < opt.min_step && !clipped)
      throw StiffnessError(t, "step size underflow");
    if (stats.steps + stats.rejected >= opt.max_steps)
      throw StiffnessError(t, "step budget exhausted");

    CVector<N> y_new;
    double err = 0.0;
    if (opt.method != Integrator::dormand_prince45) {
      const auto stepper = [&](const CVector<N>& from, double at, double dt) {
        return opt.method == Integrator::magnus4
                   ? detail::magnus4_step<N>(counted_H, from, at, dt)
                   : detail::cf_magnus4_step<N>(counted_H, from, at, dt);
      };
      const CVector<N> full = stepper(y, t, step);
      const CVector<N> half = stepper(y, t, 0.5 * step);
      y_new = stepper(half, t + 0.5 * step, 0.5 * step);
      // Richardson: the two-half-step error is (y_new - full) / (2^4 - 1).
      err = detail::error_norm<N>((y_new - full) / 15.0, y, y_new, opt.rtol,
                                  opt.atol);
    } else {
      static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                              c5 = 8.0 / 9;
      static constexpr double a21 = 1.0 / 5;
      static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
      static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15,
                              a43 = 32.0 / 9;
      static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                              a53 = 64448.0 / 6561, a54 = -212.0 / 729;
      static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                              a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                              a65 = -5103.0 / 18656;
      static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                              b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                              b6 = 11.0 / 84;
      static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                              e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                              e6 = 22.0 / 525, e7 = -1.0 / 40;
      const double s = step;
      const CVector<N> k2 = rhs(t + c2 * s, y + s * (a21 * k1));
      const CVector<N> k3 = rhs(t + c3 * s, y + s * (a31 * k1 + a32 * k2));
      const CVector<N> k4 =
          rhs(t + c4 * s, y + s * (a41 * k1 + a42 * k2 + a43 * k3));
      const CVector<N> k5 = rhs(
          t + c5 * s, y + s * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const CVector<N> k6 =
          rhs(t + s, y + s * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                              a65 * k5));
      y_new = y + s * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const CVector<N> k7 = rhs(t + s, y_new);
      const CVector<N> e =
          s * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      err = detail::error_norm<N>(e, y, y_new, opt.rtol, opt.atol);
      if (err <= 1.0) k1 = k7;
    }

    const double factor =
        err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 4.0);
    if (err <= 1.0) {
      t = clipped ? target : t + step;
      y = y_new;
      ++stats.steps;
      stats.max_norm_drift =
          std::max(stats.max_norm_drift, std::abs(y.squaredNorm() - norm0));
      // A clipped step only ever shrinks the proposal.
      if (!clipped)
        h = step * factor;
      else if (factor < 1.0)
        h = std::min(h, step * factor);
      if (clipped && next_sample < sample_times.size()) {
        observer(t, static_cast<const CVector<N>&>(y));
        ++next_sample;
      }
    } else {
      ++stats.rejected;
      h = step * factor;
      if (h < opt.min_step) throw StiffnessError(t, "step size underflow");
    }
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
  }
  if (sample_times.empty() || sample_times.back() < t1)
    observer(t, static_cast<const CVector<N>&>(y));
  return stats;
}

}  // namespace cavitylab
