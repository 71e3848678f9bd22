#include "cavitylab/full_dynamics.hpp"

#include <cmath>
#include <numbers>

#include "cavitylab/errors.hpp"

namespace cavitylab {
namespace {

constexpr cplx kMinusI{0.0, -1.0};

// Ground component and |e> admixture of the laser-dressed state of a
// two-level block {ground (energy 0), excited (energy Delta)} coupled by a.
std::pair<double, double> dressed_pair(double a, double Delta) {
  if (a == 0.0) return {1.0, 0.0};
  const double root = std::sqrt(Delta * Delta + 4.0 * a * a);
  const double energy = 0.5 * (Delta - std::copysign(root, Delta));
  const double ratio = energy / a;
  const double ground = 1.0 / std::sqrt(1.0 + ratio * ratio);
  return {ground, ratio * ground};
}

}  // namespace

double FullState::norm_squared() const {
  double n = 0.0;
  for (const auto& x : c) n += std::norm(x);
  return n;
}

double FullState::intermediate_population() const {
  return std::norm(c[1]) + std::norm(c[2]) + std::norm(c[3]);
}

Channel parse_channel(const std::string& name) {
  if (name == "a1" || name == "a,1bar" || name == "a_1bar") return Channel::a_1bar;
  if (name == "1a" || name == "1,abar" || name == "one_abar")
    return Channel::one_abar;
  throw DomainError("unknown initial channel '" + name +
                    "' (expected a_1bar or one_abar)");
}

std::string to_string(Channel channel) {
  return channel == Channel::a_1bar ? "a_1bar" : "one_abar";
}

RMatrix<5> coupling_matrix(const CouplingSample& s, const PhysicalParams& p) {
  RMatrix<5> H = RMatrix<5>::Zero();
  H(1, 1) = p.Delta;
  H(2, 2) = -p.delta;
  H(3, 3) = p.Delta;
  H(0, 1) = H(1, 0) = 0.5 * s.omega2;
  H(1, 2) = H(2, 1) = s.g2;
  H(2, 3) = H(3, 2) = s.g1;
  H(3, 4) = H(4, 3) = 0.5 * s.omega1;
  return H;
}

std::array<cplx, 5> rhs(const FullState& state, const PhysicalParams& p,
                        const Kinematics& k) {
  const auto s = CouplingModel(p, k).at(state.t);
  const auto& c = state.c;
  std::array<cplx, 5> d;
  d[0] = kMinusI * (0.5 * s.omega2 * c[1]);
  d[1] = kMinusI * (p.Delta * c[1] + s.g2 * c[2] + 0.5 * s.omega2 * c[0]);
  d[2] = kMinusI * (-p.delta * c[2] + s.g1 * c[3] + s.g2 * c[1]);
  d[3] = kMinusI * (p.Delta * c[3] + s.g1 * c[2] + 0.5 * s.omega1 * c[4]);
  d[4] = kMinusI * (0.5 * s.omega1 * c[3]);
  return d;
}

FullState initial_state(const PhysicalParams& p, const Kinematics& k,
                        Channel channel, Preparation prep) {
  FullState s;
  s.t = 0.0;
  const auto couplings = CouplingModel(p, k).at(0.0);
  if (channel == Channel::a_1bar) {
    if (prep == Preparation::bare) {
      s.c[0] = 1.0;
    } else {
      const auto [g, e] = dressed_pair(0.5 * couplings.omega2, p.Delta);
      s.c[0] = g;
      s.c[1] = e;
    }
  } else {
    if (prep == Preparation::bare) {
      s.c[4] = 1.0;
    } else {
      const auto [g, e] = dressed_pair(0.5 * couplings.omega1, p.Delta);
      s.c[4] = g;
      s.c[3] = e;
    }
  }
  return s;
}

Trajectory integrate(const FullState& initial, const PhysicalParams& p,
                     const Kinematics& k, const IntegrationOptions& opt) {
  validate(p);
  validate(k);
  if (std::abs(initial.norm_squared() - 1.0) > 1e-9)
    throw DomainError("initial state is not normalized");
  if (opt.samples < 2) throw DomainError("need at least two samples");

  const CouplingModel model(p, k);
  const double v = model.velocity();
  const double edge = k.window_sigma * p.w;
  if (model.z1() + v * initial.t > -edge * (1.0 - 1e-12))
    throw DomainError(
        "atoms must start outside the coupling support (leading atom at "
        "z <= -window_sigma * w)");

  const double t0 = initial.t;
  const double t1 = transit_end_time(p, k);
  if (!(t1 > t0)) throw DomainError("empty integration window");

  std::vector<double> times(opt.samples);
  for (std::size_t i = 0; i < opt.samples; ++i)
    times[i] = t0 + (t1 - t0) * static_cast<double>(i) /
                        static_cast<double>(opt.samples - 1);
  times.back() = t1;

  SolverOptions solver = opt.solver;
  if (solver.max_step <= 0.0 && opt.max_step_fraction > 0.0)
    solver.max_step = opt.max_step_fraction * p.w / v;

  Trajectory traj;
  traj.samples.reserve(opt.samples);
  traj.coupling_sign = p.delta > 0.0 ? 1.0 : -1.0;
  traj.initial_channel =
      std::norm(initial.c[0]) >= std::norm(initial.c[4]) ? Channel::a_1bar
                                                          : Channel::one_abar;

  CVector<5> y;
  for (int i = 0; i < 5; ++i) y(i) = initial.c[i];
  const auto hamiltonian = [&](double t) {
    return coupling_matrix(model.at(t), p);
  };
  const auto record = [&](double t, const CVector<5>& state) {
    FullState s;
    s.t = t;
    for (int i = 0; i < 5; ++i) s.c[i] = state(i);
    traj.samples.push_back(s);
  };
  traj.stats = propagate<5>(hamiltonian, y, t0, t1,
                            std::span<const double>(times).subspan(1), solver,
                            record);
  return traj;
}

FullAngle extract_full_angle(const Trajectory& traj, const AngleOptions& opt) {
  FullAngle out;
  if (traj.samples.empty()) return out;
  constexpr double kQuarter = 0.5 * std::numbers::pi;
  const bool from_c1 = traj.initial_channel == Channel::a_1bar;
  const auto folded = [&](const FullState& s) {
    const double start = std::abs(from_c1 ? s.c[0] : s.c[4]);
    const double far = std::abs(from_c1 ? s.c[4] : s.c[0]);
    return std::atan2(far, start);
  };

  // Segment k covers accumulated angles [k pi/2, (k+1) pi/2]; progress is
  // the distance travelled inside the current segment.
  long segment = 0;
  const auto progress_of = [&](double phi) {
    return segment % 2 == 0 ? phi : kQuarter - phi;
  };
  double best = progress_of(folded(traj.samples.front()));
  double progress = best;
  for (const auto& s : traj.samples) {
    progress = progress_of(folded(s));
    if (best > kQuarter - opt.turn_window && progress < best - opt.hysteresis) {
      ++segment;
      progress = kQuarter - progress;
      best = progress;
    }
    best = std::max(best, progress);
  }
  out.theta = traj.coupling_sign *
              (static_cast<double>(segment) * kQuarter + progress);
  out.leakage = traj.final_state().intermediate_population();
  if (out.leakage > opt.leakage_bound) {
    out.non_adiabatic = true;
    out.warning = "non-adiabatic transit: intermediate population " +
                  std::to_string(out.leakage) + " exceeds " +
                  std::to_string(opt.leakage_bound);
  }
  return out;
}

std::array<cplx, 2> remove_stark_phase(const FullState& s,
                                       const PhysicalParams& p) {
  const cplx phase =
      std::polar(1.0, -p.Omega0 * p.Omega0 * s.t / (4.0 * p.Delta));
  return {s.c[0] * phase, s.c[4] * phase};
}

}  // namespace cavitylab
