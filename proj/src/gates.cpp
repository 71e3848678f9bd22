#include "cavitylab/gates.hpp"

#include <cmath>
#include <numbers>

#include "cavitylab/effective.hpp"
#include "cavitylab/errors.hpp"

namespace cavitylab {
namespace {

using cplx = std::complex<double>;
using Single = Eigen::Matrix3cd;

NineOperator kron(const Single& a, const Single& b) {
  NineOperator out;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      out.block<3, 3>(3 * i, 3 * k) = a(i, k) * b;
  return out;
}

Single raman() {
  Single m = Single::Zero();
  m(kLevelA, kLevel0) = 1.0;
  m(kLevel0, kLevelA) = 1.0;
  m(kLevel1, kLevel1) = 1.0;
  return m;
}

Single ramsey(double eta) {
  const double c = std::cos(0.5 * eta);
  const double s = std::sin(0.5 * eta);
  Single m = Single::Identity();
  m(kLevel0, kLevel0) = c;
  m(kLevel1, kLevel0) = -s;
  m(kLevel0, kLevel1) = s;
  m(kLevel1, kLevel1) = c;
  return m;
}

Gate diagram_gate(Diagram d) {
  switch (d) {
    case Diagram::i_swap:
      return Gate::i_swap;
    case Diagram::controlled_z:
      return Gate::controlled_z;
    case Diagram::controlled_not_bar:
      return Gate::controlled_not_bar;
    case Diagram::entangler:
      break;
  }
  throw DomainError("the entangler diagram has no target gate");
}

Diagram gate_diagram(Gate g) {
  switch (g) {
    case Gate::i_swap:
      return Diagram::i_swap;
    case Gate::controlled_z:
      return Diagram::controlled_z;
    case Gate::controlled_not_bar:
      return Diagram::controlled_not_bar;
  }
  return Diagram::entangler;
}

}  // namespace

NineOperator pulse_unitary(const PulseSpec& pulse) {
  const Single id = Single::Identity();
  switch (pulse.kind) {
    case PulseKind::raman_l1:
    case PulseKind::raman_l2:
      return kron(pulse.targets.atom1 ? raman() : id,
                  pulse.targets.atom2 ? raman() : id);
    case PulseKind::ramsey:
      return kron(pulse.targets.atom1 ? ramsey(pulse.eta) : id,
                  pulse.targets.atom2 ? ramsey(pulse.eta) : id);
    case PulseKind::cavity_pass: {
      NineOperator u = NineOperator::Identity();
      const int a1 = nine_index(kLevelA, kLevel1);
      const int b1 = nine_index(kLevel1, kLevelA);
      const cplx c{std::cos(pulse.theta), 0.0};
      const cplx s{0.0, -std::sin(pulse.theta)};
      u(a1, a1) = c;
      u(b1, b1) = c;
      u(b1, a1) = s;
      u(a1, b1) = s;
      return u;
    }
  }
  throw DomainError("unknown pulse kind");
}

NineState apply_pulse(const NineState& state, const PulseSpec& pulse) {
  return pulse_unitary(pulse) * state;
}

Diagram parse_diagram(const std::string& name) {
  if (name == "entangler") return Diagram::entangler;
  return gate_diagram(parse_gate(name));
}

Gate parse_gate(const std::string& name) {
  if (name == "i-swap" || name == "iswap") return Gate::i_swap;
  if (name == "controlled-Z" || name == "cz") return Gate::controlled_z;
  if (name == "controlled-NOT-bar" || name == "cnotbar")
    return Gate::controlled_not_bar;
  throw DomainError("unknown gate '" + name + "'");
}

std::string to_string(Diagram d) {
  return d == Diagram::entangler ? "entangler" : to_string(diagram_gate(d));
}

std::string to_string(Gate g) {
  switch (g) {
    case Gate::i_swap:
      return "i-swap";
    case Gate::controlled_z:
      return "controlled-Z";
    case Gate::controlled_not_bar:
      return "controlled-NOT-bar";
  }
  return "?";
}

std::vector<PulseSpec> diagram_pulses(Diagram diagram, double theta) {
  const PulseSpec pass{PulseKind::cavity_pass, kBothAtoms, 0.0, theta};
  switch (diagram) {
    case Diagram::entangler:
    case Diagram::i_swap:
      return {{PulseKind::raman_l1, kBothAtoms}, pass,
              {PulseKind::raman_l2, kBothAtoms}};
    case Diagram::controlled_z:
      return {{PulseKind::raman_l1, kAtom1Only}, pass,
              {PulseKind::raman_l2, kAtom1Only}};
    case Diagram::controlled_not_bar:
      return {{PulseKind::ramsey, kAtom2Only, 0.5 * std::numbers::pi},
              {PulseKind::raman_l1, kAtom2Only},
              pass,
              {PulseKind::raman_l2, kAtom2Only},
              {PulseKind::ramsey, kAtom2Only, 1.5 * std::numbers::pi}};
  }
  throw DomainError("unknown diagram");
}

TwoQubitOperator ideal_gate(Gate gate) {
  TwoQubitOperator op;
  op.matrix.setZero();
  switch (gate) {
    case Gate::i_swap:
      op.matrix(0, 0) = 1.0;
      op.matrix(1, 2) = cplx(0.0, 1.0);
      op.matrix(2, 1) = cplx(0.0, 1.0);
      op.matrix(3, 3) = 1.0;
      break;
    case Gate::controlled_z:
      op.matrix.diagonal() << 1.0, -1.0, 1.0, 1.0;
      break;
    case Gate::controlled_not_bar:
      op.matrix(0, 0) = 1.0;
      op.matrix(1, 1) = 1.0;
      op.matrix(2, 3) = -1.0;
      op.matrix(3, 2) = -1.0;
      break;
  }
  return op;
}

double distance_normalization(Gate gate) {
  return gate == Gate::i_swap ? 2.0 * std::numbers::sqrt2 : 2.0;
}

GateResult run_sequence(Diagram diagram, double theta) {
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
  NineOperator total = NineOperator::Identity();
  for (const auto& pulse : diagram_pulses(diagram, theta))
    total = pulse_unitary(pulse) * total;

  GateResult r;
  for (int j = 0; j < 4; ++j) {
    r.outputs.col(j) = total.col(kHyperfineIndex[j]);
    double leak = 0.0;
    for (int i = 0; i < 9; ++i) {
      const bool hyperfine = i == kHyperfineIndex[0] || i == kHyperfineIndex[1] ||
                             i == kHyperfineIndex[2] || i == kHyperfineIndex[3];
      if (!hyperfine) leak += std::norm(r.outputs(i, j));
    }
    r.op.column_leakage[j] = leak;
    for (int i = 0; i < 4; ++i)
      r.op.matrix(i, j) = r.outputs(kHyperfineIndex[i], j);
  }

  if (diagram == Diagram::entangler) return r;

  const Gate gate = diagram_gate(diagram);
  const Eigen::Matrix4cd ideal = ideal_gate(gate).matrix;
  if (gate == Gate::controlled_not_bar) {
    const cplx overlap = (ideal.adjoint() * r.op.matrix).trace();
    if (std::abs(overlap) > 0.0) r.global_phase = overlap / std::abs(overlap);
  }
  const double projected =
      (r.op.matrix / r.global_phase - ideal).squaredNorm();
  r.distance = std::sqrt(projected + r.op.leakage_norm());
  r.fidelity = 1.0 - r.distance / distance_normalization(gate);
  return r;
}

double gate_fidelity(Gate gate, double theta) {
  return run_sequence(gate_diagram(gate), theta).fidelity;
}

Grid fidelity_map(Gate gate, const GridSpec& spec, unsigned threads) {
  return evaluate_grid(
      spec,
      [gate](double v, double ell) {
        return gate_fidelity(gate, theta_reduced(v, ell));
      },
      threads);
}

}  // namespace cavitylab
