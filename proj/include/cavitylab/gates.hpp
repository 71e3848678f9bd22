#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "cavitylab/grid.hpp"
#include "cavitylab/two_qubit.hpp"

namespace cavitylab {

// Two atoms with per-atom levels {|0>, |1>, |a>}; index = 3 * level1 + level2.
using NineState = Eigen::Matrix<std::complex<double>, 9, 1>;
using NineOperator = Eigen::Matrix<std::complex<double>, 9, 9>;

enum Level : int { kLevel0 = 0, kLevel1 = 1, kLevelA = 2 };

constexpr int nine_index(int level1, int level2) { return 3 * level1 + level2; }

// Nine-space indices of the hyperfine basis v1..v4.
inline constexpr int kHyperfineIndex[4] = {nine_index(kLevel0, kLevel0),
                                           nine_index(kLevel0, kLevel1),
                                           nine_index(kLevel1, kLevel0),
                                           nine_index(kLevel1, kLevel1)};

enum class PulseKind { raman_l1, raman_l2, ramsey, cavity_pass };

struct AtomSet {
  bool atom1 = true;
  bool atom2 = true;
};

inline constexpr AtomSet kBothAtoms{true, true};
inline constexpr AtomSet kAtom1Only{true, false};
inline constexpr AtomSet kAtom2Only{false, true};

// Raman pulses swap |0> and |a> on each target atom and leave |1> alone.
// A Ramsey pulse rotates the hyperfine pair of each target atom:
//   |0> -> cos(eta/2)|0> - sin(eta/2)|1>,  |1> -> sin(eta/2)|0> + cos(eta/2)|1>.
// The cavity pass exchanges |a,1b> and |1,ab> by theta with the -i phase and
// is the identity on every other state (targets are ignored).
struct PulseSpec {
  PulseKind kind = PulseKind::cavity_pass;
  AtomSet targets = kBothAtoms;
  double eta = 0.0;
  double theta = 0.0;
};

NineOperator pulse_unitary(const PulseSpec& pulse);
NineState apply_pulse(const NineState& state, const PulseSpec& pulse);

enum class Diagram { entangler, i_swap, controlled_z, controlled_not_bar };
enum class Gate { i_swap, controlled_z, controlled_not_bar };

// Accepts "entangler", "i-swap", "controlled-Z", "controlled-NOT-bar" and the
// short forms "iswap", "cz", "cnotbar". Throws DomainError otherwise.
Diagram parse_diagram(const std::string& name);
Gate parse_gate(const std::string& name);
std::string to_string(Diagram d);
std::string to_string(Gate g);

std::vector<PulseSpec> diagram_pulses(Diagram diagram, double theta);

struct GateResult {
  TwoQubitOperator op;                 // hyperfine projection
  Eigen::Matrix<std::complex<double>, 9, 4> outputs;  // full images of v1..v4
  std::complex<double> global_phase{1.0, 0.0};  // removed before comparison
  double distance = 0.0;  // Frobenius distance to the ideal gate, leakage included
  double fidelity = 0.0;  // 1 - distance / max distance; 0 for the entangler
};

GateResult run_sequence(Diagram diagram, double theta);

TwoQubitOperator ideal_gate(Gate gate);

// Largest distance between the sequence output and the ideal gate over all
// coupling angles: 2 sqrt(2) for i-swap, 2 for the other two.
double distance_normalization(Gate gate);

// 1 - ||U(theta) - U_ideal|| / max_theta ||U(theta) - U_ideal||, with the
// leaked amplitude counted in the norm. controlled-NOT-bar is compared after
// removing the best global phase.
double gate_fidelity(Gate gate, double theta);

Grid fidelity_map(Gate gate, const GridSpec& spec, unsigned threads = 1);

}  // namespace cavitylab
