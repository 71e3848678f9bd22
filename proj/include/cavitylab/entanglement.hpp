#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "cavitylab/grid.hpp"

namespace cavitylab {

// Reduced density matrix of the first hyperfine qubit.
struct QubitDensity {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  std::array<double, 2> eigenvalues{};  // ascending
};

// Partial trace over the second qubit of a pure state given in the basis
// |0,0b>, |0,1b>, |1,0b>, |1,1b>. Throws DomainError when the state norm is
// off by more than 1e-9.
QubitDensity reduce_first_qubit(const std::array<std::complex<double>, 4>& psi);

// -sum lambda log2 lambda, in bits. Eigenvalues within 1e-12 below zero are
// clamped to zero first.
double von_neumann_entropy(const QubitDensity& rho);

// Entropy of the first qubit after the exchange maps |0,1b> with coupling
// angle theta.
double entropy_of_theta(double theta);

// E(v, ell) from the closed-form coupling angle.
Grid entropy_map(const GridSpec& spec, unsigned threads = 1);

}  // namespace cavitylab
