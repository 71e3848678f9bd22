#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace cavitylab {

// Operator on the hyperfine basis v1..v4 = |0,0b>, |0,1b>, |1,0b>, |1,1b>.
// column_leakage[j] is the squared amplitude that input v_j sends outside
// the hyperfine basis.
struct TwoQubitOperator {
  Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Identity();
  std::array<double, 4> column_leakage{};

  double leakage_norm() const {
    return column_leakage[0] + column_leakage[1] + column_leakage[2] +
           column_leakage[3];
  }

  // ||U^dagger U - I||_F
  double unitarity_defect() const {
    return (matrix.adjoint() * matrix - Eigen::Matrix4cd::Identity()).norm();
  }
};

}  // namespace cavitylab
