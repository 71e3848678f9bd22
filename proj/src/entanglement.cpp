#include "cavitylab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cavitylab/effective.hpp"
#include "cavitylab/errors.hpp"

namespace cavitylab {

QubitDensity reduce_first_qubit(const std::array<std::complex<double>, 4>& psi) {
  double norm = 0.0;
  for (const auto& a : psi) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-9)
    throw DomainError("two-qubit state is not normalized");

  QubitDensity out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      out.rho(a, b) = psi[2 * a] * std::conj(psi[2 * b]) +
                      psi[2 * a + 1] * std::conj(psi[2 * b + 1]);

  const double p00 = out.rho(0, 0).real();
  const double p11 = out.rho(1, 1).real();
  const double half_gap =
      std::sqrt(0.25 * (p00 - p11) * (p00 - p11) + std::norm(out.rho(0, 1)));
  const double mean = 0.5 * (p00 + p11);
  out.eigenvalues = {mean - half_gap, mean + half_gap};
  return out;
}

double von_neumann_entropy(const QubitDensity& rho) {
  for (double lam : rho.eigenvalues)
    if (lam < -1e-12) throw DomainError("density matrix is not positive");
  // With unit trace the spectrum is (1 -+ x) / 2; this form keeps full
  // precision near the maximum, where x -> 0.
  const double lo = std::clamp(rho.eigenvalues[0], 0.0, 1.0);
  const double hi = std::clamp(rho.eigenvalues[1], 0.0, 1.0);
  const double x = std::min(hi - lo, 1.0);
  if (x >= 1.0) return 0.0;
  const double f = (1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x);
  return std::max(0.0, 1.0 - f / (2.0 * std::numbers::ln2));
}

double entropy_of_theta(double theta) {
  const auto op = evolution_matrix(theta);
  const Eigen::Vector4cd out = op.matrix.col(1);
  return von_neumann_entropy(reduce_first_qubit({out(0), out(1), out(2), out(3)}));
}

Grid entropy_map(const GridSpec& spec, unsigned threads) {
  return evaluate_grid(
      spec,
      [](double v, double ell) { return entropy_of_theta(theta_reduced(v, ell)); },
      threads);
}

}  // namespace cavitylab
