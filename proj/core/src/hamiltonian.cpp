#include "hpst/hamiltonian.hpp"

#include "hpst/errors.hpp"

namespace hpst {

SingleExcitationBlock build_single_excitation_block(const CouplingMatrix& c) {
  const std::size_t n = c.n_nodes();
  if (n < 2 || !c.d.is_symmetric()) throw ChainError("coupling matrix must be square, symmetric, N >= 2");

  SingleExcitationBlock block{Matrix(n, n), 0.0, n};
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      block.d_matrix(i, j) = c.d(i, j);
      row_sum += c.d(i, j);
      if (j > i) block.gamma_tilde += c.d(i, j);
    }
    block.d_matrix(i, i) = 2.0 * row_sum;
  }
  return block;
}

double ground_state_phase(double gamma_tilde, std::size_t n_nodes, double omega_integral, double t) {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  return 0.5 * (gamma_tilde * t - (static_cast<double>(n_nodes) - 2.0) * omega_integral);
}

double ground_state_energy(double gamma_tilde, std::size_t n_nodes, double omega) {
  return -0.5 * (gamma_tilde - static_cast<double>(n_nodes) * omega);
}

}  // namespace hpst
