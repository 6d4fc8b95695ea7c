#pragma once

#include <cstddef>

#include "hpst/chain_model.hpp"
#include "hpst/linalg.hpp"

namespace hpst {

/// N x N matrix D of the one-excitation sector. The physical block is
/// H_1 = (D - (gamma_tilde - (N-2) omega(t)) I) / 2; the identity shift only
/// contributes a global phase and is kept out of the matrix.
struct SingleExcitationBlock {
  Matrix d_matrix;           // off-diagonal D_ij, diagonal A_nn = 2 sum_{i != n} D_in
  double gamma_tilde = 0.0;  // sum_{i<j} D_ij
  std::size_t n_nodes = 0;
};

[[nodiscard]] SingleExcitationBlock build_single_excitation_block(const CouplingMatrix& c);

/// Exponent of the unimodular prefactor of the transition amplitude,
/// (gamma_tilde t - (N - 2) Omega(t)) / 2, where Omega is the field integral.
[[nodiscard]] double ground_state_phase(double gamma_tilde, std::size_t n_nodes,
                                        double omega_integral, double t);

/// Scalar zero-excitation block H_0 = -(gamma_tilde - N omega) / 2.
[[nodiscard]] double ground_state_energy(double gamma_tilde, std::size_t n_nodes, double omega);

}  // namespace hpst
