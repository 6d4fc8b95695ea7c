#pragma once

#include <vector>

#include "hpst/hamiltonian.hpp"
#include "hpst/linalg.hpp"

namespace hpst {

/// Eigenpairs of the single-excitation matrix. Eigenvalues ascending; column
/// j of `eigenvectors` is u_j. Each column has its largest-magnitude component
/// positive (ties go to the lowest index), so the output is reproducible.
struct SpectralData {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  [[nodiscard]] std::size_t size() const noexcept { return eigenvalues.size(); }
  /// u_{node, j} with 1-based node and 0-based mode, matching how the
  /// amplitude sum is usually written.
  [[nodiscard]] double component(int node, std::size_t mode) const {
    return eigenvectors(static_cast<std::size_t>(node - 1), mode);
  }
};

struct JacobiOptions {
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
/// Throws ConvergenceError if the off-diagonal mass does not vanish within
/// `max_sweeps`, DomainError for a non-square or non-symmetric input.
[[nodiscard]] SpectralData eigendecompose(const Matrix& symmetric, const JacobiOptions& options = {});
[[nodiscard]] SpectralData eigendecompose(const SingleExcitationBlock& block,
                                          const JacobiOptions& options = {});

}  // namespace hpst
