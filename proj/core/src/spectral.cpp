#include "hpst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

double off_diagonal_norm2(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return 2.0 * s;
}

// Rotation in the (p, q) plane zeroing a(p, q); updates a and accumulates v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

SpectralData eigendecompose(const Matrix& symmetric, const JacobiOptions& options) {
  if (!symmetric.is_square() || symmetric.rows() == 0) throw DomainError("eigendecompose: matrix must be square");
  if (!symmetric.is_symmetric()) throw DomainError("eigendecompose: matrix must be symmetric");

  const std::size_t n = symmetric.rows();
  Matrix a = symmetric;
  Matrix v = Matrix::identity(n);

  double total = 0.0;
  for (double x : a.data()) total += x * x;
  const double eps = std::numeric_limits<double>::epsilon();
  const double target = total * eps * eps;

  bool converged = off_diagonal_norm2(a) <= target;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Skip entries already negligible against both diagonal entries.
        if (sweep > 3 && std::abs(apq) <= eps * 1e-2 * std::min(std::abs(a(p, p)), std::abs(a(q, q)))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    converged = off_diagonal_norm2(a) <= target;
  }
  if (!converged) throw ConvergenceError("Jacobi eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SpectralData out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.eigenvalues[col] = a(src, src);

    // Sign convention: the largest-magnitude component is positive; near-ties
    // (mirror-symmetric modes) resolve to the lowest index.
    double largest = 0.0;
    for (std::size_t k = 0; k < n; ++k) largest = std::max(largest, std::abs(v(k, src)));
    std::size_t pick = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(v(k, src)) >= largest * (1.0 - 1e-9)) {
        pick = k;
        break;
      }
    const double sign = v(pick, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, col) = sign * v(k, src);
  }
  return out;
}

SpectralData eigendecompose(const SingleExcitationBlock& block, const JacobiOptions& options) {
  return eigendecompose(block.d_matrix, options);
}

}  // namespace hpst
