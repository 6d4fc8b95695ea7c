#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hpst {

/// Dense row-major real matrix. Sized for the small systems used here
/// (N <= a few dozen), so no expression templates or blocking.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  /// Bit-exact symmetry test.
  [[nodiscard]] bool is_symmetric() const noexcept;
  [[nodiscard]] double trace() const noexcept;
  [[nodiscard]] Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

[[nodiscard]] Matrix operator*(const Matrix& a, const Matrix& b);

/// Solves the square system A x = b by Gaussian elimination with partial
/// pivoting. Throws DomainError on a singular (to working precision) matrix.
[[nodiscard]] std::vector<double> solve_linear(Matrix a, std::vector<double> b);

}  // namespace hpst
