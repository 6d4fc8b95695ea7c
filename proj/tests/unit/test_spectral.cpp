#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "generators.hpp"
#include "hpst/errors.hpp"
#include "hpst/pipeline.hpp"
#include "hpst/presets.hpp"
#include "hpst/spectral.hpp"

using namespace hpst;

namespace {

void check_invariants(const Matrix& d, const SpectralData& s, double tol = 1e-10) {
  const std::size_t n = d.rows();
  REQUIRE(s.size() == n);
  for (std::size_t j = 1; j < n; ++j) CHECK(s.eigenvalues[j - 1] <= s.eigenvalues[j]);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double du = 0.0;
      for (std::size_t k = 0; k < n; ++k) du += d(i, k) * s.eigenvectors(k, j);
      CHECK(std::abs(du - s.eigenvalues[j] * s.eigenvectors(i, j)) <= tol);
    }
    for (std::size_t k = 0; k < n; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += s.eigenvectors(i, j) * s.eigenvectors(i, k);
      CHECK(std::abs(dot - (j == k ? 1.0 : 0.0)) <= tol);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += s.eigenvalues[j] * s.eigenvectors(a, j) * s.eigenvectors(b, j);
      CHECK(std::abs(sum - d(a, b)) <= 1e-9);
    }
}

}  // namespace

TEST_CASE("2x2 closed form") {
  Matrix d(2, 2);
  d(0, 0) = d(1, 1) = 2.0;
  d(0, 1) = d(1, 0) = 1.0;
  const SpectralData s = eigendecompose(d);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(3.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(s.eigenvectors(0, 0) == doctest::Approx(r));
  CHECK(s.eigenvectors(1, 0) == doctest::Approx(-r));
  CHECK(s.eigenvectors(0, 1) == doctest::Approx(r));
  CHECK(s.eigenvectors(1, 1) == doctest::Approx(r));
}

TEST_CASE("degenerate spectrum") {
  Matrix d(2, 2);
  d(0, 0) = d(1, 1) = 0.7;
  const SpectralData s = eigendecompose(d);
  CHECK(s.eigenvalues[0] == 0.7);
  CHECK(s.eigenvalues[1] == 0.7);
  check_invariants(d, s);
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS((void)eigendecompose(Matrix(2, 3)), DomainError);
  Matrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS((void)eigendecompose(a), DomainError);
  Matrix hard = Matrix::identity(3);
  hard(0, 1) = hard(1, 0) = 0.5;
  CHECK_THROWS_AS((void)eigendecompose(hard, JacobiOptions{0}), ConvergenceError);
}

TEST_CASE("presets: invariants and trace") {
  for (const Preset& p : presets()) {
    CAPTURE(p.name);
    const ChainAnalysis a = analyze_chain(p.spec);
    check_invariants(a.block.d_matrix, a.spectrum);
    double sum = 0.0;
    for (double l : a.spectrum.eigenvalues) sum += l;
    CHECK(std::abs(sum - 4.0 * a.block.gamma_tilde) <= 1e-10);
  }
}

TEST_CASE("property: agrees with an independent solver") {
  std::mt19937_64 rng(3);
  for (int draw = 0; draw < 60; ++draw) {
    const bool chain = draw % 2 == 0;
    Matrix d = chain ? analyze_chain(testing::random_chain(rng, 2, 16, draw % 4 == 0)).block.d_matrix
                     : testing::random_symmetric(rng, 2 + static_cast<std::size_t>(draw % 15));
    const std::size_t n = d.rows();
    const SpectralData s = eigendecompose(d);
    check_invariants(d, s);

    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = d(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m);
    REQUIRE(ref.info() == Eigen::Success);
    double scale = 1.0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(ref.eigenvalues()(j)));
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(s.eigenvalues[j] - ref.eigenvalues()(j)) <= 1e-12 * scale * n);
  }
}

TEST_CASE("property: sign convention") {
  std::mt19937_64 rng(5);
  for (int draw = 0; draw < 50; ++draw) {
    const Matrix d = testing::random_symmetric(rng, 2 + static_cast<std::size_t>(draw % 9));
    const SpectralData s = eigendecompose(d);
    for (std::size_t j = 0; j < s.size(); ++j) {
      std::size_t arg = 0;
      for (std::size_t i = 1; i < s.size(); ++i)
        if (std::abs(s.eigenvectors(i, j)) > std::abs(s.eigenvectors(arg, j)) * (1.0 + 1e-9)) arg = i;
      CHECK(s.eigenvectors(arg, j) > 0.0);
    }
    CHECK(eigendecompose(d).eigenvectors == s.eigenvectors);
  }
}

TEST_CASE("property: mirror parity of eigenvectors") {
  std::mt19937_64 rng(17);
  for (int draw = 0; draw < 100; ++draw) {
    const ChainAnalysis a = analyze_chain(testing::random_chain(rng, 2, 12, true));
    const std::size_t n = a.spectrum.size();
    bool degenerate = false;
    for (std::size_t j = 1; j < n; ++j)
      degenerate |= std::abs(a.spectrum.eigenvalues[j] - a.spectrum.eigenvalues[j - 1]) < 1e-6;
    if (degenerate) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double even = 0.0;
      double odd = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        even = std::max(even, std::abs(a.spectrum.eigenvectors(i, j) - a.spectrum.eigenvectors(n - 1 - i, j)));
        odd = std::max(odd, std::abs(a.spectrum.eigenvectors(i, j) + a.spectrum.eigenvectors(n - 1 - i, j)));
      }
      CHECK(std::min(even, odd) <= 1e-8);
    }
  }
}
