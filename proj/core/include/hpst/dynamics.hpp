#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hpst/spectral.hpp"

namespace hpst {

/// |f| and arg f of the field-free transition sum at time t.
struct AmplitudeSample {
  double t = 0.0;
  double f_abs = 0.0;
  double phi = 0.0;  // (-pi, pi]
};

struct ProbabilitySample {
  double t = 0.0;
  double p = 0.0;
};

/// Reduces an angle to (-pi, pi].
[[nodiscard]] double wrap_phase(double angle) noexcept;

/// Transition sum sum_j u_{s j} u_{t j} exp(-i lambda_j t / 2) for one fixed
/// node pair. Precomputes the mode weights so repeated evaluation and grid
/// sampling are cheap.
class TransferAmplitude {
 public:
  /// Nodes are 1-based; throws DomainError when out of range.
  TransferAmplitude(const SpectralData& spectrum, int source, int target);

  [[nodiscard]] std::complex<double> operator()(double t) const noexcept;
  [[nodiscard]] double probability(double t) const noexcept { return std::norm((*this)(t)); }

  /// P at t = k * dt for k = 0 .. count-1. Uses phasor recurrences,
  /// resynchronized with exact exponentials every few hundred steps.
  [[nodiscard]] std::vector<double> sample_probability(double dt, std::size_t count) const;

  [[nodiscard]] int source() const noexcept { return source_; }
  [[nodiscard]] int target() const noexcept { return target_; }

 private:
  int source_;
  int target_;
  std::vector<double> weights_;        // u_{s j} u_{t j}
  std::vector<double> half_lambdas_;  // lambda_j / 2
};

[[nodiscard]] AmplitudeSample amplitude(const SpectralData& spectrum, int source, int target, double t);
[[nodiscard]] double probability(const SpectralData& spectrum, int source, int target, double t);

/// Number of samples on the grid 0, dt, ..., i.e. floor(t_max / dt) + 1.
[[nodiscard]] std::size_t series_length(double t_max, double dt);

[[nodiscard]] std::vector<ProbabilitySample> probability_series(const SpectralData& spectrum, int source,
                                                                 int target, double t_max, double dt);

/// Bloch-averaged transfer fidelity |f| cos(Gamma)/3 + |f|^2/6 + 1/2.
[[nodiscard]] double fidelity(double f_abs, double big_gamma) noexcept;

/// Residual phase phi - Omega(t), reduced to (-pi, pi].
[[nodiscard]] double big_gamma(double phi, double omega_integral) noexcept;

}  // namespace hpst
