#include "hpst/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

constexpr std::size_t kResyncInterval = 256;

void check_node(const SpectralData& spectrum, int node) {
  if (node < 1 || static_cast<std::size_t>(node) > spectrum.size())
    throw DomainError("node index " + std::to_string(node) + " outside [1, " + std::to_string(spectrum.size()) +
                      "]");
}

}  // namespace

double wrap_phase(double angle) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

TransferAmplitude::TransferAmplitude(const SpectralData& spectrum, int source, int target)
    : source_(source), target_(target) {
  check_node(spectrum, source);
  check_node(spectrum, target);
  const std::size_t n = spectrum.size();
  weights_.resize(n);
  half_lambdas_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    weights_[j] = spectrum.component(source, j) * spectrum.component(target, j);
    half_lambdas_[j] = 0.5 * spectrum.eigenvalues[j];
  }
}

std::complex<double> TransferAmplitude::operator()(double t) const noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const double arg = half_lambdas_[j] * t;
    re += weights_[j] * std::cos(arg);
    im -= weights_[j] * std::sin(arg);
  }
  return {re, im};
}

std::vector<double> TransferAmplitude::sample_probability(double dt, std::size_t count) const {
  const std::size_t n = weights_.size();
  std::vector<double> out(count);
  std::vector<std::complex<double>> phasor(n);
  std::vector<std::complex<double>> step(n);
  for (std::size_t j = 0; j < n; ++j) step[j] = std::polar(1.0, -half_lambdas_[j] * dt);

  for (std::size_t k = 0; k < count; ++k) {
    if (k % kResyncInterval == 0) {
      const double t = static_cast<double>(k) * dt;
      for (std::size_t j = 0; j < n; ++j) phasor[j] = std::polar(weights_[j], -half_lambdas_[j] * t);
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      sum += phasor[j];
      phasor[j] *= step[j];
    }
    out[k] = std::norm(sum);
  }
  return out;
}

AmplitudeSample amplitude(const SpectralData& spectrum, int source, int target, double t) {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  const auto f = TransferAmplitude(spectrum, source, target)(t);
  return {t, std::abs(f), wrap_phase(std::arg(f))};
}

double probability(const SpectralData& spectrum, int source, int target, double t) {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  return TransferAmplitude(spectrum, source, target).probability(t);
}

std::size_t series_length(double t_max, double dt) {
  if (!(t_max > 0.0) || !(dt > 0.0) || !std::isfinite(t_max) || !std::isfinite(dt))
    throw DomainError("time grid needs t_max > 0 and dt > 0");
  // Guard against t_max / dt landing a hair below an integer.
  return static_cast<std::size_t>(std::floor(t_max / dt * (1.0 + 1e-12))) + 1;
}

std::vector<ProbabilitySample> probability_series(const SpectralData& spectrum, int source, int target,
                                                  double t_max, double dt) {
  const std::size_t count = series_length(t_max, dt);
  const TransferAmplitude f(spectrum, source, target);
  const std::vector<double> p = f.sample_probability(dt, count);
  std::vector<ProbabilitySample> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = {static_cast<double>(k) * dt, p[k]};
  return out;
}

double fidelity(double f_abs, double big_gamma) noexcept {
  // Common denominator keeps F(1, 0) = 1 and F(0, .) = 1/2 exact.
  return (2.0 * f_abs * std::cos(big_gamma) + f_abs * f_abs + 3.0) / 6.0;
}

double big_gamma(double phi, double omega_integral) noexcept { return wrap_phase(phi - omega_integral); }

}  // namespace hpst
