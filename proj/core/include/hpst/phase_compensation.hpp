#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpst/hpst_search.hpp"

namespace hpst {

/// Omega(t_bar) must equal phi_bar + 2 pi * branch.
struct PhaseConstraint {
  double t_bar = 0.0;
  double phi_bar = 0.0;
  int branch = 0;

  [[nodiscard]] double target() const noexcept;
};

/// Field integral Omega(t) = sum_k a_k t^k, k = 1..K (no constant term), with
/// field omega(t) = Omega'(t) required positive on [0, t_end].
struct PhasePolynomial {
  std::vector<double> coefficients;  // a_1 .. a_K
  double t_end = 0.0;
  std::vector<int> branches;

  [[nodiscard]] double integral_at(double t) const noexcept;
  [[nodiscard]] double derivative_at(double t) const noexcept;
};

struct PositivityCheck {
  bool positive = false;
  double min_on_grid = 0.0;     // min of omega over the sample grid
  double guaranteed_min = 0.0;  // lower bound between samples via a curvature bound
  double max_abs = 0.0;         // max |omega| over the sample grid
};

struct PhaseFitOptions {
  int branch_search_limit = 10;
  std::size_t max_candidates = 2'000'000;  // branch vectors solved before giving up
  std::size_t positivity_grid = 10'000;
};

/// One constraint per distinct arrival time, sorted by time. Pairs sharing an
/// arrival time (within `time_tolerance`) must share the phase (within
/// `phase_tolerance`, modulo 2 pi), otherwise PhaseFitError.
[[nodiscard]] std::vector<PhaseConstraint> collect_constraints(const HpstTable& table,
                                                               double time_tolerance = 1e-6,
                                                               double phase_tolerance = 1e-6);

/// Checks omega > 0 on [0, t_end] with `grid_points` samples plus a bound on
/// the dip between samples from max |omega''|.
[[nodiscard]] PositivityCheck check_positivity(const PhasePolynomial& poly, std::size_t grid_points = 10'000);

/// Interpolates the constraints with fixed branches. Times are rescaled to
/// [0, 1] before the Vandermonde-type solve.
[[nodiscard]] PhasePolynomial fit_with_branches(std::span<const PhaseConstraint> constraints,
                                                std::span<const int> branches, double t_end);

/// Enumerates branch vectors in order of increasing sum (then lexicographic),
/// skipping vectors whose targets do not increase with time. Returns, among
/// the positive fits of the smallest admissible sum, the one with the
/// smallest max |omega|. Throws PhaseFitError if nothing qualifies.
[[nodiscard]] PhasePolynomial fit_phase_polynomial(std::span<const PhaseConstraint> constraints, double t_end,
                                                   const PhaseFitOptions& options = {});

/// omega(t); throws DomainError outside [0, t_end].
[[nodiscard]] double omega_at(const PhasePolynomial& poly, double t);

struct PairCompensation {
  int source = 0;
  int target = 0;
  double t_bar = 0.0;
  double big_gamma = 0.0;
  double fidelity = 0.0;
  double ideal_fidelity = 0.0;  // |f|/3 + |f|^2/6 + 1/2
};

struct CompensationReport {
  std::vector<PairCompensation> pairs;
  double max_abs_gamma = 0.0;
  bool fidelity_maximal = false;  // every pair within tolerance of its ideal fidelity
};

[[nodiscard]] CompensationReport verify_compensation(const PhasePolynomial& poly, const HpstTable& table,
                                                     double fidelity_tolerance = 1e-9);

}  // namespace hpst
