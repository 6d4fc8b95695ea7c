#include "hpst/phase_compensation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "hpst/dynamics.hpp"
#include "hpst/errors.hpp"
#include "hpst/linalg.hpp"

namespace hpst {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxPositivityGrid = 10'000'000;

// Bound on |omega''| over [0, t_end]: sum_k k(k-1)(k-2) |a_k| t_end^(k-3).
double curvature_bound(const PhasePolynomial& poly) {
  double bound = 0.0;
  for (std::size_t i = 0; i < poly.coefficients.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    if (k < 3.0) continue;
    bound += k * (k - 1.0) * (k - 2.0) * std::abs(poly.coefficients[i]) * std::pow(poly.t_end, k - 3.0);
  }
  return bound;
}

void check_constraints(std::span<const PhaseConstraint> constraints) {
  if (constraints.empty()) throw PhaseFitError("no phase constraints");
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    if (!(constraints[k].t_bar > 0.0)) throw PhaseFitError("constraint times must be positive");
    if (k > 0 && !(constraints[k].t_bar > constraints[k - 1].t_bar))
      throw PhaseFitError("constraint times must be distinct and sorted");
  }
}

}  // namespace

double PhaseConstraint::target() const noexcept { return phi_bar + kTwoPi * branch; }

double PhasePolynomial::integral_at(double t) const noexcept {
  double acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = (acc + coefficients[i]) * t;
  return acc;
}

double PhasePolynomial::derivative_at(double t) const noexcept {
  double acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * t + static_cast<double>(i + 1) * coefficients[i];
  return acc;
}

std::vector<PhaseConstraint> collect_constraints(const HpstTable& table, double time_tolerance,
                                                 double phase_tolerance) {
  if (table.records.empty()) throw PhaseFitError("table has no records");
  std::vector<TransferRecord> sorted = table.records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TransferRecord& a, const TransferRecord& b) { return a.t_bar < b.t_bar; });

  std::vector<PhaseConstraint> out;
  const TransferRecord* group_head = nullptr;
  for (const auto& r : sorted) {
    if (group_head != nullptr && r.t_bar - group_head->t_bar <= time_tolerance) {
      if (std::abs(wrap_phase(r.phi_bar - group_head->phi_bar)) > phase_tolerance)
        throw PhaseFitError("pairs (" + std::to_string(group_head->source) + "," +
                            std::to_string(group_head->target) + ") and (" + std::to_string(r.source) + "," +
                            std::to_string(r.target) +
                            ") share an arrival time but not a phase; no single field compensates both");
      continue;
    }
    group_head = &r;
    out.push_back({r.t_bar, r.phi_bar, 0});
  }
  return out;
}

PositivityCheck check_positivity(const PhasePolynomial& poly, std::size_t grid_points) {
  if (!(poly.t_end > 0.0)) throw DomainError("phase polynomial needs t_end > 0");
  grid_points = std::max<std::size_t>(grid_points, 2);
  const double m2 = curvature_bound(poly);

  PositivityCheck check;
  for (std::size_t n = grid_points;; n *= 10) {
    const double h = poly.t_end / static_cast<double>(n - 1);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = poly.derivative_at(std::min(poly.t_end, static_cast<double>(i) * h));
      lo = std::min(lo, w);
      hi = std::max(hi, std::abs(w));
    }
    check = {false, lo, lo - h * h * m2 / 8.0, hi};
    check.positive = check.guaranteed_min > 0.0;
    // A finer grid only helps while the samples are positive but the bound is not.
    if (check.positive || lo <= 0.0 || n * 10 > kMaxPositivityGrid) break;
  }
  return check;
}

PhasePolynomial fit_with_branches(std::span<const PhaseConstraint> constraints, std::span<const int> branches,
                                  double t_end) {
  check_constraints(constraints);
  if (branches.size() != constraints.size()) throw PhaseFitError("branch vector length differs from constraints");
  const std::size_t k = constraints.size();
  const double scale = constraints.back().t_bar;
  if (!(t_end > 0.0)) throw PhaseFitError("t_end must be positive");

  // Rows: sum_i b_i s^i = target with s = t / t_max in (0, 1]; then a_i = b_i / t_max^i.
  Matrix v(k, k);
  std::vector<double> rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    const double s = constraints[r].t_bar / scale;
    double pw = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      pw *= s;
      v(r, c) = pw;
    }
    rhs[r] = constraints[r].phi_bar + kTwoPi * branches[r];
  }
  std::vector<double> b;
  try {
    b = solve_linear(std::move(v), std::move(rhs));
  } catch (const DomainError&) {
    throw PhaseFitError("interpolation system is singular (duplicate constraint times?)");
  }

  PhasePolynomial poly;
  poly.t_end = t_end;
  poly.branches.assign(branches.begin(), branches.end());
  poly.coefficients.resize(k);
  double pw = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    pw *= scale;
    poly.coefficients[i] = b[i] / pw;
  }
  return poly;
}

PhasePolynomial fit_phase_polynomial(std::span<const PhaseConstraint> constraints, double t_end,
                                     const PhaseFitOptions& options) {
  check_constraints(constraints);
  if (options.branch_search_limit < 0) throw PhaseFitError("branch search limit must be nonnegative");
  const std::size_t k = constraints.size();
  const int limit = options.branch_search_limit;

  std::size_t solved = 0;
  std::vector<int> branches(k, 0);
  std::optional<PhasePolynomial> chosen;
  double chosen_peak = std::numeric_limits<double>::infinity();

  // Fills branches[pos..] with values summing to `remaining`, lexicographically,
  // keeping the targets strictly increasing (Omega is increasing from 0).
  auto enumerate = [&](auto&& self, std::size_t pos, int remaining, double prev_target) -> void {
    if (pos == k) {
      if (remaining != 0) return;
      if (++solved > options.max_candidates)
        throw PhaseFitError("branch enumeration exceeded the candidate budget");
      PhasePolynomial poly = fit_with_branches(constraints, branches, t_end);
      const PositivityCheck check = check_positivity(poly, options.positivity_grid);
      if (check.positive && check.max_abs < chosen_peak) {
        chosen_peak = check.max_abs;
        chosen = std::move(poly);
      }
      return;
    }
    const int slots_after = static_cast<int>(k - pos - 1);
    for (int m = 0; m <= std::min(limit, remaining); ++m) {
      if (remaining - m > slots_after * limit) continue;
      const double target = constraints[pos].phi_bar + kTwoPi * m;
      if (!(target > prev_target)) continue;
      branches[pos] = m;
      self(self, pos + 1, remaining - m, target);
    }
  };

  const int max_sum = static_cast<int>(k) * limit;
  for (int sum = 0; sum <= max_sum; ++sum) {
    enumerate(enumerate, 0, sum, 0.0);
    if (chosen) return *chosen;
  }
  throw PhaseFitError("no branch vector within the search limit yields a positive field");
}

double omega_at(const PhasePolynomial& poly, double t) {
  if (!(t >= 0.0 && t <= poly.t_end * (1.0 + 1e-12)))
    throw DomainError("omega_at: t outside [0, " + std::to_string(poly.t_end) + "]");
  return poly.derivative_at(t);
}

CompensationReport verify_compensation(const PhasePolynomial& poly, const HpstTable& table,
                                       double fidelity_tolerance) {
  CompensationReport report;
  report.fidelity_maximal = true;
  for (const auto& r : table.records) {
    PairCompensation pc;
    pc.source = r.source;
    pc.target = r.target;
    pc.t_bar = r.t_bar;
    pc.big_gamma = big_gamma(r.phi_bar, poly.integral_at(r.t_bar));
    const double f_abs = std::sqrt(std::max(0.0, r.p_bar));
    pc.fidelity = fidelity(f_abs, pc.big_gamma);
    pc.ideal_fidelity = f_abs / 3.0 + f_abs * f_abs / 6.0 + 0.5;
    report.max_abs_gamma = std::max(report.max_abs_gamma, std::abs(pc.big_gamma));
    if (std::abs(pc.fidelity - pc.ideal_fidelity) > fidelity_tolerance) report.fidelity_maximal = false;
    report.pairs.push_back(pc);
  }
  return report;
}

}  // namespace hpst
