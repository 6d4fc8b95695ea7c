#pragma once

#include <span>
#include <vector>

#include "hpst/spectral.hpp"

namespace hpst {

/// Uniform scan window (0, t_max] sampled every dt.
struct ScanGrid {
  double t_max = 100.0;
  double dt = 0.01;
};

/// Peak of P(t) chosen for one node pair. `source < target` in tables.
struct TransferRecord {
  int source = 0;
  int target = 0;
  double p_bar = 0.0;
  double t_bar = 0.0;
  double phi_bar = 0.0;

  friend bool operator==(const TransferRecord&, const TransferRecord&) = default;
};

/// One record per unordered register pair, plus the register time (largest
/// arrival time) and whether every pair reaches the threshold.
struct HpstTable {
  std::vector<TransferRecord> records;
  double register_time = 0.0;
  double p0 = 0.0;
  bool all_pass = false;

  /// Record for the unordered pair {a, b}, or nullptr.
  [[nodiscard]] const TransferRecord* find(int a, int b) const noexcept;
  [[nodiscard]] double worst_p() const noexcept;

  friend bool operator==(const HpstTable&, const HpstTable&) = default;
};

/// Time tolerance of the golden-section peak refinement.
inline constexpr double kPeakTimeTolerance = 1e-6;

/// Scans P(t) on the grid, takes the earliest local maximum with P >= p0 and
/// refines it by golden-section search inside its bracketing samples. Without
/// a qualifying maximum the (refined) global maximum is returned instead.
///
/// Throws DomainError for an invalid grid, a threshold outside (0, 1), or
/// source == target.
[[nodiscard]] TransferRecord find_peak(const SpectralData& spectrum, int source, int target, double p0,
                                       const ScanGrid& grid);

/// Pair searches run concurrently; the record order is the row-major order of
/// the upper triangle of the register.
[[nodiscard]] HpstTable build_hpst_table(const SpectralData& spectrum, std::span<const int> register_nodes,
                                         double p0, const ScanGrid& grid);

/// Fills register_time and all_pass from the records.
[[nodiscard]] HpstTable assemble_table(std::vector<TransferRecord> records, double p0);

/// Ratio of arrival times a.t_bar / b.t_bar.
[[nodiscard]] double speedup_ratio(const TransferRecord& a, const TransferRecord& b);

void validate(const ScanGrid& grid);

}  // namespace hpst
