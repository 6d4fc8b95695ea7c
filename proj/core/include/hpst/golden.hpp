#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hpst/hpst_search.hpp"

namespace hpst {

struct GoldenTolerances {
  double p = 0.005;
  double t = 0.05;
  double phi = 0.02;
};

/// Reference (P, t, phi) for one cell; both triangles of each table are kept.
struct GoldenCell {
  int source = 0;
  int target = 0;
  double p_bar = 0.0;
  double t_bar = 0.0;
  double phi_bar = 0.0;
};

struct GoldenTable {
  int table = 0;
  std::string preset;
  double p0 = 0.0;
  double t_max = 0.0;
  double dt = 0.0;
  std::vector<int> register_nodes;
  GoldenTolerances tolerances;
  std::vector<GoldenCell> cells;
};

[[nodiscard]] GoldenTable golden_table_from_json(std::string_view text);
/// Embedded reference tables 1..6; throws DomainError otherwise.
[[nodiscard]] const GoldenTable& golden_table(int k);

struct CellDiff {
  GoldenCell expected;
  TransferRecord actual;
  double dp = 0.0;
  double dt = 0.0;
  double dphi = 0.0;  // wrapped to [0, pi]
  bool within = false;
};

struct GoldenDiff {
  int table = 0;
  std::vector<CellDiff> cells;
  double max_dp = 0.0;
  double max_dt = 0.0;
  double max_dphi = 0.0;
  bool all_within = false;

  [[nodiscard]] std::size_t failures() const noexcept;
};

[[nodiscard]] GoldenDiff diff_against_golden(const HpstTable& table, const GoldenTable& golden);

struct Reproduction {
  GoldenTable golden;
  HpstTable table;
  GoldenDiff diff;
};

/// Runs the full pipeline on the preset behind reference table k with its
/// reference parameters and threshold, then diffs every cell.
[[nodiscard]] Reproduction reproduce_table(int k);

[[nodiscard]] std::string to_json(const GoldenDiff& diff);
/// Human-readable per-cell delta listing.
[[nodiscard]] std::string format_diff(const GoldenDiff& diff);

}  // namespace hpst
