#include "hpst/hpst_search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "hpst/dynamics.hpp"
#include "hpst/errors.hpp"
#include "parallel.hpp"

namespace hpst {

namespace {

// Sampled maxima this close below p0 are refined before being rejected, since
// the true peak sits between samples.
constexpr double kThresholdSlack = 1e-3;
constexpr double kPeakTieTolerance = 1e-9;

// Golden-section maximization of P on [lo, hi].
double refine_peak(const TransferAmplitude& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f.probability(c);
  double fd = f.probability(d);
  while (b - a > kPeakTimeTolerance * 1e-2) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f.probability(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f.probability(d);
    }
  }
  return 0.5 * (a + b);
}

TransferRecord make_record(const TransferAmplitude& f, double t) {
  const auto z = f(t);
  return {f.source(), f.target(), std::norm(z), t, wrap_phase(std::arg(z))};
}

}  // namespace

void validate(const ScanGrid& grid) {
  if (!(grid.t_max > 0.0) || !(grid.dt > 0.0) || !std::isfinite(grid.t_max) || !std::isfinite(grid.dt))
    throw DomainError("scan grid needs t_max > 0 and dt > 0");
  if (grid.dt >= grid.t_max) throw DomainError("scan window is empty: dt >= t_max");
}

const TransferRecord* HpstTable::find(int a, int b) const noexcept {
  if (a > b) std::swap(a, b);
  for (const auto& r : records)
    if (r.source == a && r.target == b) return &r;
  return nullptr;
}

double HpstTable::worst_p() const noexcept {
  double w = records.empty() ? 0.0 : 1.0;
  for (const auto& r : records) w = std::min(w, r.p_bar);
  return w;
}

TransferRecord find_peak(const SpectralData& spectrum, int source, int target, double p0, const ScanGrid& grid) {
  validate(grid);
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("threshold p0 must lie in (0, 1)");
  if (source == target) throw DomainError("find_peak targets distinct nodes");

  const TransferAmplitude f(spectrum, source, target);
  const std::size_t count = series_length(grid.t_max, grid.dt);
  if (count < 3) throw DomainError("scan window is empty");
  const std::vector<double> p = f.sample_probability(grid.dt, count);
  const auto time_at = [&](std::size_t k) { return static_cast<double>(k) * grid.dt; };

  std::optional<std::size_t> best;
  for (std::size_t k = 1; k + 1 < count; ++k) {
    if (!(p[k] > p[k - 1] && p[k] >= p[k + 1])) continue;
    if (p[k] >= p0 - kThresholdSlack) {
      const double t = refine_peak(f, time_at(k - 1), time_at(k + 1));
      TransferRecord rec = make_record(f, t);
      if (rec.p_bar >= p0) return rec;
    }
    if (!best || p[k] > p[*best] + kPeakTieTolerance) best = k;
  }

  if (!best) {
    // No interior maximum: P is monotone over the window. Report its largest sample.
    std::size_t k = 1;
    for (std::size_t i = 2; i < count; ++i)
      if (p[i] > p[k] + kPeakTieTolerance) k = i;
    return make_record(f, time_at(k));
  }
  return make_record(f, refine_peak(f, time_at(*best - 1), time_at(*best + 1)));
}

HpstTable assemble_table(std::vector<TransferRecord> records, double p0) {
  HpstTable table;
  table.p0 = p0;
  table.all_pass = !records.empty();
  for (const auto& r : records) {
    table.register_time = std::max(table.register_time, r.t_bar);
    if (!(r.p_bar >= p0)) table.all_pass = false;
  }
  table.records = std::move(records);
  return table;
}

HpstTable build_hpst_table(const SpectralData& spectrum, std::span<const int> register_nodes, double p0,
                           const ScanGrid& grid) {
  if (register_nodes.size() < 2) throw DomainError("register needs at least two nodes");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < register_nodes.size(); ++i)
    for (std::size_t j = i + 1; j < register_nodes.size(); ++j) {
      int a = register_nodes[i];
      int b = register_nodes[j];
      if (a == b) throw DomainError("register nodes must be distinct");
      if (a > b) std::swap(a, b);
      pairs.emplace_back(a, b);
    }

  std::vector<TransferRecord> records(pairs.size());
  detail::parallel_for(pairs.size(), [&](std::size_t i) {
    records[i] = find_peak(spectrum, pairs[i].first, pairs[i].second, p0, grid);
  });
  return assemble_table(std::move(records), p0);
}

double speedup_ratio(const TransferRecord& a, const TransferRecord& b) {
  if (!(b.t_bar > 0.0)) throw DomainError("speedup_ratio: denominator arrival time must be positive");
  return a.t_bar / b.t_bar;
}

}  // namespace hpst
